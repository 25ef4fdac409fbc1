//! Error type shared by every module.

use alloc::string::String;
use alloc::vec::Vec;

use crate::element::ElementId;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("word of length {len} cannot be evaluated: length must be 1 modulo {modulus}")]
    Length { len: usize, modulus: usize },
    #[error("sequence of length {len} is not a multiple of {modulus}")]
    NeutralLength { len: usize, modulus: usize },
    #[error("evaluation budget exceeded: {needed} evaluations needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("element index {index} is out of range for a carrier of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("arity must be at least 2, got {0}")]
    BadArity(usize),
    #[error("operation table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("operation is not associative: {0:?}")]
    NotAssociative(AssocViolation),
    #[error("not an n-ary group: {0:?}")]
    NotGroup(SolvabilityViolation),
    #[error("equation has no solution")]
    NoSolution,
    #[error("invalid binary group: {0}")]
    InvalidGroup(String),
    #[error("element {0} is not central")]
    NotCentral(ElementId),
    #[error("map is not an automorphism: image of {x} * {y} differs")]
    NotAutomorphism { x: ElementId, y: ElementId },
    #[error("d is not fixed by beta")]
    FixedPointViolation,
    #[error("twist condition d*x = beta^(n-1)(x)*d fails at x = {0}")]
    TwistViolation(ElementId),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("quotient is not cyclic with generator gH")]
    NotCyclicQuotient,
    #[error("quotient order {quotient} does not divide n-1 = {arity_minus_one}")]
    OrderMismatch { quotient: usize, arity_minus_one: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("beta is not splitting: b*b^beta*... differs from identity at b = {0}")]
    NotSplitting(ElementId),
    #[error("beta^(n-1) is not the identity")]
    BetaOrder,
    #[error("unknown example name: {0}")]
    UnknownName(String),
    #[error("subset is not an n-ary subgroup")]
    NotSubgroup,
    #[error("subgroup is not invariant")]
    NotInvariant,
    #[error("subgroup is not semi-invariant")]
    NotSemiInvariant,
    #[error("m = {m} is not admissible for arity n = {n}: m-1 must divide n-1")]
    BadM { m: usize, n: usize },
    #[error("anchor {0} is not an idempotent")]
    NotIdempotentAnchor(ElementId),
    #[error("group is not semiabelian")]
    NotSemiabelian,
    #[error("group has no idempotent")]
    NoIdempotent,
    #[error("preconditions violated: {0}")]
    Preconditions(String),
    #[error("permutation sizes do not match")]
    SizeMismatch,
    #[error("sigma^k differs from sigma")]
    SigmaNotIdempotentPower,
    #[error("arity {0} is too small for this axiom system")]
    ArityTooSmall(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("reconstruction identity fails at {tuple:?} (variant {variant})")]
    HossuViolation { tuple: Vec<ElementId>, variant: usize },
}

/// A (2n-1)-tuple on which two bracketings disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocViolation {
    pub tuple: Vec<ElementId>,
    /// Position of the inner bracket that disagrees with the leftmost one.
    pub position: usize,
    pub left: ElementId,
    pub right: ElementId,
}

/// An equation `[x a2 ... an] = b` (left) or `[a1 ... a(n-1) y] = b` (right)
/// without a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvabilityViolation {
    pub left_unknown: bool,
    pub known: Vec<ElementId>,
    pub rhs: ElementId,
}
