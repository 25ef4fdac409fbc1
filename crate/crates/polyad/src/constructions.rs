//! Ways to build n-ary groups: derived groups, the Gluskin–Hossu
//! construction, cosets of normal subgroups with cyclic quotient, direct
//! products, idempotent groups from splitting automorphisms, and a catalog
//! of named examples.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::binary::{lex_permutations, BinaryGroupTable, PermutationMap};
use crate::element::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::group::NaryGroup;
use crate::groupoid::{Backing, Limits, NaryGroupoid};

/// `[x1 ... xn] = x1 ... xn c` for a central `c`.
pub fn derived_groupoid(base: &BinaryGroupTable, c: ElementId, n: usize, limits: &Limits) -> Result<NaryGroupoid> {
    if c.index() >= base.size() {
        return Err(Error::ElementOutOfRange { index: c.index(), size: base.size() });
    }
    if !base.is_central(c) {
        return Err(Error::NotCentral(c));
    }
    NaryGroupoid::with_backing(
        base.size(),
        n,
        Backing::Derived { base: base.clone(), central: c },
        Some(base.labels().to_vec()),
        limits,
    )
}

/// The derived n-ary group over `base` with central twist `c`.
pub fn derived(base: &BinaryGroupTable, c: ElementId, n: usize) -> Result<NaryGroup> {
    let limits = Limits::default();
    NaryGroup::trusted(derived_groupoid(base, c, n, &limits)?, &limits)
}

fn check_gluskin(base: &BinaryGroupTable, beta: &PermutationMap, d: ElementId, n: usize) -> Result<()> {
    if beta.len() != base.size() {
        return Err(Error::InvalidPermutation("beta has the wrong size".into()));
    }
    if d.index() >= base.size() {
        return Err(Error::ElementOutOfRange { index: d.index(), size: base.size() });
    }
    if let Some((x, y)) = base.automorphism_violation(beta) {
        return Err(Error::NotAutomorphism { x, y });
    }
    if beta.apply(d) != d {
        return Err(Error::FixedPointViolation);
    }
    let top = beta.pow(n - 1);
    for x in base.elements() {
        if base.op(d, x) != base.op(top.apply(x), d) {
            return Err(Error::TwistViolation(x));
        }
    }
    Ok(())
}

/// `[x1 ... xn] = x1 x2^b ... xn^(b^(n-1)) d`, after checking that `b` is
/// an automorphism fixing `d` and that `d x = x^(b^(n-1)) d`.
pub fn gluskin_groupoid(
    base: &BinaryGroupTable,
    beta: &PermutationMap,
    d: ElementId,
    n: usize,
    limits: &Limits,
) -> Result<NaryGroupoid> {
    if n < 2 {
        return Err(Error::BadArity(n));
    }
    check_gluskin(base, beta, d, n)?;
    NaryGroupoid::with_backing(
        base.size(),
        n,
        Backing::Gluskin { base: base.clone(), beta: beta.clone(), d },
        Some(base.labels().to_vec()),
        limits,
    )
}

pub fn gluskin(base: &BinaryGroupTable, beta: &PermutationMap, d: ElementId, n: usize) -> Result<NaryGroup> {
    let limits = Limits::default();
    NaryGroup::trusted(gluskin_groupoid(base, beta, d, n, &limits)?, &limits)
}

/// The coset `gH` with the product inherited from `G`. Requires `H`
/// normal with `G/H` cyclic, generated by `gH`, of order dividing `n-1`.
pub fn coset_groupoid(
    base: &BinaryGroupTable,
    h: &ElemSet,
    g: ElementId,
    n: usize,
    limits: &Limits,
) -> Result<NaryGroupoid> {
    if h.universe() != base.size() || g.index() >= base.size() {
        return Err(Error::Preconditions("subgroup or generator outside the base group".into()));
    }
    if !base.is_subgroup(h) {
        return Err(Error::NotSubgroup);
    }
    if !base.is_normal(h) {
        return Err(Error::NotNormal);
    }
    let quotient = base.size() / h.len();
    // gH generates G/H iff g^j runs through every coset for j < |G/H|.
    let mut covered = ElemSet::empty(base.size());
    let mut x = base.identity();
    for _ in 0..quotient {
        covered = covered.union(&ElemSet::from_elements(base.size(), h.iter().map(|y| base.op(x, y))));
        x = base.op(x, g);
    }
    if covered.len() != base.size() {
        return Err(Error::NotCyclicQuotient);
    }
    if !(n - 1).is_multiple_of(quotient) {
        return Err(Error::OrderMismatch { quotient, arity_minus_one: n - 1 });
    }
    let labels = h.iter().map(|y| base.label(base.op(g, y)).to_string()).collect();
    NaryGroupoid::with_backing(
        h.len(),
        n,
        Backing::Coset { base: base.clone(), subgroup: h.clone(), g },
        Some(labels),
        limits,
    )
}

pub fn coset_construction(base: &BinaryGroupTable, h: &ElemSet, g: ElementId, n: usize) -> Result<NaryGroup> {
    let limits = Limits::default();
    NaryGroup::trusted(coset_groupoid(base, h, g, n, &limits)?, &limits)
}

/// Componentwise product of groups of equal arity.
pub fn direct_product(gs: &[&NaryGroup]) -> Result<NaryGroup> {
    let limits = Limits::default();
    let factors: Vec<NaryGroupoid> = gs.iter().map(|g| g.groupoid().clone()).collect();
    NaryGroup::trusted(product_groupoid(&factors, &limits)?, &limits)
}

/// The componentwise product of groupoids, with labels `(x,y,..)`.
pub fn product_groupoid(factors: &[NaryGroupoid], limits: &Limits) -> Result<NaryGroupoid> {
    let first = factors.first().ok_or_else(|| Error::Preconditions("no factors".into()))?;
    let n = first.arity();
    for g in factors {
        if g.arity() != n {
            return Err(Error::ArityMismatch { expected: n, found: g.arity() });
        }
    }
    let size: usize = factors.iter().map(|g| g.size()).product();
    let mut labels = Vec::with_capacity(size);
    for i in 0..size {
        let mut parts = Vec::with_capacity(factors.len());
        let mut x = i;
        for g in factors.iter().rev() {
            parts.push(g.label(ElementId::new(x % g.size())).to_string());
            x /= g.size();
        }
        parts.reverse();
        labels.push(format!("({})", parts.join(",")));
    }
    NaryGroupoid::with_backing(size, n, Backing::Product(factors.to_vec()), Some(labels), limits)
}

/// Splits an index of a product into component indices.
pub fn product_components(sizes: &[usize], x: ElementId) -> Vec<ElementId> {
    let mut out = alloc::vec![ElementId(0); sizes.len()];
    let mut x = x.index();
    for (j, &s) in sizes.iter().enumerate().rev() {
        out[j] = ElementId::new(x % s);
        x /= s;
    }
    out
}

/// The idempotent n-ary group `x1 x2^b ... x(n-1)^(b^(n-2)) xn` defined by
/// a splitting automorphism: `b^(n-1) = id` and `y y^b ... y^(b^(n-2)) = e`.
pub fn idempotent_from_splitting(base: &BinaryGroupTable, beta: &PermutationMap, n: usize) -> Result<NaryGroup> {
    if n < 2 {
        return Err(Error::BadArity(n));
    }
    if beta.len() != base.size() {
        return Err(Error::InvalidPermutation("beta has the wrong size".into()));
    }
    if !beta.pow(n - 1).is_identity() {
        return Err(Error::BetaOrder);
    }
    for y in base.elements() {
        let mut p = base.identity();
        let mut z = y;
        for _ in 0..n - 1 {
            p = base.op(p, z);
            z = beta.apply(z);
        }
        if p != base.identity() {
            return Err(Error::NotSplitting(y));
        }
    }
    gluskin(base, beta, base.identity(), n)
}

fn parse_args(s: &str) -> Option<Vec<&str>> {
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    Some(inner.split(',').map(|t| t.trim()).collect())
}

fn parse_num(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::UnknownName(s.to_string()))
}

/// A base group named like `S3`, `A4`, `Z6`, `D5` or `Q8`.
pub fn named_binary(name: &str) -> Result<BinaryGroupTable> {
    let unknown = || Error::UnknownName(name.to_string());
    let name = name.trim();
    if name == "Q8" {
        return Ok(BinaryGroupTable::quaternion());
    }
    let (head, num) = name.split_at(1.min(name.len()));
    let m = parse_num(num).map_err(|_| unknown())?;
    if m == 0 || m > 64 {
        return Err(unknown());
    }
    match head {
        "S" if m <= 5 => Ok(BinaryGroupTable::symmetric(m)),
        "A" if m <= 5 => Ok(BinaryGroupTable::alternating(m)),
        "Z" | "C" => Ok(BinaryGroupTable::cyclic(m)),
        "D" if m >= 1 => Ok(BinaryGroupTable::dihedral(m)),
        _ => Err(unknown()),
    }
}

/// The index of the transposition `(1 2)` in `S_q`.
fn transposition_12(q: usize) -> ElementId {
    let mut t: Vec<u32> = (0..q as u32).collect();
    t.swap(0, 1);
    ElementId::new(lex_permutations(q).iter().position(|p| *p == t).unwrap())
}

/// Odd permutations of `q` points as a coset of `A_q`, with arity `n`.
pub fn odd_permutations(q: usize, n: usize) -> Result<NaryGroup> {
    if q < 2 {
        return Err(Error::Preconditions("need at least two points".into()));
    }
    let s = BinaryGroupTable::symmetric(q);
    coset_construction(&s, &BinaryGroupTable::even_permutations(q), transposition_12(q), n)
}

/// The ternary group of reflections of the regular `k`-gon, with the
/// reflection `b c^(j-1)` labeled `bj`.
pub fn reflections(k: usize) -> Result<NaryGroup> {
    if k == 0 {
        return Err(Error::Preconditions("empty polygon".into()));
    }
    let d = BinaryGroupTable::dihedral(k);
    let rotations = ElemSet::from_elements(2 * k, (0..k).map(ElementId::new));
    let limits = Limits::default();
    let g = coset_groupoid(&d, &rotations, ElementId::new(k), 3, &limits)?
        .with_labels((1..=k).map(|j| format!("b{j}")).collect())?;
    NaryGroup::trusted(g, &limits)
}

/// The cyclic n-ary group `[x1 ... xn] = x1 + ... + xn + 1` on `Z_g`,
/// generated by `0`, with `0^[k] = k`.
pub fn cyclic_nary(g: usize, n: usize) -> Result<NaryGroup> {
    if g == 0 {
        return Err(Error::Preconditions("empty carrier".into()));
    }
    derived(&BinaryGroupTable::cyclic(g), ElementId::new(1 % g), n)
}

/// Names accepted by [`named_example`], for help texts.
pub const EXAMPLE_NAMES: &[&str] =
    &["T3", "Rusakov5", "V6", "Vn(k)", "derived(G,n)", "D6_ternary", "Zg_cyclic(g,n)", "B3_5ary", "Tn(q)"];

/// Builds a catalog group by name. `G` in `derived(G,n)` is one of
/// `S<q>`, `A<q>`, `Z<k>`, `D<m>` (order `2m`) or `Q8`.
pub fn named_example(name: &str) -> Result<NaryGroup> {
    let name = name.trim();
    let unknown = || Error::UnknownName(name.to_string());
    match name {
        "T3" => return odd_permutations(3, 3),
        "Rusakov5" => return derived(&BinaryGroupTable::quaternion(), ElementId(2), 5),
        "D6_ternary" => return derived(&BinaryGroupTable::dihedral(6), ElementId(0), 3),
        "B3_5ary" => return odd_permutations(3, 5),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("Vn(") {
        let k = parse_num(rest.strip_suffix(')').ok_or_else(unknown)?)?;
        return reflections(k);
    }
    if let Some(rest) = name.strip_prefix("Tn(") {
        let q = parse_num(rest.strip_suffix(')').ok_or_else(unknown)?)?;
        if q > 5 {
            return Err(unknown());
        }
        return odd_permutations(q, 3);
    }
    if let Some(rest) = name.strip_prefix('V') {
        if let Ok(k) = rest.parse::<usize>() {
            return reflections(k);
        }
    }
    if name.starts_with("derived(") {
        let args = parse_args(name).ok_or_else(unknown)?;
        if args.len() != 2 {
            return Err(unknown());
        }
        let base = named_binary(args[0])?;
        let n = parse_num(args[1])?;
        if n < 2 {
            return Err(Error::BadArity(n));
        }
        return derived(&base, base.identity(), n);
    }
    if name.starts_with("Zg_cyclic(") {
        let args = parse_args(name).ok_or_else(unknown)?;
        if args.len() != 2 {
            return Err(unknown());
        }
        let n = parse_num(args[1])?;
        if n < 2 {
            return Err(Error::BadArity(n));
        }
        return cyclic_nary(parse_num(args[0])?, n);
    }
    Err(unknown())
}

/// Labels of a named binary group, useful for printing.
pub fn labels_of(g: &NaryGroup) -> Vec<String> {
    g.groupoid().labels().to_vec()
}
