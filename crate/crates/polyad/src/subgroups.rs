//! n-ary subgroups: generation and enumeration, cosets, the family of
//! normality predicates, conjugacy, factor groups, the action on cosets
//! and a-direct decompositions.
//!
//! Most set computations go through the Post cover: a product
//! `[X1 ... Xm]` of subsets is the pull-back of `θX1 ... θXm`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::binary::{BinaryGroupTable, PermutationMap};
use crate::element::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::group::NaryGroup;
use crate::groupoid::{odometer, pow_u128, Limits, NaryGroupoid};
use crate::post_cover::PostCover;
use crate::retract::Retract;

/// The carrier of an n-ary subgroup, optionally with the generators it
/// was built from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubgroupSet {
    pub members: ElemSet,
    pub generators: Option<Vec<ElementId>>,
}

impl SubgroupSet {
    /// Wraps a set after checking that it is a subgroup.
    pub fn from_set(g: &NaryGroup, members: ElemSet) -> Result<Self> {
        if !is_subgroup(g, &members) {
            return Err(Error::NotSubgroup);
        }
        Ok(SubgroupSet { members, generators: None })
    }

    pub fn whole(g: &NaryGroup) -> Self {
        SubgroupSet { members: g.full_set(), generators: None }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter()
    }
}

/// `θB` and its powers `θB^j` for `j = 0..=n`, in the cover.
pub(crate) struct Lifted<'a> {
    pub cover: &'a PostCover,
    pub theta: ElemSet,
    pub powers: Vec<ElemSet>,
}

impl<'a> Lifted<'a> {
    pub fn new(g: &'a NaryGroup, b: &ElemSet) -> Self {
        let cover = g.cover();
        let theta = cover.theta_set(b);
        let mut powers = Vec::with_capacity(g.arity() + 1);
        powers.push(cover.power_set(&theta, 0));
        for j in 1..=g.arity() {
            let next = cover.mul_sets(&powers[j - 1], &theta);
            powers.push(next);
        }
        Lifted { cover, theta, powers }
    }

    pub fn pow(&self, j: usize) -> &ElemSet {
        &self.powers[j]
    }

    /// `U θB^j`.
    pub fn left(&self, u: usize, j: usize) -> ElemSet {
        self.cover.left_mul(u, &self.powers[j])
    }

    /// `θB^j U`.
    pub fn right(&self, j: usize, u: usize) -> ElemSet {
        self.cover.right_mul(&self.powers[j], u)
    }
}

/// Nonempty and closed under the operation; in a finite n-ary group this
/// already forces closure under skews.
pub fn is_subgroup(g: &NaryGroup, s: &ElemSet) -> bool {
    if s.is_empty() || s.universe() != g.size() {
        return false;
    }
    let lifted = Lifted::new(g, s);
    lifted.cover.pull_back(lifted.pow(g.arity())).is_subset(s)
}

/// The least n-ary subgroup containing `m`: the residue-1 part of the
/// cover subgroup generated by `θm`.
pub fn generate(g: &NaryGroup, m: &[ElementId]) -> Result<SubgroupSet> {
    if m.is_empty() {
        return Err(Error::Preconditions("empty generating set".into()));
    }
    for x in m {
        if x.index() >= g.size() {
            return Err(Error::ElementOutOfRange { index: x.index(), size: g.size() });
        }
    }
    let cover = g.cover();
    let set = ElemSet::from_elements(g.size(), m.iter().copied());
    let members = cover.pull_back(&cover.closure(&cover.theta_set(&set)));
    Ok(SubgroupSet { members, generators: Some(m.to_vec()) })
}

/// Largest carrier for which [`all_subgroups`] runs.
pub const ENUMERATION_LIMIT: usize = 64;

/// Every n-ary subgroup, sorted by size and then by members. Built by
/// extending known subgroups one element at a time.
pub fn all_subgroups(g: &NaryGroup) -> Result<Vec<SubgroupSet>> {
    let k = g.size();
    if k > ENUMERATION_LIMIT {
        return Err(Error::BudgetExceeded { needed: k as u128, budget: ENUMERATION_LIMIT as u64 });
    }
    let cover = g.cover();
    let mut found: BTreeSet<ElemSet> = BTreeSet::new();
    let mut frontier: Vec<ElemSet> = Vec::new();
    let lift = |s: &ElemSet| cover.pull_back(&cover.closure(&cover.theta_set(s)));
    for x in g.elements() {
        let s = lift(&ElemSet::singleton(k, x));
        if found.insert(s.clone()) {
            frontier.push(s);
        }
    }
    while let Some(s) = frontier.pop() {
        for x in g.elements() {
            if s.contains(x) {
                continue;
            }
            let mut t = s.clone();
            t.insert(x);
            let t = lift(&t);
            if found.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    Ok(found.into_iter().map(|members| SubgroupSet { members, generators: None }).collect())
}

/// Subgroups containing the anchor, read off from the retract: the
/// retract subgroups that contain `[a^n]` and are fixed by `β`.
pub fn subgroups_via_retract(g: &NaryGroup, a: ElementId) -> Result<Vec<SubgroupSet>> {
    let r = Retract::new(g, a)?;
    let d = r.d();
    let mut out: Vec<SubgroupSet> = r
        .table()
        .all_subgroups()
        .into_iter()
        .filter(|v| v.contains(d))
        .filter(|v| v.iter().all(|x| v.contains(r.beta().apply(x))))
        .map(|members| SubgroupSet { members, generators: None })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Classes `[x B ... B]`.
    Left,
    /// Classes `[B ... B x]`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub side: Side,
    pub cosets: Vec<ElemSet>,
    pub reps: Vec<ElementId>,
}

impl CosetDecomposition {
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    /// Position of the coset containing `x`.
    pub fn coset_of(&self, x: ElementId) -> usize {
        self.cosets.iter().position(|c| c.contains(x)).expect("cosets cover the carrier")
    }
}

fn require_subgroup(g: &NaryGroup, b: &ElemSet) -> Result<()> {
    if is_subgroup(g, b) {
        Ok(())
    } else {
        Err(Error::NotSubgroup)
    }
}

/// Partition into left or right cosets, with representatives the least
/// element of each class.
pub fn cosets(g: &NaryGroup, b: &ElemSet, side: Side) -> Result<CosetDecomposition> {
    require_subgroup(g, b)?;
    let l = Lifted::new(g, b);
    let n = g.arity();
    let mut seen = ElemSet::empty(g.size());
    let mut out = CosetDecomposition { side, cosets: Vec::new(), reps: Vec::new() };
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        let t = l.cover.theta(x);
        let lifted = match side {
            Side::Left => l.left(t, n - 1),
            Side::Right => l.right(n - 1, t),
        };
        let c = l.cover.pull_back(&lifted);
        if c.len() != b.len() || !c.is_disjoint(&seen) {
            return Err(Error::InvalidGroup("cosets do not partition the carrier".to_string()));
        }
        seen = seen.union(&c);
        out.cosets.push(c);
        out.reps.push(x);
    }
    if out.cosets.len() * b.len() != g.size() {
        return Err(Error::InvalidGroup("Lagrange count failed".to_string()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityKind {
    Invariant,
    SemiInvariant,
    /// `[x B^(n-1)] = [B^(m-1) x B^(n-m)]`, for `(m-1) | (n-1)`.
    MSemiInvariant(usize),
    Normal,
    /// `[x1 ... x(n-1) B] = [B x_σ(1) ... x_σ(n-1)]`, with `σ` acting on
    /// `n-1` zero-based positions.
    SigmaNormal(PermutationMap),
    WeaklyNormal,
}

/// Evaluates one normality predicate. `B` must be a subgroup.
pub fn check_normality(g: &NaryGroup, b: &ElemSet, kind: &NormalityKind) -> Result<bool> {
    require_subgroup(g, b)?;
    let l = Lifted::new(g, b);
    let n = g.arity();
    let c = l.cover;
    Ok(match kind {
        NormalityKind::SemiInvariant => m_semi(g, &l, n),
        NormalityKind::MSemiInvariant(m) => {
            let m = *m;
            if m < 2 || m > n || !(n - 1).is_multiple_of(m - 1) {
                return Err(Error::BadM { m, n });
            }
            m_semi(g, &l, m)
        }
        NormalityKind::Invariant => g.elements().all(|x| {
            let inv = c.class_of(&g.inverse_of(x));
            let s = c.mul_sets(&c.left_mul(c.theta(x), &l.theta), &ElemSet::singleton(c.order(), ElementId::new(inv)));
            c.pull_back(&s) == *b
        }),
        NormalityKind::Normal => {
            if n == 2 {
                return Ok(m_semi(g, &l, 2));
            }
            let mids = c.grade(n - 2);
            g.elements().all(|x| {
                let t = c.theta(x);
                mids.iter().all(|u| {
                    let u = u.index();
                    let left = c.left_mul(c.mul(t, u), &l.theta);
                    let right = c.right_mul(&l.theta, c.mul(u, t));
                    left == right
                })
            })
        }
        NormalityKind::WeaklyNormal => g.elements().all(|x| {
            let u = c.class_of(&alloc::vec![x; n - 1]);
            c.left_mul(u, &l.theta) == c.right_mul(&l.theta, u)
        }),
        NormalityKind::SigmaNormal(sigma) => {
            if sigma.len() != n - 1 {
                return Err(Error::InvalidPermutation("sigma must act on n-1 positions".into()));
            }
            Limits::default().check(pow_u128(g.size(), n - 1).saturating_mul(b.len() as u128))?;
            sigma_normal(g, &l, sigma)
        }
    })
}

fn m_semi(g: &NaryGroup, l: &Lifted<'_>, m: usize) -> bool {
    let n = g.arity();
    let c = l.cover;
    g.elements().all(|x| {
        let t = c.theta(x);
        let left = l.left(t, n - 1);
        let right = c.mul_sets(&l.right(m - 1, t), l.pow(n - m));
        left == right
    })
}

fn sigma_normal(g: &NaryGroup, l: &Lifted<'_>, sigma: &PermutationMap) -> bool {
    let n = g.arity();
    let c = l.cover;
    let mut t = alloc::vec![ElementId(0); n - 1];
    let mut permuted = t.clone();
    loop {
        for (j, slot) in permuted.iter_mut().enumerate() {
            *slot = t[sigma.apply(ElementId::new(j)).index()];
        }
        let u = c.class_of(&t);
        let v = c.class_of(&permuted);
        if c.left_mul(u, &l.theta) != c.right_mul(&l.theta, v) {
            return false;
        }
        if !odometer(&mut t, g.size()) {
            return true;
        }
    }
}

/// Invariance straight from the definition: `[x B^(n-1)]` equals every
/// `[B^(i-1) x B^(n-i)]`.
pub fn is_invariant_by_definition(g: &NaryGroup, b: &ElemSet) -> Result<bool> {
    require_subgroup(g, b)?;
    let l = Lifted::new(g, b);
    let n = g.arity();
    Ok(g.elements().all(|x| {
        let t = l.cover.theta(x);
        let left = l.left(t, n - 1);
        (2..=n).all(|i| l.cover.mul_sets(&l.right(i - 1, t), l.pow(n - i)) == left)
    }))
}

/// Every permutation of `m` points, as maps.
pub fn all_permutations(m: usize) -> Vec<PermutationMap> {
    crate::binary::lex_permutations(m).into_iter().map(|p| PermutationMap::new(p).expect("valid permutation")).collect()
}

/// The conditions under which a σ-normal subgroup is invariant, for `σ`
/// on zero-based positions of an n-ary group.
pub fn sigma_forces_invariance(sigma: &PermutationMap, n: usize) -> bool {
    let s = |i: usize| sigma.apply(ElementId::new(i - 1)).index() + 1;
    (1..n).any(|i| s(i) == i)
        || (1..=n.saturating_sub(3)).any(|j| s(j) == j + 2)
        || (n >= 3 && s(n - 2) == 1)
        || s(n - 1) == 2
}

/// A σ-normal subgroup is semi-invariant when `σ(n-1) = 1`.
pub fn sigma_forces_semi_invariance(sigma: &PermutationMap, n: usize) -> bool {
    sigma.apply(ElementId::new(n - 2)).index() == 0
}

/// All normality verdicts for one subgroup plus the implications checked
/// between them.
#[derive(Clone, Debug)]
pub struct NormalityAudit {
    pub invariant: bool,
    pub invariant_by_definition: bool,
    pub semi_invariant: bool,
    /// `(m, verdict)` for every admissible `m`.
    pub m_semi_invariant: Vec<(usize, bool)>,
    pub normal: bool,
    pub weakly_normal: bool,
    /// `(σ, verdict)`; all of `S_(n-1)` when affordable, otherwise just the
    /// identity and the long cycle.
    pub sigma_normal: Vec<(PermutationMap, bool)>,
    pub violations: Vec<String>,
}

impl NormalityAudit {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn normality_implications_audit(g: &NaryGroup, b: &ElemSet) -> Result<NormalityAudit> {
    let n = g.arity();
    let check = |kind: NormalityKind| check_normality(g, b, &kind);
    let invariant = check(NormalityKind::Invariant)?;
    let invariant_by_definition = is_invariant_by_definition(g, b)?;
    let semi_invariant = check(NormalityKind::SemiInvariant)?;
    let normal = check(NormalityKind::Normal)?;
    let weakly_normal = check(NormalityKind::WeaklyNormal)?;
    let mut m_semi_invariant = Vec::new();
    for m in 2..=n {
        if (n - 1).is_multiple_of(m - 1) {
            m_semi_invariant.push((m, check(NormalityKind::MSemiInvariant(m))?));
        }
    }
    let per_sigma = pow_u128(g.size(), n - 1).saturating_mul(b.len() as u128);
    let factorial: u128 = (1..n as u128).product();
    let sigmas = if n == 2 {
        alloc::vec![PermutationMap::identity(1)]
    } else if Limits::default().check(per_sigma.saturating_mul(factorial)).is_ok() {
        all_permutations(n - 1)
    } else {
        let cycle = PermutationMap::from_fn(n - 1, |i| (i + 1) % (n - 1))?;
        alloc::vec![PermutationMap::identity(n - 1), cycle]
    };
    let mut sigma_normal = Vec::new();
    for s in sigmas {
        let v = if Limits::default().check(per_sigma).is_ok() {
            check(NormalityKind::SigmaNormal(s.clone()))?
        } else {
            continue;
        };
        sigma_normal.push((s, v));
    }

    let mut violations = Vec::new();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            violations.push(what.to_string());
        }
    };
    need(invariant == invariant_by_definition, "finite invariance criterion disagrees with the definition");
    need(!normal || semi_invariant, "normal but not semi-invariant");
    need(!invariant || semi_invariant, "invariant but not semi-invariant");
    need(!normal || weakly_normal, "normal but not weakly normal");
    if g.size() == 2 * b.len() {
        need(semi_invariant, "index 2 but not semi-invariant");
    }
    for &(m, v) in &m_semi_invariant {
        if m == 2 {
            need(v == invariant, "2-semi-invariance differs from invariance");
        }
        if m == n {
            need(v == semi_invariant, "n-semi-invariance differs from semi-invariance");
        }
        need(!invariant || v, "invariant but not m-semi-invariant");
        need(!v || semi_invariant, "m-semi-invariant but not semi-invariant");
    }
    for (s, v) in &sigma_normal {
        if s.is_identity() {
            need(*v == invariant, "identity-normal differs from invariant");
        }
        if n > 2 && (0..n - 1).all(|i| s.apply(ElementId::new(i)).index() == (i + 1) % (n - 1)) {
            need(*v == normal, "cycle-normal differs from normal");
        }
        if *v && sigma_forces_invariance(s, n) {
            need(invariant, "sigma-normal with a forcing sigma but not invariant");
        }
        if *v && sigma_forces_semi_invariance(s, n) {
            need(semi_invariant, "sigma-normal with sigma(n-1) = 1 but not semi-invariant");
        }
    }
    Ok(NormalityAudit {
        invariant,
        invariant_by_definition,
        semi_invariant,
        m_semi_invariant,
        normal,
        weakly_normal,
        sigma_normal,
        violations,
    })
}

/// The first `x` with `[x C^(n-1)] = [B x C^(n-2)] = [B^(n-1) x]`.
pub fn is_conjugate(g: &NaryGroup, b: &ElemSet, c: &ElemSet) -> Result<Option<ElementId>> {
    require_subgroup(g, b)?;
    require_subgroup(g, c)?;
    let lb = Lifted::new(g, b);
    let lc = Lifted::new(g, c);
    let n = g.arity();
    let cov = lb.cover;
    Ok(g.elements().find(|&x| {
        let t = cov.theta(x);
        let first = lc.left(t, n - 1);
        let last = lb.right(n - 1, t);
        let middle = cov.mul_sets(&lb.right(1, t), lc.pow(n - 2));
        first == last && first == middle
    }))
}

/// The first `x` with `[x C^(n-1)] = [B^(n-1) x]`.
pub fn is_semiconjugate(g: &NaryGroup, b: &ElemSet, c: &ElemSet) -> Result<Option<ElementId>> {
    require_subgroup(g, b)?;
    require_subgroup(g, c)?;
    let lb = Lifted::new(g, b);
    let lc = Lifted::new(g, c);
    let n = g.arity();
    Ok(g.elements().find(|&x| {
        let t = lb.cover.theta(x);
        lc.left(t, n - 1) == lb.right(n - 1, t)
    }))
}

/// The first `x` with `B = [x C x~]`, `x~` an inverse sequence of `x`.
/// Each candidate is cross-checked against conjugation of the generated
/// cover subgroups, `B* = θx C* θx^-1`.
pub fn conjugating_element(g: &NaryGroup, b: &ElemSet, c: &ElemSet) -> Result<Option<ElementId>> {
    require_subgroup(g, b)?;
    require_subgroup(g, c)?;
    let cov = g.cover();
    let tc = cov.theta_set(c);
    let bs = cov.embed_subgroup(b).star;
    let cs = cov.embed_subgroup(c).star;
    let mut found = None;
    for x in g.elements() {
        let inv = cov.class_of(&g.inverse_of(x));
        let direct = cov.pull_back(&cov.right_mul(&cov.left_mul(cov.theta(x), &tc), inv)) == *b;
        let lifted = cov.conjugate(&cs, cov.theta(x)) == bs;
        if direct != lifted {
            return Err(Error::InvalidGroup("conjugacy disagrees with the cover".to_string()));
        }
        if direct && found.is_none() {
            found = Some(x);
        }
    }
    Ok(found)
}

/// An n-ary factor group on right cosets.
#[derive(Clone, Debug)]
pub struct FactorGroup {
    pub group: NaryGroup,
    pub cosets: CosetDecomposition,
}

pub fn factor_group(g: &NaryGroup, b: &ElemSet) -> Result<FactorGroup> {
    require_subgroup(g, b)?;
    if !check_normality(g, b, &NormalityKind::SemiInvariant)? {
        return Err(Error::NotSemiInvariant);
    }
    let limits = Limits::default();
    let dec = cosets(g, b, Side::Right)?;
    let m = dec.index();
    let n = g.arity();
    limits.check(pow_u128(m, n))?;
    let mut pos = alloc::vec![0u32; g.size()];
    for (i, c) in dec.cosets.iter().enumerate() {
        for x in c.iter() {
            pos[x.index()] = i as u32;
        }
    }
    let mut table = Vec::with_capacity(pow_u128(m, n) as usize);
    let mut t = alloc::vec![ElementId(0); n];
    let mut args = t.clone();
    loop {
        for (a, ti) in args.iter_mut().zip(&t) {
            *a = dec.reps[ti.index()];
        }
        table.push(pos[g.op(&args).index()]);
        if !odometer(&mut t, m) {
            break;
        }
    }
    if limits.check(pow_u128(g.size(), n)).is_ok() {
        let mut t = alloc::vec![ElementId(0); n];
        loop {
            let idx = t.iter().fold(0usize, |acc, x| acc * m + pos[x.index()] as usize);
            if table[idx] != pos[g.op(&t).index()] {
                return Err(Error::InvalidGroup("factor operation is not well defined".to_string()));
            }
            if !odometer(&mut t, g.size()) {
                break;
            }
        }
    }
    let labels = dec
        .cosets
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|x| g.label(x)).collect();
            alloc::format!("{{{}}}", names.join(","))
        })
        .collect();
    let groupoid = NaryGroupoid::from_table(m, n, table, Some(labels))?;
    Ok(FactorGroup { group: NaryGroup::verify(groupoid, &limits)?, cosets: dec })
}

/// The action of `A` on the right cosets of `B` through the retract at
/// `b ∈ B`, where `δ_a(Y) = [Y b~ a]`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub anchor: ElementId,
    pub omega: Vec<ElemSet>,
    /// `δ_a` for each element `a`, acting on positions in `omega`.
    pub deltas: Vec<PermutationMap>,
    /// The distinct `δ_a`, sorted.
    pub image: Vec<PermutationMap>,
    pub kernel: ElemSet,
    pub transitive: bool,
    /// Set when `[b^n]` lies in the kernel: whether the kernel is then a
    /// semi-invariant subgroup, maximal among those inside `B`.
    pub kernel_maximal_semi_invariant: Option<bool>,
}

impl CosetAction {
    pub fn is_faithful(&self) -> bool {
        self.kernel.len() == 1
    }
}

pub fn coset_action(g: &NaryGroup, b: &ElemSet, anchor: ElementId) -> Result<CosetAction> {
    require_subgroup(g, b)?;
    if !b.contains(anchor) {
        return Err(Error::Preconditions("anchor must lie in the subgroup".into()));
    }
    let r = Retract::new(g, anchor)?;
    let omega = cosets(g, b, Side::Right)?.cosets;
    let pos_of = |y: &ElemSet| omega.iter().position(|c| c == y);
    let mut deltas = Vec::with_capacity(g.size());
    for a in g.elements() {
        let mut image = Vec::with_capacity(omega.len());
        for y in &omega {
            let moved = ElemSet::from_elements(g.size(), y.iter().map(|x| r.op(x, a)));
            let p = pos_of(&moved).ok_or_else(|| Error::InvalidGroup("coset not mapped to a coset".to_string()))?;
            image.push(p as u32);
        }
        deltas.push(PermutationMap::new(image)?);
    }
    // γ is a homomorphism of the retract: δ_(x ⓑ y) = δ_x then δ_y.
    for x in g.elements() {
        for y in g.elements() {
            if deltas[r.op(x, y).index()] != deltas[x.index()].then(&deltas[y.index()]) {
                return Err(Error::InvalidGroup("coset action is not a homomorphism".to_string()));
            }
        }
    }
    // and of the n-ary structure, through the reconstruction formula.
    let n = g.arity();
    let betas: Vec<PermutationMap> = (0..n).map(|e| r.beta().pow(e)).collect();
    if Limits::default().check(pow_u128(g.size(), n)).is_ok() {
        let mut t = alloc::vec![ElementId(0); n];
        loop {
            let mut acc = PermutationMap::identity(omega.len());
            for (j, &x) in t.iter().enumerate() {
                acc = acc.then(&deltas[betas[j].apply(x).index()]);
            }
            acc = acc.then(&deltas[r.d().index()]);
            if acc != deltas[g.op(&t).index()] {
                return Err(Error::InvalidGroup("coset action is not an n-ary homomorphism".to_string()));
            }
            if !odometer(&mut t, g.size()) {
                break;
            }
        }
    }
    let identity = &deltas[anchor.index()];
    let kernel = ElemSet::from_elements(g.size(), g.elements().filter(|a| deltas[a.index()] == *identity));
    let mut image: Vec<PermutationMap> = deltas.clone();
    image.sort_by(|p, q| p.images().cmp(q.images()));
    image.dedup();
    let transitive = omega.is_empty() || (0..omega.len()).all(|j| deltas.iter().any(|d| d.images()[0] as usize == j));
    let kernel_maximal_semi_invariant = if kernel.contains(r.d()) {
        let semi = check_normality(g, &kernel, &NormalityKind::SemiInvariant)?;
        let mut maximal = semi;
        if semi && g.size() <= ENUMERATION_LIMIT {
            for s in all_subgroups(g)? {
                if kernel.is_subset(&s.members)
                    && s.members.is_subset(b)
                    && s.members != kernel
                    && check_normality(g, &s.members, &NormalityKind::SemiInvariant)?
                {
                    maximal = false;
                }
            }
        }
        Some(maximal)
    } else {
        None
    };
    Ok(CosetAction { anchor, omega, deltas, image, kernel, transitive, kernel_maximal_semi_invariant })
}

/// Whether `A` is the a-direct product of `parts`. The definition and the
/// retract criterion are both evaluated; a disagreement is an error.
pub fn a_direct_decomposition(g: &NaryGroup, a: ElementId, parts: &[SubgroupSet]) -> Result<bool> {
    if !g.is_idempotent(a) {
        return Err(Error::NotIdempotentAnchor(a));
    }
    for p in parts {
        require_subgroup(g, &p.members)?;
    }
    if parts.is_empty() || parts.iter().any(|p| !p.contains(a)) {
        return Ok(false);
    }
    let by_def = a_direct_by_definition(g, a, parts)?;
    let by_retract = a_direct_by_retract(g, a, parts)?;
    if by_def != by_retract {
        return Err(Error::InvalidGroup("a-direct criteria disagree".to_string()));
    }
    Ok(by_def)
}

fn a_direct_by_definition(g: &NaryGroup, a: ElementId, parts: &[SubgroupSet]) -> Result<bool> {
    let m = parts.len();
    if m == 1 {
        return Ok(parts[0].members == g.full_set());
    }
    for p in parts {
        if !check_normality(g, &p.members, &NormalityKind::SemiInvariant)? {
            return Ok(false);
        }
    }
    let cov = g.cover();
    let n = g.arity();
    let mut acc = cov.theta_set(&parts[0].members);
    for p in &parts[1..] {
        acc = cov.mul_sets(&acc, Lifted::new(g, &p.members).pow(n - 1));
    }
    if cov.pull_back(&acc) != g.full_set() {
        return Ok(false);
    }
    let single = ElemSet::singleton(g.size(), a);
    for i in 1..m {
        let others: Vec<ElementId> =
            parts.iter().enumerate().filter(|(j, _)| *j != i).flat_map(|(_, p)| p.iter()).collect();
        if generate(g, &others)?.members.intersection(&parts[i].members) != single {
            return Ok(false);
        }
    }
    Ok(true)
}

fn a_direct_by_retract(g: &NaryGroup, a: ElementId, parts: &[SubgroupSet]) -> Result<bool> {
    let r = Retract::new(g, a)?;
    let t = r.table();
    if parts.iter().any(|p| !t.is_normal(&p.members)) {
        return Ok(false);
    }
    let mut prod = ElemSet::singleton(g.size(), a);
    for p in parts {
        prod = t.set_product(&prod, &p.members);
    }
    if prod != g.full_set() {
        return Ok(false);
    }
    let single = ElemSet::singleton(g.size(), a);
    for i in 0..parts.len() {
        let others: Vec<ElementId> =
            parts.iter().enumerate().filter(|(j, _)| *j != i).flat_map(|(_, p)| p.iter()).collect();
        let joined = if others.is_empty() { single.clone() } else { t.generate(&others) };
        if joined.intersection(&parts[i].members) != single {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(p, e)` pairs of the prime factorization.
pub fn factorize(mut m: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// The Sylow decomposition at one idempotent anchor.
#[derive(Clone, Debug)]
pub struct SylowDecomposition {
    pub anchor: ElementId,
    /// `(p, the p-Sylow subgroup through the anchor)`, primes ascending.
    pub factors: Vec<(usize, SubgroupSet)>,
}

/// For a semiabelian group with idempotents, the unique a-direct Sylow
/// decomposition at each idempotent `a`.
pub fn sylow_hall_semiabelian(g: &NaryGroup) -> Result<Vec<SylowDecomposition>> {
    if !crate::structure::is_semiabelian(g) {
        return Err(Error::NotSemiabelian);
    }
    let anchors: Vec<ElementId> = g.elements().filter(|&a| g.is_idempotent(a)).collect();
    if anchors.is_empty() {
        return Err(Error::NoIdempotent);
    }
    let subs = all_subgroups(g)?;
    let mut out = Vec::new();
    for a in anchors {
        let mut factors = Vec::new();
        for (p, e) in factorize(g.size()) {
            let order = p.pow(e);
            let hits: Vec<&SubgroupSet> = subs.iter().filter(|s| s.contains(a) && s.len() == order).collect();
            if hits.len() != 1 {
                return Err(Error::InvalidGroup("Sylow subgroup through the anchor is not unique".to_string()));
            }
            factors.push((p, hits[0].clone()));
        }
        if factors.is_empty() {
            factors.push((1, SubgroupSet::whole(g)));
        }
        let parts: Vec<SubgroupSet> = factors.iter().map(|f| f.1.clone()).collect();
        if !a_direct_decomposition(g, a, &parts)? {
            return Err(Error::InvalidGroup("Sylow factors do not form an a-direct product".to_string()));
        }
        out.push(SylowDecomposition { anchor: a, factors });
    }
    Ok(out)
}

/// The subgroup through `a` whose order is the `π`-part of `|A|`, when it
/// exists and is unique.
pub fn hall_subgroup(g: &NaryGroup, a: ElementId, primes: &[usize]) -> Result<Option<SubgroupSet>> {
    let order: usize = factorize(g.size()).iter().filter(|(p, _)| primes.contains(p)).map(|(p, e)| p.pow(*e)).product();
    let hits: Vec<SubgroupSet> = all_subgroups(g)?.into_iter().filter(|s| s.contains(a) && s.len() == order).collect();
    Ok(if hits.len() == 1 { hits.into_iter().next() } else { None })
}

/// The retract as a binary group, exposed for callers that mix the two
/// views.
pub fn retract_table(g: &NaryGroup, a: ElementId) -> Result<BinaryGroupTable> {
    Ok(Retract::new(g, a)?.table().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{derived, named_example};
    use crate::element::ids;

    fn set(k: usize, ix: &[usize]) -> ElemSet {
        ElemSet::from_indices(k, ix)
    }

    /// Closure by repeated products of n-tuples over the current set.
    fn naive_generate(g: &NaryGroup, m: &[ElementId]) -> ElemSet {
        let mut s = ElemSet::from_elements(g.size(), m.iter().copied());
        loop {
            let items = s.to_vec();
            let mut next = s.clone();
            let mut t = alloc::vec![0usize; g.arity()];
            'outer: loop {
                let args: Vec<ElementId> = t.iter().map(|&i| items[i]).collect();
                next.insert(g.op(&args));
                for j in (0..t.len()).rev() {
                    t[j] += 1;
                    if t[j] < items.len() {
                        continue 'outer;
                    }
                    t[j] = 0;
                }
                break;
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    #[test]
    fn generate_matches_naive_closure() {
        for name in ["T3", "V6", "Rusakov5", "derived(S3,3)", "Zg_cyclic(6,4)"] {
            let g = named_example(name).unwrap();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(generate(&g, &[x, y]).unwrap().members, naive_generate(&g, &[x, y]), "{name}");
                }
            }
        }
    }

    #[test]
    fn v6_subgroups() {
        let g = named_example("V6").unwrap();
        let subs = all_subgroups(&g).unwrap();
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, [1, 1, 1, 1, 1, 1, 2, 2, 2, 3, 3, 6]);
        assert!(subs.iter().any(|s| s.members == set(6, &[0, 3])));
        assert!(subs.iter().any(|s| s.members == set(6, &[1, 3, 5])));
        assert_eq!(generate(&g, &ids(&[0])).unwrap().members, set(6, &[0]));
    }

    #[test]
    fn cyclic_ternary_of_order_four_has_no_proper_subgroups() {
        let g = named_example("Zg_cyclic(4,3)").unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 1);
    }

    #[test]
    fn retract_path_agrees_with_closure() {
        for name in ["V6", "T3", "derived(S3,3)", "Vn(8)", "derived(D4,3)"] {
            let g = named_example(name).unwrap();
            let all = all_subgroups(&g).unwrap();
            for a in g.elements().filter(|&a| g.is_idempotent(a)) {
                let mut through: Vec<SubgroupSet> = all.iter().filter(|s| s.contains(a)).cloned().collect();
                through.sort();
                assert_eq!(subgroups_via_retract(&g, a).unwrap(), through, "{name}");
            }
        }
    }

    #[test]
    fn coset_counts() {
        let g = named_example("V6").unwrap();
        let b = set(6, &[0, 3]);
        let left = cosets(&g, &b, Side::Left).unwrap();
        assert_eq!(left.index(), 3);
        assert_eq!(cosets(&g, &b, Side::Right).unwrap().index(), 3);
        assert_eq!(cosets(&g, &g.full_set(), Side::Left).unwrap().index(), 1);
        let s3 = derived(&BinaryGroupTable::symmetric(3), ElementId(0), 3).unwrap();
        let t = generate(&s3, &ids(&[0, 1])).unwrap();
        assert_eq!(cosets(&s3, &t.members, Side::Right).unwrap().index(), 3);
        assert!(matches!(cosets(&g, &set(6, &[0, 1]), Side::Left), Err(Error::NotSubgroup)));
    }

    #[test]
    fn klein_in_s4_is_invariant_not_normal() {
        let s4 = BinaryGroupTable::symmetric(4);
        let g = derived(&s4, ElementId(0), 3).unwrap();
        let v4 = s4.all_subgroups().into_iter().find(|h| h.len() == 4 && s4.is_normal(h)).unwrap();
        assert!(check_normality(&g, &v4, &NormalityKind::Invariant).unwrap());
        assert!(!check_normality(&g, &v4, &NormalityKind::Normal).unwrap());
        assert!(normality_implications_audit(&g, &v4).unwrap().consistent());
    }

    #[test]
    fn dihedral_reflection_pair() {
        let d6 = BinaryGroupTable::dihedral(6);
        let g = derived(&d6, ElementId(0), 3).unwrap();
        // b and b c^3
        let b = set(12, &[6, 9]);
        assert!(check_normality(&g, &b, &NormalityKind::SemiInvariant).unwrap());
        assert!(!check_normality(&g, &b, &NormalityKind::Normal).unwrap());
        assert!(!check_normality(&g, &b, &NormalityKind::Invariant).unwrap());
        assert!(!check_normality(&g, &b, &NormalityKind::WeaklyNormal).unwrap());
    }

    #[test]
    fn bad_m() {
        let g = named_example("derived(S3,4)").unwrap();
        let b = g.full_set();
        assert!(matches!(check_normality(&g, &b, &NormalityKind::MSemiInvariant(3)), Err(Error::BadM { .. })));
        assert!(check_normality(&g, &b, &NormalityKind::MSemiInvariant(4)).unwrap());
    }

    #[test]
    fn audits_on_small_catalog() {
        for name in ["T3", "V6", "derived(S3,3)", "derived(S3,4)", "B3_5ary", "derived(Q8,3)", "D6_ternary"] {
            let g = named_example(name).unwrap();
            for s in all_subgroups(&g).unwrap() {
                let audit = normality_implications_audit(&g, &s.members).unwrap();
                assert!(audit.consistent(), "{name} {:?}: {:?}", s.members, audit.violations);
                if g.size() == 2 * s.len() {
                    assert!(audit.semi_invariant);
                }
            }
        }
    }

    #[test]
    fn semiconjugate_not_conjugate() {
        for q in [3, 4] {
            let sq = BinaryGroupTable::symmetric(q);
            let g = derived(&sq, ElementId(0), 3).unwrap();
            let even = BinaryGroupTable::even_permutations(q);
            let odd = sq.elements().filter(|x| !even.contains(*x)).collect::<Vec<_>>();
            let odd = ElemSet::from_elements(sq.size(), odd);
            assert!(is_subgroup(&g, &odd));
            assert!(is_conjugate(&g, &even, &odd).unwrap().is_none());
            assert!(is_semiconjugate(&g, &even, &odd).unwrap().is_some());
            assert!(is_conjugate(&g, &even, &even).unwrap().is_some());
        }
    }

    #[test]
    fn conjugate_implies_semiconjugate() {
        for name in ["V6", "derived(S3,3)", "T3", "derived(S3,4)"] {
            let g = named_example(name).unwrap();
            let subs = all_subgroups(&g).unwrap();
            for b in &subs {
                for c in &subs {
                    let conj = is_conjugate(&g, &b.members, &c.members).unwrap();
                    let semi = is_semiconjugate(&g, &b.members, &c.members).unwrap();
                    if conj.is_some() {
                        assert!(semi.is_some());
                    }
                    if semi.is_some() {
                        assert_eq!(b.len(), c.len());
                    }
                    conjugating_element(&g, &b.members, &c.members).unwrap();
                }
            }
        }
    }

    #[test]
    fn factor_groups() {
        let g = named_example("V6").unwrap();
        let f = factor_group(&g, &set(6, &[0, 2, 4])).unwrap();
        assert_eq!(f.group.size(), 2);
        assert_eq!(f.group.arity(), 3);
        let s3 = derived(&BinaryGroupTable::symmetric(3), ElementId(0), 3).unwrap();
        let a3 = BinaryGroupTable::even_permutations(3);
        assert_eq!(factor_group(&s3, &a3).unwrap().group.size(), 2);
        assert_eq!(factor_group(&s3, &s3.full_set()).unwrap().group.size(), 1);
        let t = generate(&s3, &ids(&[0, 1])).unwrap();
        assert!(matches!(factor_group(&s3, &t.members), Err(Error::NotSemiInvariant)));
    }

    #[test]
    fn coset_actions() {
        let g = named_example("V6").unwrap();
        let b = set(6, &[0, 3]);
        let act = coset_action(&g, &b, ElementId(0)).unwrap();
        let m = act.omega.len();
        assert_eq!(m, 3);
        assert_eq!(act.image.len() % m, 0);
        assert_eq!(6 % act.image.len(), 0);
        assert!(act.transitive);
        let s3 = derived(&BinaryGroupTable::symmetric(3), ElementId(0), 3).unwrap();
        let t = generate(&s3, &ids(&[0, 1])).unwrap();
        let a = coset_action(&s3, &t.members, ElementId(0)).unwrap();
        assert!(a.is_faithful());
        assert_eq!(a.kernel_maximal_semi_invariant, Some(true));
        let whole = coset_action(&s3, &s3.full_set(), ElementId(0)).unwrap();
        assert_eq!(whole.image.len(), 1);
    }

    #[test]
    fn v6_a_direct() {
        let g = named_example("V6").unwrap();
        let sub = |ix: &[usize]| SubgroupSet::from_set(&g, set(6, ix)).unwrap();
        let a = ElementId(0);
        assert!(a_direct_decomposition(&g, a, &[sub(&[0, 3]), sub(&[0, 2, 4])]).unwrap());
        assert!(a_direct_decomposition(&g, a, &[SubgroupSet::whole(&g)]).unwrap());
        assert!(!a_direct_decomposition(&g, a, &[sub(&[0, 3]), sub(&[1, 4])]).unwrap());
        let r = named_example("Rusakov5").unwrap();
        assert!(matches!(
            a_direct_decomposition(&r, ElementId(0), &[SubgroupSet::whole(&r)]),
            Err(Error::NotIdempotentAnchor(_))
        ));
    }

    #[test]
    fn a_direct_criteria_agree_everywhere() {
        for name in ["V6", "Vn(12)", "derived(Z6,3)", "derived(D4,3)"] {
            let g = named_example(name).unwrap();
            let subs = all_subgroups(&g).unwrap();
            for a in g.elements().filter(|&a| g.is_idempotent(a)) {
                let through: Vec<&SubgroupSet> = subs.iter().filter(|s| s.contains(a)).collect();
                for x in &through {
                    for y in &through {
                        a_direct_decomposition(&g, a, &[(*x).clone(), (*y).clone()]).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn sylow_decompositions() {
        let g = named_example("V6").unwrap();
        let decs = sylow_hall_semiabelian(&g).unwrap();
        assert_eq!(decs.len(), 6);
        assert_eq!(decs[0].factors[0].1.members, set(6, &[0, 3]));
        assert_eq!(decs[0].factors[1].1.members, set(6, &[0, 2, 4]));
        let v12 = named_example("Vn(12)").unwrap();
        let d = sylow_hall_semiabelian(&v12).unwrap();
        let sizes: Vec<usize> = d[0].factors.iter().map(|f| f.1.len()).collect();
        assert_eq!(sizes, [4, 3]);
        let p = named_example("Vn(5)").unwrap();
        assert_eq!(sylow_hall_semiabelian(&p).unwrap()[0].factors.len(), 1);
        assert!(sylow_hall_semiabelian(&named_example("T3").unwrap()).is_ok());
        assert!(sylow_hall_semiabelian(&named_example("Rusakov5").unwrap()).is_err());
        let h = hall_subgroup(&v12, ElementId(0), &[2]).unwrap().unwrap();
        assert_eq!(h.len(), 4);
    }
}
