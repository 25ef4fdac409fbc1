//! Element-level and global structure: n-adic powers and orders, cyclic
//! classification, idempotents and units, the center, centralizer and
//! normalizer families, commutativity predicates, Sylow partitions of
//! idempotent groups and solvability of the retract.
//!
//! Equivalence of short words is decided in the Post cover, where two
//! words are equivalent exactly when their classes coincide.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binary::PermutationMap;
use crate::element::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::group::NaryGroup;
use crate::groupoid::{odometer, pow_u128, Limits};
use crate::retract::Retract;
use crate::subgroups::{
    a_direct_decomposition, all_subgroups, check_normality, factorize, is_subgroup, Lifted, NormalityKind, SubgroupSet,
};

/// `a^[s]`, the product of `s(n-1)+1` copies of `a`. Negative exponents
/// are reduced modulo the n-adic order.
pub fn nadic_power(g: &NaryGroup, a: ElementId, s: i64) -> ElementId {
    let s = if s < 0 {
        let m = nadic_order(g, a) as i64;
        s.rem_euclid(m)
    } else {
        s
    };
    let n = g.arity();
    let mut x = a;
    let tail = alloc::vec![a; n - 1];
    let mut word = Vec::with_capacity(n);
    for _ in 0..s {
        word.clear();
        word.push(x);
        word.extend_from_slice(&tail);
        x = g.op(&word);
    }
    x
}

/// The least `m ≥ 1` with `a^[m] = a`.
pub fn nadic_order(g: &NaryGroup, a: ElementId) -> usize {
    let n = g.arity();
    let mut word = alloc::vec![a; n];
    let mut x = g.op(&word);
    let mut m = 1;
    while x != a {
        word[0] = x;
        x = g.op(&word);
        m += 1;
    }
    m
}

/// n-adic order of every element, by index.
pub fn profile(g: &NaryGroup) -> Vec<usize> {
    g.elements().map(|a| nadic_order(g, a)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicKind {
    /// Generated by the n-adic powers of each listed element.
    Cyclic {
        generators: Vec<ElementId>,
    },
    /// Not cyclic, but the retracts are.
    Semicyclic,
    Neither,
}

pub fn classify_cyclic(g: &NaryGroup) -> Result<CyclicKind> {
    let generators: Vec<ElementId> = g.elements().filter(|&a| nadic_order(g, a) == g.size()).collect();
    if !generators.is_empty() {
        return Ok(CyclicKind::Cyclic { generators });
    }
    if Retract::new(g, ElementId(0))?.table().is_cyclic() {
        Ok(CyclicKind::Semicyclic)
    } else {
        Ok(CyclicKind::Neither)
    }
}

/// Whether the retracts are cyclic (true for cyclic groups as well).
pub fn is_semicyclic(g: &NaryGroup) -> Result<bool> {
    Ok(Retract::new(g, ElementId(0))?.table().is_cyclic())
}

/// `I(A)`: elements with `[a^n] = a`.
pub fn idempotents(g: &NaryGroup) -> ElemSet {
    ElemSet::from_elements(g.size(), g.elements().filter(|&a| g.is_idempotent(a)))
}

pub fn is_unit(g: &NaryGroup, e: ElementId) -> bool {
    let n = g.arity();
    let mut w = alloc::vec![e; n];
    g.elements().all(|a| {
        (0..n).all(|i| {
            w[i] = a;
            let ok = g.op(&w) == a;
            w[i] = e;
            ok
        })
    })
}

/// `E(A)`, checked to equal `I(A) ∩ Z(A)` and to be a subgroup when
/// nonempty.
pub fn units(g: &NaryGroup) -> Result<ElemSet> {
    let e = ElemSet::from_elements(g.size(), g.elements().filter(|&x| is_unit(g, x)));
    let z = center_family(g, &CenterKind::Standard, 2, None)?;
    if e != idempotents(g).intersection(&z) {
        return Err(Error::InvalidGroup("units differ from central idempotents".to_string()));
    }
    if !e.is_empty() && !is_subgroup(g, &e) {
        return Err(Error::InvalidGroup("units do not form a subgroup".to_string()));
    }
    Ok(e)
}

/// Which member of the center family to compute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterKind {
    /// `z x1..x(m-2) x ~ x x1..x(m-2) z`.
    Standard,
    /// Weak (type D): `z x^(m-1) ~ x^(m-1) z`.
    Weak,
    /// Type T: `z x1..x(m-1) ~ x1..x(m-1) z`.
    TypeT,
    /// `z x1..x(m-1) ~ x_σ(1)..x_σ(m-1) z` for every `σ`, on zero-based
    /// positions.
    Sigma(Vec<PermutationMap>),
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if m < 2 || m > n || !(n - 1).is_multiple_of(m - 1) {
        Err(Error::BadM { m, n })
    } else {
        Ok(())
    }
}

/// The `m`-semicentralizer of `B` (or the `m`-semicenter when `B` is
/// `None`) of the chosen kind. The standard, weak and type T sets are
/// checked to be subgroups when nonempty; the Σ variant is returned as is.
pub fn center_family(g: &NaryGroup, kind: &CenterKind, m: usize, b: Option<&ElemSet>) -> Result<ElemSet> {
    let n = g.arity();
    check_m(n, m)?;
    let full = g.full_set();
    let b = b.unwrap_or(&full);
    let l = Lifted::new(g, b);
    let c = l.cover;
    let commutes = |z: usize, w: usize| c.mul(z, w) == c.mul(w, z);
    let set = ElemSet::from_elements(
        g.size(),
        g.elements().filter(|&z| {
            let tz = c.theta(z);
            match kind {
                CenterKind::Standard => b.iter().all(|x| {
                    let tx = c.theta(x);
                    l.pow(m - 2).iter().all(|u| {
                        let u = u.index();
                        c.mul(c.mul(tz, u), tx) == c.mul(c.mul(tx, u), tz)
                    })
                }),
                CenterKind::Weak => b.iter().all(|x| commutes(tz, c.class_of(&alloc::vec![x; m - 1]))),
                CenterKind::TypeT => l.pow(m - 1).iter().all(|w| commutes(tz, w.index())),
                CenterKind::Sigma(sigmas) => sigma_centralizes(g, &l, b, tz, m, sigmas),
            }
        }),
    );
    if !matches!(kind, CenterKind::Sigma(_)) && !set.is_empty() && !is_subgroup(g, &set) {
        return Err(Error::InvalidGroup("semicentralizer is not a subgroup".to_string()));
    }
    Ok(set)
}

fn sigma_centralizes(
    g: &NaryGroup,
    l: &Lifted<'_>,
    b: &ElemSet,
    tz: usize,
    m: usize,
    sigmas: &[PermutationMap],
) -> bool {
    let c = l.cover;
    let items = b.to_vec();
    let mut t = alloc::vec![ElementId(0); m - 1];
    let mut word = t.clone();
    let mut permuted = t.clone();
    loop {
        for (w, i) in word.iter_mut().zip(&t) {
            *w = items[i.index()];
        }
        let u = c.class_of(&word);
        for s in sigmas {
            for (j, slot) in permuted.iter_mut().enumerate() {
                *slot = word[s.apply(ElementId::new(j)).index()];
            }
            if c.mul(tz, u) != c.mul(c.class_of(&permuted), tz) {
                return false;
            }
        }
        if !odometer(&mut t, items.len()) {
            let _ = g;
            return true;
        }
    }
}

/// `Z(A)`.
pub fn center(g: &NaryGroup) -> Result<ElemSet> {
    center_family(g, &CenterKind::Standard, 2, None)
}

/// `HZ(A) = Z(A, n)`.
pub fn semicenter(g: &NaryGroup) -> Result<ElemSet> {
    center_family(g, &CenterKind::Standard, g.arity(), None)
}

/// The `m`-seminormalizer `N_A(B, m)`: elements `x` with
/// `[x B^(n-1)] = [B^(i(m-1)) x B^(n-1-i(m-1))]` for `i = 1..(n-1)/(m-1)`.
pub fn normalizer_family(g: &NaryGroup, b: &ElemSet, m: usize) -> Result<ElemSet> {
    let n = g.arity();
    check_m(n, m)?;
    if b.is_empty() {
        return Err(Error::Preconditions("empty subset".into()));
    }
    let l = Lifted::new(g, b);
    let c = l.cover;
    let steps = (n - 1) / (m - 1);
    let set = ElemSet::from_elements(
        g.size(),
        g.elements().filter(|&x| {
            let t = c.theta(x);
            let left = l.left(t, n - 1);
            (1..=steps).all(|i| {
                let j = i * (m - 1);
                c.mul_sets(&l.right(j, t), l.pow(n - 1 - j)) == left
            })
        }),
    );
    if is_subgroup(g, b) && (!b.is_subset(&set) || !is_subgroup(g, &set)) {
        return Err(Error::InvalidGroup("seminormalizer is not a subgroup containing B".to_string()));
    }
    Ok(set)
}

/// Cross-checks of the seminormalizer `HN_A(B)` against the retract and
/// the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerChecks {
    pub seminormalizer: ElemSet,
    /// Equal to the normalizer of `[a B^(n-1)]` in the retract at each
    /// `a ∈ HN_A(B)`.
    pub retract_agrees: bool,
    /// `(HN_A(B))_0 = N_(A0)(B_0)`.
    pub correspondent_agrees: bool,
    /// `(N_A(B))* = N_(A*)(B*)`.
    pub cover_agrees: bool,
}

pub fn normalizer_checks(g: &NaryGroup, b: &ElemSet) -> Result<NormalizerChecks> {
    if !is_subgroup(g, b) {
        return Err(Error::NotSubgroup);
    }
    let n = g.arity();
    let hn = normalizer_family(g, b, n)?;
    let nb = normalizer_family(g, b, 2)?;
    let l = Lifted::new(g, b);
    let c = l.cover;
    let mut retract_agrees = true;
    for a in hn.iter() {
        let r = Retract::new(g, a)?;
        let ab = c.pull_back(&l.left(c.theta(a), n - 1));
        if r.table().normalizer(&ab) != hn {
            retract_agrees = false;
        }
    }
    let a0 = c.correspondent_group();
    let hn0 = c.embed_subgroup(&hn).zero;
    let b0 = c.embed_subgroup(b).zero;
    let correspondent_agrees = hn0 == c.normalizer_in(&b0, &a0);
    let everything = ElemSet::full(c.order());
    let cover_agrees = c.embed_subgroup(&nb).star == c.normalizer_in(&c.embed_subgroup(b).star, &everything);
    Ok(NormalizerChecks { seminormalizer: hn, retract_agrees, correspondent_agrees, cover_agrees })
}

/// The commutativity-type predicates of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianness {
    pub abelian: bool,
    pub semiabelian: bool,
    /// `(m, verdict)` for every admissible `m`.
    pub m_semiabelian: Vec<(usize, bool)>,
    pub weakly_semiabelian: bool,
    pub weakly_m: Vec<(usize, bool)>,
    pub t_semiabelian: Vec<(usize, bool)>,
    pub commutative: bool,
    /// Whether the medial identity was checked on every matrix.
    pub commutative_exhaustive: bool,
}

/// Invariance of the operation under swapping adjacent arguments.
pub fn is_abelian(g: &NaryGroup) -> bool {
    let c = g.cover();
    let thetas: Vec<usize> = g.elements().map(|a| c.theta(a)).collect();
    g.arity() < 2 || thetas.iter().all(|&p| thetas.iter().all(|&q| c.mul(p, q) == c.mul(q, p)))
}

/// `[a c^(n-2) b] = [b c^(n-2) a]` with `c` the first element, which
/// suffices.
pub fn is_semiabelian(g: &NaryGroup) -> bool {
    let n = g.arity();
    let c = ElementId(0);
    let mut w1 = alloc::vec![c; n];
    let mut w2 = alloc::vec![c; n];
    g.elements().all(|a| {
        g.elements().all(|b| {
            w1[0] = a;
            w1[n - 1] = b;
            w2[0] = b;
            w2[n - 1] = a;
            g.op(&w1) == g.op(&w2)
        })
    })
}

const MEDIAL_SAMPLES: u64 = 20_000;

/// The medial identity on `n × n` matrices: applying the operation to the
/// rows and then to the results equals doing the same with the columns.
/// Returns the verdict and whether it was exhaustive.
pub fn is_commutative(g: &NaryGroup, limits: &Limits) -> (bool, bool) {
    let (k, n) = (g.size(), g.arity());
    let mut m = alloc::vec![ElementId(0); n * n];
    let medial = |m: &[ElementId]| {
        let rows: Vec<ElementId> = (0..n).map(|i| g.op(&m[i * n..(i + 1) * n])).collect();
        let cols: Vec<ElementId> = (0..n).map(|j| g.op(&(0..n).map(|i| m[i * n + j]).collect::<Vec<_>>())).collect();
        g.op(&rows) == g.op(&cols)
    };
    if limits.check(pow_u128(k, n * n)).is_ok() {
        loop {
            if !medial(&m) {
                return (false, true);
            }
            if !odometer(&mut m, k) {
                return (true, true);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d65_6469_616c);
    for _ in 0..MEDIAL_SAMPLES {
        for x in m.iter_mut() {
            *x = ElementId::new((rng.next_u64() % k as u64) as usize);
        }
        if !medial(&m) {
            return (false, false);
        }
    }
    (true, false)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every `m` with `(m-1) | (n-1)`, ascending.
pub fn admissible_m(n: usize) -> Vec<usize> {
    (2..=n).filter(|m| (n - 1).is_multiple_of(m - 1)).collect()
}

pub fn abelianness(g: &NaryGroup, limits: &Limits) -> Result<Abelianness> {
    let n = g.arity();
    let full = g.full_set();
    let everywhere = |kind: CenterKind, m: usize| -> Result<bool> { Ok(center_family(g, &kind, m, None)? == full) };
    let mut m_semiabelian = Vec::new();
    let mut weakly_m = Vec::new();
    let mut t_semiabelian = Vec::new();
    for m in admissible_m(n) {
        m_semiabelian.push((m, everywhere(CenterKind::Standard, m)?));
        weakly_m.push((m, everywhere(CenterKind::Weak, m)?));
        t_semiabelian.push((m, everywhere(CenterKind::TypeT, m)?));
    }
    let abelian = is_abelian(g);
    let semiabelian = is_semiabelian(g);
    let (commutative, commutative_exhaustive) = is_commutative(g, limits);
    let report = Abelianness {
        abelian,
        semiabelian,
        weakly_semiabelian: weakly_m.last().map(|p| p.1).unwrap_or(true),
        m_semiabelian,
        weakly_m,
        t_semiabelian,
        commutative,
        commutative_exhaustive,
    };
    let fail = |what: &str| Err(Error::InvalidGroup(what.to_string()));
    if report.semiabelian != report.commutative {
        return fail("semiabelian differs from commutative");
    }
    if report.m_semiabelian.last().map(|p| p.1) != Some(report.semiabelian) {
        return fail("semicenter test differs from semiabelian");
    }
    if report.m_semiabelian[0].1 != abelian || report.weakly_m[0].1 != abelian {
        return fail("2-semiabelian differs from abelian");
    }
    if Retract::new(g, ElementId(0))?.table().is_abelian() != report.semiabelian {
        return fail("retract commutativity differs from semiabelian");
    }
    for &(m, vm) in &report.weakly_m {
        for &(k, vk) in &report.weakly_m {
            let t = gcd(m - 1, k - 1) + 1;
            let vt = report.weakly_m.iter().find(|p| p.0 == t).map(|p| p.1);
            if vm && vk && vt != Some(true) {
                return fail("weak semiabelian gcd law failed");
            }
        }
    }
    Ok(report)
}

/// Checks the intersection laws `X(B, r) = X(B, m) ∩ X(B, k)` with
/// `r - 1 = gcd(m-1, k-1)` for the weak and type T semicentralizers and
/// the seminormalizers, over all admissible pairs. Returns the number of
/// pairs checked.
pub fn gcd_laws(g: &NaryGroup, b: &ElemSet) -> Result<usize> {
    let ms = admissible_m(g.arity());
    let weak: Vec<ElemSet> =
        ms.iter().map(|&m| center_family(g, &CenterKind::Weak, m, Some(b))).collect::<Result<_>>()?;
    let tt: Vec<ElemSet> =
        ms.iter().map(|&m| center_family(g, &CenterKind::TypeT, m, Some(b))).collect::<Result<_>>()?;
    let norm: Vec<ElemSet> = ms.iter().map(|&m| normalizer_family(g, b, m)).collect::<Result<_>>()?;
    let at = |m: usize| ms.iter().position(|&x| x == m).expect("admissible");
    let mut pairs = 0;
    for &m in &ms {
        for &k in &ms {
            let r = at(gcd(m - 1, k - 1) + 1);
            let (i, j) = (at(m), at(k));
            for (name, fam) in [("weak", &weak), ("type T", &tt), ("normalizer", &norm)] {
                if fam[r] != fam[i].intersection(&fam[j]) {
                    return Err(Error::InvalidGroup(alloc::format!("{name} gcd law failed for m={m}, k={k}")));
                }
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// The semi-invariant `p`-Sylow subgroups of an idempotent group with
/// `n-1` prime: they are pairwise disjoint and cover the carrier.
pub fn idempotent_sylow_partition(g: &NaryGroup, p: usize) -> Result<Vec<SubgroupSet>> {
    let n = g.arity();
    let is_prime = |q: usize| q >= 2 && factorize(q) == [(q, 1)];
    if idempotents(g).len() != g.size() || !is_prime(n - 1) || !is_prime(p) {
        return Err(Error::Preconditions("needs an idempotent group, n-1 prime and p prime".into()));
    }
    let pk: usize = factorize(g.size()).iter().filter(|f| f.0 == p).map(|f| p.pow(f.1)).product();
    let mut parts = Vec::new();
    for s in all_subgroups(g)? {
        if s.len() == pk && check_normality(g, &s.members, &NormalityKind::SemiInvariant)? {
            parts.push(s);
        }
    }
    let mut seen = ElemSet::empty(g.size());
    for s in &parts {
        if !s.members.is_disjoint(&seen) {
            return Err(Error::InvalidGroup("Sylow subgroups overlap".to_string()));
        }
        seen = seen.union(&s.members);
    }
    if parts.len() != g.size() / pk || seen.len() != g.size() {
        return Err(Error::InvalidGroup("Sylow subgroups do not partition the carrier".to_string()));
    }
    Ok(parts)
}

/// The a-direct decomposition of an idempotent group into its Sylow
/// subgroups through `a`, one per prime divisor.
pub fn idempotent_sylow_decomposition(g: &NaryGroup, a: ElementId) -> Result<Vec<SubgroupSet>> {
    let mut parts = Vec::new();
    for (p, _) in factorize(g.size()) {
        let through: Vec<SubgroupSet> =
            idempotent_sylow_partition(g, p)?.into_iter().filter(|s| s.contains(a)).collect();
        if through.len() != 1 {
            return Err(Error::InvalidGroup("no unique Sylow subgroup through the anchor".to_string()));
        }
        parts.extend(through);
    }
    if parts.is_empty() {
        parts.push(SubgroupSet::whole(g));
    }
    if !a_direct_decomposition(g, a, &parts)? {
        return Err(Error::InvalidGroup("Sylow subgroups do not form an a-direct product".to_string()));
    }
    Ok(parts)
}

/// For `|E(A)| = km` with `gcd(k, m) = 1`: the `m` subgroups of order `k`
/// inside `E(A)`, checked to partition it.
pub fn units_partition(g: &NaryGroup, k: usize) -> Result<Vec<ElemSet>> {
    let e = units(g)?;
    if e.is_empty() || k == 0 || e.len() % k != 0 || gcd(k, e.len() / k) != 1 {
        return Err(Error::Preconditions("order of E(A) must be k m with gcd(k, m) = 1".into()));
    }
    let parts: Vec<ElemSet> =
        all_subgroups(g)?.into_iter().map(|s| s.members).filter(|s| s.len() == k && s.is_subset(&e)).collect();
    let mut seen = ElemSet::empty(g.size());
    for s in &parts {
        if !s.is_disjoint(&seen) {
            return Err(Error::InvalidGroup("unit subgroups overlap".to_string()));
        }
        seen = seen.union(s);
    }
    if seen != e || parts.len() != e.len() / k {
        return Err(Error::InvalidGroup("unit subgroups do not partition E(A)".to_string()));
    }
    Ok(parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Solvability {
    pub semisolvable: bool,
    pub seminilpotent: bool,
    pub derived_length: usize,
}

/// Solvability and nilpotency of the retract at the first element,
/// compared with a second anchor when there is one.
pub fn classify_solvability(g: &NaryGroup) -> Result<Solvability> {
    let r = Retract::new(g, ElementId(0))?;
    let t = r.table();
    let series = t.derived_series();
    let out = Solvability {
        semisolvable: t.is_solvable(),
        seminilpotent: t.is_nilpotent(),
        derived_length: series.len() - 1,
    };
    if g.size() > 1 {
        let other = Retract::new(g, ElementId(1))?;
        if other.table().is_solvable() != out.semisolvable || other.table().is_nilpotent() != out.seminilpotent {
            return Err(Error::InvalidGroup("retracts at different anchors disagree".to_string()));
        }
    }
    Ok(out)
}

/// All automorphisms of a small n-ary group, by brute force over
/// permutations of the carrier.
pub fn nary_automorphisms(g: &NaryGroup, limits: &Limits) -> Result<Vec<PermutationMap>> {
    let k = g.size();
    let n = g.arity();
    let fact: u128 = (1..=k as u128).product();
    limits.check(fact.saturating_mul(pow_u128(k, n)))?;
    let mut out = Vec::new();
    for p in crate::binary::lex_permutations(k) {
        let f = PermutationMap::new(p)?;
        let mut t = alloc::vec![ElementId(0); n];
        let mut image = t.clone();
        let mut ok = true;
        loop {
            for (y, x) in image.iter_mut().zip(&t) {
                *y = f.apply(*x);
            }
            if f.apply(g.op(&t)) != g.op(&image) {
                ok = false;
                break;
            }
            if !odometer(&mut t, k) {
                break;
            }
        }
        if ok {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::BinaryGroupTable;
    use crate::constructions::{derived, direct_product, idempotent_from_splitting, named_example};
    use crate::element::ids;

    #[test]
    fn powers_and_orders() {
        let g = named_example("Zg_cyclic(5,3)").unwrap();
        assert_eq!(nadic_power(&g, ElementId(0), 2), ElementId(2));
        let h = named_example("Zg_cyclic(6,3)").unwrap();
        assert_eq!(nadic_order(&h, ElementId(1)), 2);
        for name in ["T3", "Rusakov5", "B3_5ary", "derived(S3,4)"] {
            let g = named_example(name).unwrap();
            for a in g.elements() {
                assert_eq!(nadic_power(&g, a, -1), g.skew(a));
                let m = nadic_order(&g, a) as i64;
                for s in 0..3 * m {
                    assert_eq!(nadic_power(&g, a, s) == a, s % m == 0);
                }
            }
        }
        let v = named_example("V6").unwrap();
        assert!(profile(&v).iter().all(|&m| m == 1));
    }

    #[test]
    fn cyclic_kinds() {
        assert_eq!(classify_cyclic(&named_example("T3").unwrap()).unwrap(), CyclicKind::Semicyclic);
        assert_eq!(classify_cyclic(&named_example("Vn(7)").unwrap()).unwrap(), CyclicKind::Semicyclic);
        let z = named_example("Zg_cyclic(7,4)").unwrap();
        match classify_cyclic(&z).unwrap() {
            CyclicKind::Cyclic { generators } => assert!(generators.contains(&ElementId(0))),
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_cyclic(&named_example("derived(S3,3)").unwrap()).unwrap(), CyclicKind::Neither);
    }

    #[test]
    fn idempotents_and_units() {
        let s3 = named_example("derived(S3,3)").unwrap();
        assert_eq!(idempotents(&s3).len(), 4);
        assert_eq!(units(&s3).unwrap().len(), 1);
        for m in 3..=8 {
            let d = derived(&BinaryGroupTable::dihedral(m), ElementId(0), 3).unwrap();
            assert_eq!(idempotents(&d).len(), if m % 2 == 1 { m + 1 } else { m + 2 });
        }
        let z6 = named_example("derived(Z6,4)").unwrap();
        assert_eq!(units(&z6).unwrap(), ElemSet::from_indices(6, &[0, 2, 4]));
        let r = named_example("Rusakov5").unwrap();
        assert!(idempotents(&r).is_empty());
        assert!(units(&r).unwrap().is_empty());
    }

    #[test]
    fn derived_shortcuts() {
        for (base, n) in [
            (BinaryGroupTable::symmetric(3), 3),
            (BinaryGroupTable::quaternion(), 5),
            (BinaryGroupTable::dihedral(4), 3),
        ] {
            let g = derived(&base, base.identity(), n).unwrap();
            let i =
                ElemSet::from_elements(base.size(), base.elements().filter(|&b| base.pow(b, n - 1) == base.identity()));
            assert_eq!(idempotents(&g), i);
            let e = ElemSet::from_elements(
                base.size(),
                base.center().iter().filter(|&z| base.pow(z, n - 1) == base.identity()),
            );
            assert_eq!(units(&g).unwrap(), e);
        }
    }

    #[test]
    fn centers() {
        let z = named_example("Zg_cyclic(6,3)").unwrap();
        assert_eq!(center(&z).unwrap(), z.full_set());
        let r = named_example("Rusakov5").unwrap();
        assert_eq!(center_family(&r, &CenterKind::Weak, 5, None).unwrap(), r.full_set());
        assert_ne!(semicenter(&r).unwrap(), r.full_set());
        let s3 = named_example("derived(S3,3)").unwrap();
        assert!(!semicenter(&s3).unwrap().contains(ElementId(0)));
        let g = named_example("derived(S3,5)").unwrap();
        assert!(matches!(center_family(&g, &CenterKind::Standard, 4, None), Err(Error::BadM { .. })));
    }

    #[test]
    fn sigma_center_specializations() {
        for name in ["derived(S3,4)", "Rusakov5", "T3"] {
            let g = named_example(name).unwrap();
            for m in admissible_m(g.arity()) {
                let id = CenterKind::Sigma(alloc::vec![PermutationMap::identity(m - 1)]);
                assert_eq!(
                    center_family(&g, &id, m, None).unwrap(),
                    center_family(&g, &CenterKind::TypeT, m, None).unwrap()
                );
            }
        }
    }

    #[test]
    fn normalizers() {
        let v = named_example("Vn(7)").unwrap();
        for s in all_subgroups(&v).unwrap() {
            if s.len() < 7 {
                assert_eq!(normalizer_family(&v, &s.members, 2).unwrap(), s.members);
            }
        }
        for name in ["V6", "derived(S3,3)", "derived(S3,5)", "Rusakov5", "T3"] {
            let g = named_example(name).unwrap();
            for s in all_subgroups(&g).unwrap() {
                let c = normalizer_checks(&g, &s.members).unwrap();
                assert!(c.retract_agrees && c.correspondent_agrees && c.cover_agrees, "{name} {:?}", s.members);
                gcd_laws(&g, &s.members).unwrap();
                if check_normality(&g, &s.members, &NormalityKind::Invariant).unwrap() {
                    assert_eq!(normalizer_family(&g, &s.members, 2).unwrap(), g.full_set());
                }
            }
        }
    }

    #[test]
    fn abelian_flags() {
        let lim = Limits::default();
        let v = abelianness(&named_example("Vn(5)").unwrap(), &lim).unwrap();
        assert!(v.semiabelian && !v.abelian);
        let r = abelianness(&named_example("Rusakov5").unwrap(), &lim).unwrap();
        assert!(r.weakly_semiabelian && !r.semiabelian);
        let z = abelianness(&named_example("Zg_cyclic(5,3)").unwrap(), &lim).unwrap();
        assert!(z.abelian && z.commutative_exhaustive);
    }

    #[test]
    fn sylow_partition_of_splitting_group() {
        let z6 = BinaryGroupTable::cyclic(6);
        let neg = PermutationMap::from_fn(6, |x| (6 - x) % 6).unwrap();
        let g = idempotent_from_splitting(&z6, &neg, 3).unwrap();
        let parts = idempotent_sylow_partition(&g, 2).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.len() == 2));
        for a in g.elements() {
            let d = idempotent_sylow_decomposition(&g, a).unwrap();
            assert_eq!(d.len(), 2);
        }
        let t3 = named_example("T3").unwrap();
        let tt = direct_product(&[&t3, &t3]).unwrap();
        assert_eq!(idempotent_sylow_partition(&tt, 3).unwrap().len(), 1);
    }

    #[test]
    fn solvability() {
        let t3 = classify_solvability(&named_example("T3").unwrap()).unwrap();
        assert!(t3.semisolvable && t3.seminilpotent);
        let s = classify_solvability(&named_example("derived(S3,3)").unwrap()).unwrap();
        assert!(s.semisolvable && !s.seminilpotent);
    }

    #[test]
    fn units_are_characteristic() {
        let lim = Limits::default();
        for name in ["derived(Z6,4)", "derived(Z4,3)", "derived(S3,3)", "T3"] {
            let g = named_example(name).unwrap();
            let e = units(&g).unwrap();
            if e.is_empty() {
                continue;
            }
            assert!(e.is_subset(&center(&g).unwrap()));
            for f in nary_automorphisms(&g, &lim).unwrap() {
                assert!(e.iter().all(|x| e.contains(f.apply(x))));
            }
        }
        let _ = ids(&[0]);
    }
}
