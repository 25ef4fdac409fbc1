//! The binary retract `x ⓐ y = [x α y]` of an n-ary group at an anchor
//! `a`, where `α` is the inverse sequence of `a`, together with the
//! automorphism `β`, the element `d = [a^n]` and the reconstruction of the
//! n-ary operation from them.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::binary::{BinaryGroupTable, PermutationMap};
use crate::element::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::group::NaryGroup;
use crate::groupoid::{odometer, pow_u128, Limits};
use crate::subgroups::{all_subgroups, SubgroupSet};

#[derive(Clone, Debug)]
pub struct Retract {
    source: NaryGroup,
    anchor: ElementId,
    inverse: Vec<ElementId>,
    table: BinaryGroupTable,
    beta: PermutationMap,
    alpha: PermutationMap,
    d: ElementId,
}

/// Shorthand for [`Retract::new`].
pub fn retract_at(g: &NaryGroup, a: ElementId) -> Result<Retract> {
    Retract::new(g, a)
}

impl Retract {
    pub fn new(g: &NaryGroup, a: ElementId) -> Result<Self> {
        let k = g.size();
        if a.index() >= k {
            return Err(Error::ElementOutOfRange { index: a.index(), size: k });
        }
        let inverse = g.inverse_of(a);
        let mut word = Vec::with_capacity(inverse.len() + 2);
        let mut mul = Vec::with_capacity(k * k);
        for x in g.elements() {
            for y in g.elements() {
                word.clear();
                word.push(x);
                word.extend_from_slice(&inverse);
                word.push(y);
                mul.push(g.ev(&word).0);
            }
        }
        let conj = |left: &[ElementId], right: &[ElementId]| {
            PermutationMap::from_fn(k, |x| {
                let mut w = left.to_vec();
                w.push(ElementId::new(x));
                w.extend_from_slice(right);
                g.ev(&w).index()
            })
        };
        let beta = conj(&[a], &inverse)?;
        let alpha = conj(&inverse, &[a])?;
        let labels = g.groupoid().labels().to_vec();
        let table = BinaryGroupTable::from_table(k, mul, Some(labels))?;
        if table.identity() != a {
            return Err(Error::InvalidGroup("retract identity differs from the anchor".to_string()));
        }
        let r = Retract { source: g.clone(), anchor: a, inverse, table, beta, alpha, d: g.power_n(a) };
        r.check_structure()?;
        Ok(r)
    }

    fn check_structure(&self) -> Result<()> {
        if !self.alpha.then(&self.beta).is_identity() {
            return Err(Error::InvalidGroup("alpha is not the inverse of beta".to_string()));
        }
        if let Some((x, y)) = self.table.automorphism_violation(&self.beta) {
            return Err(Error::NotAutomorphism { x, y });
        }
        if self.beta.apply(self.d) != self.d {
            return Err(Error::FixedPointViolation);
        }
        let top = self.beta.pow(self.source.arity() - 1);
        for x in self.source.elements() {
            if self.op(self.d, x) != self.op(top.apply(x), self.d) {
                return Err(Error::TwistViolation(x));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &NaryGroup {
        &self.source
    }

    pub fn anchor(&self) -> ElementId {
        self.anchor
    }

    /// The inverse sequence used for the anchor.
    pub fn inverse_sequence(&self) -> &[ElementId] {
        &self.inverse
    }

    pub fn table(&self) -> &BinaryGroupTable {
        &self.table
    }

    pub fn beta(&self) -> &PermutationMap {
        &self.beta
    }

    /// The inverse of `β`: `x ↦ [α x a]`.
    pub fn alpha(&self) -> &PermutationMap {
        &self.alpha
    }

    pub fn d(&self) -> ElementId {
        self.d
    }

    #[inline]
    pub fn op(&self, x: ElementId, y: ElementId) -> ElementId {
        self.table.op(x, y)
    }

    /// Evaluates one of the `n + 1` reconstruction formulas: `d` sits after
    /// the first `i` letters, letters before it are moved by powers of `β`
    /// and letters after it by powers of `α`.
    pub fn reconstruct(&self, xs: &[ElementId], i: usize) -> ElementId {
        let n = xs.len();
        let mut acc = self.anchor;
        for (j, &x) in xs.iter().enumerate() {
            let j = j + 1;
            if j == i + 1 {
                acc = self.op(acc, self.d);
            }
            let y = if j <= i { self.beta.pow(j - 1).apply(x) } else { self.alpha.pow(n - j).apply(x) };
            acc = self.op(acc, y);
        }
        if i == n {
            acc = self.op(acc, self.d);
        }
        acc
    }

    /// Checks every reconstruction formula on every n-tuple, and the twist
    /// identities `d ⓐ x^(α^(n-1-k)) = x^(β^k) ⓐ d`.
    pub fn verify_hossu(&self, limits: &Limits) -> Result<HossuReport> {
        let g = &self.source;
        let (k, n) = (g.size(), g.arity());
        limits.check(pow_u128(k, n).saturating_mul((n * (n + 1)) as u128))?;
        let betas: Vec<PermutationMap> = (0..n).map(|e| self.beta.pow(e)).collect();
        let alphas: Vec<PermutationMap> = (0..n).map(|e| self.alpha.pow(e)).collect();
        for kk in 0..n {
            for x in g.elements() {
                let left = self.op(self.d, alphas[n - 1 - kk].apply(x));
                if left != self.op(betas[kk].apply(x), self.d) {
                    return Err(Error::HossuViolation { tuple: alloc::vec![x], variant: n + 1 + kk });
                }
            }
        }
        let mut t = alloc::vec![ElementId(0); n];
        let mut tuples = 0u64;
        loop {
            let want = g.op(&t);
            for i in 0..=n {
                // Inline form of `reconstruct` with cached powers.
                let mut acc = self.anchor;
                for (j0, &x) in t.iter().enumerate() {
                    let j = j0 + 1;
                    if j == i + 1 {
                        acc = self.op(acc, self.d);
                    }
                    let y = if j <= i { betas[j - 1].apply(x) } else { alphas[n - j].apply(x) };
                    acc = self.op(acc, y);
                }
                if i == n {
                    acc = self.op(acc, self.d);
                }
                if acc != want {
                    return Err(Error::HossuViolation { tuple: t.clone(), variant: i });
                }
            }
            tuples += 1;
            if !odometer(&mut t, k) {
                break;
            }
        }
        Ok(HossuReport { tuples, variants: n + 1 })
    }

    /// The retract subgroups `V` with `[x^(n-1) a] ∈ V` and
    /// `V ⓐ x = x ⓐ V^β`.
    pub fn admissible_subgroups(&self, x: ElementId) -> Vec<ElemSet> {
        let g = &self.source;
        let mut w = alloc::vec![x; g.arity() - 1];
        w.push(self.anchor);
        let marker = g.ev(&w);
        self.table
            .all_subgroups()
            .into_iter()
            .filter(|v| v.contains(marker))
            .filter(|v| self.right_translate(v, x) == self.left_translate(x, &self.image(v, &self.beta)))
            .collect()
    }

    fn image(&self, v: &ElemSet, f: &PermutationMap) -> ElemSet {
        ElemSet::from_elements(v.universe(), v.iter().map(|y| f.apply(y)))
    }

    fn right_translate(&self, v: &ElemSet, x: ElementId) -> ElemSet {
        ElemSet::from_elements(v.universe(), v.iter().map(|y| self.op(y, x)))
    }

    fn left_translate(&self, x: ElementId, v: &ElemSet) -> ElemSet {
        ElemSet::from_elements(v.universe(), v.iter().map(|y| self.op(x, y)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HossuReport {
    pub tuples: u64,
    pub variants: usize,
}

/// The map `x ↦ [c α x]` from the retract at `a` to the retract at `c`,
/// checked to be an isomorphism.
pub fn retract_isomorphism_witness(g: &NaryGroup, a: ElementId, c: ElementId) -> Result<PermutationMap> {
    let ra = Retract::new(g, a)?;
    let rc = Retract::new(g, c)?;
    let map = PermutationMap::from_fn(g.size(), |x| {
        let mut w = alloc::vec![c];
        w.extend_from_slice(ra.inverse_sequence());
        w.push(ElementId::new(x));
        g.ev(&w).index()
    })?;
    for x in g.elements() {
        for y in g.elements() {
            if map.apply(ra.op(x, y)) != rc.op(map.apply(x), map.apply(y)) {
                return Err(Error::NotAutomorphism { x, y });
            }
        }
    }
    Ok(map)
}

/// The isomorphism from the retract at `a` onto the correspondent group
/// `A₀` of the Post cover: `x ↦ θ(x α)`. Images are cover indices.
pub fn cover_isomorphism(g: &NaryGroup, a: ElementId) -> Result<Vec<usize>> {
    let r = Retract::new(g, a)?;
    let cover = g.cover();
    let map: Vec<usize> = g
        .elements()
        .map(|x| {
            let mut w = alloc::vec![x];
            w.extend_from_slice(r.inverse_sequence());
            cover.class_of(&w)
        })
        .collect();
    let a0 = cover.grade(g.arity() - 1);
    let mut image = ElemSet::empty(cover.order());
    for &p in &map {
        if !a0.contains(ElementId::new(p)) || !image.insert(ElementId::new(p)) {
            return Err(Error::InvalidGroup("map into A0 is not a bijection".to_string()));
        }
    }
    for x in g.elements() {
        for y in g.elements() {
            if map[r.op(x, y).index()] != cover.mul(map[x.index()], map[y.index()]) {
                return Err(Error::NotAutomorphism { x, y });
            }
        }
    }
    Ok(map)
}

/// The pairing between retract subgroups `V` satisfying the admissibility
/// conditions at `x` and n-ary subgroups `H` containing `x`, via
/// `H = V ⓐ x`.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub anchor: ElementId,
    pub point: ElementId,
    pub pairs: Vec<(ElemSet, SubgroupSet)>,
}

/// The correspondence at the point `x = a`: n-ary subgroups containing
/// `a` are exactly the retract subgroups containing `d` and fixed by `β`.
pub fn subgroup_correspondence(g: &NaryGroup, a: ElementId) -> Result<Correspondence> {
    subgroup_correspondence_at(g, a, a)
}

pub fn subgroup_correspondence_at(g: &NaryGroup, a: ElementId, x: ElementId) -> Result<Correspondence> {
    let r = Retract::new(g, a)?;
    let mut nary: Vec<SubgroupSet> = all_subgroups(g)?.into_iter().filter(|h| h.members.contains(x)).collect();
    let mut pairs = Vec::new();
    for v in r.admissible_subgroups(x) {
        let h = r.right_translate(&v, x);
        let pos = nary
            .iter()
            .position(|s| s.members == h)
            .ok_or_else(|| Error::InvalidGroup("retract subgroup has no n-ary partner".to_string()))?;
        pairs.push((v, nary.swap_remove(pos)));
    }
    if !nary.is_empty() {
        return Err(Error::InvalidGroup("n-ary subgroup has no retract partner".to_string()));
    }
    pairs.sort_by(|p, q| p.1.members.cmp(&q.1.members));
    Ok(Correspondence { anchor: a, point: x, pairs })
}
