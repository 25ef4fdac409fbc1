//! The Post covering group `A*` of an n-ary group.
//!
//! Elements are equivalence classes of nonempty words, stored as
//! `(value, residue)` pairs with `residue` in `1..=n-1`; the pair
//! `(v, i)` has index `(i-1)*k + v`. Words are compared by padding them
//! with the base element 0 up to length `n` (or `1 mod (n-1)`).
//!
//! Products of subsets of `A` are computed here too: a product
//! `[X1 ... Xm]` is the residue-1 part of `X1* X2* ... Xm*`, which turns
//! an exponential tuple scan into a handful of set multiplications.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::binary::BinaryGroupTable;
use crate::element::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::group::{CanonicalClass, NaryGroup, Word};

/// A class `(value, residue)` of the covering group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverElement {
    pub value: ElementId,
    pub residue: usize,
}

/// The covering group with its multiplication table.
#[derive(Clone, Debug)]
pub struct PostCover {
    k: usize,
    n: usize,
    base: ElementId,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    /// `theta[a]` is the index of the class of the one-letter word `a`.
    theta: Vec<u32>,
    /// Inverse of `theta` on residue 1.
    theta_inv: Vec<u32>,
}

/// A subgroup `B` of `A` together with its images in the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSubgroup {
    pub subgroup: ElemSet,
    /// Classes of all words over `B`.
    pub star: ElemSet,
    /// `star` intersected with the correspondent group `A0`.
    pub zero: ElemSet,
}

/// Indices of `B` at the three levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub nary_index: usize,
    pub zero_index: usize,
    pub star_index: usize,
}

impl PostCover {
    /// Builds the full table. Cost is `(k(n-1))^2` evaluations of words of
    /// length at most `3(n-1)`.
    pub fn build(g: &NaryGroup) -> Self {
        let k = g.size();
        let n = g.arity();
        let m = n - 1;
        let base = ElementId(0);
        let order = k * m;
        // rep[v] solves [x b^(n-1)] = v.
        let mut rep = vec![ElementId(0); k];
        let mut word = vec![base; n];
        for x in g.elements() {
            word[0] = x;
            rep[g.op(&word).index()] = x;
        }
        let mut table = Vec::with_capacity(order * order);
        let mut w: Vec<ElementId> = Vec::with_capacity(3 * n);
        for p in 0..order {
            let (v1, i1) = (p % k, p / k + 1);
            for q in 0..order {
                let (v2, i2) = (q % k, q / k + 1);
                w.clear();
                w.push(rep[v1]);
                w.extend(std::iter::repeat_n(base, i1 - 1));
                w.push(rep[v2]);
                w.extend(std::iter::repeat_n(base, i2 - 1));
                let r = (w.len() - 1) % m + 1;
                w.extend(std::iter::repeat_n(base, n - r));
                let v = g.ev(&w);
                table.push(((r - 1) * k + v.index()) as u32);
            }
        }
        let identity = (m - 1) * k + base.index();
        let inv = (0..order)
            .map(|p| (0..order).find(|&q| table[p * order + q] as usize == identity).expect("group") as u32)
            .collect();
        let mut theta = vec![0u32; k];
        let mut theta_inv = vec![u32::MAX; order];
        for a in g.elements() {
            word[0] = a;
            let v = g.op(&word);
            theta[a.index()] = v.0;
            theta_inv[v.index()] = a.0;
        }
        PostCover { k, n, base, order, table, inv, identity, theta, theta_inv }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn source_size(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> ElementId {
        self.base
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, p: usize, q: usize) -> usize {
        self.table[p * self.order + q] as usize
    }

    #[inline]
    pub fn inv(&self, p: usize) -> usize {
        self.inv[p] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn element(&self, p: usize) -> CoverElement {
        CoverElement { value: ElementId::new(p % self.k), residue: p / self.k + 1 }
    }

    pub fn index_of(&self, e: CoverElement) -> usize {
        (e.residue - 1) * self.k + e.value.index()
    }

    pub fn residue(&self, p: usize) -> usize {
        p / self.k + 1
    }

    /// The class of the one-letter word `a`.
    #[inline]
    pub fn theta(&self, a: ElementId) -> usize {
        self.theta[a.index()] as usize
    }

    /// The element whose class is `p`, when `p` has residue 1.
    pub fn theta_inverse(&self, p: usize) -> Option<ElementId> {
        let x = self.theta_inv[p];
        (x != u32::MAX).then_some(ElementId(x))
    }

    /// The class of a nonempty word.
    pub fn class_of(&self, w: &[ElementId]) -> usize {
        w.iter().skip(1).fold(self.theta(w[0]), |acc, &a| self.mul(acc, self.theta(a)))
    }

    pub fn canonical(&self, p: usize) -> CanonicalClass {
        let e = self.element(p);
        CanonicalClass { residue: e.residue, value: e.value, base: self.base }
    }

    /// Verifies the group axioms on the table. Cubic in the order.
    pub fn is_group(&self) -> bool {
        let o = self.order;
        for a in 0..o {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return false;
            }
            for b in 0..o {
                let ab = self.mul(a, b);
                for c in 0..o {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The table as a binary group.
    pub fn as_binary(&self) -> BinaryGroupTable {
        let labels = (0..self.order)
            .map(|p| {
                let e = self.element(p);
                alloc::format!("{}@{}", e.value.0, e.residue)
            })
            .collect();
        BinaryGroupTable::from_table_trusted(self.order, self.table.clone(), labels)
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::empty(self.order)
    }

    /// Classes of residue `i`.
    pub fn grade(&self, i: usize) -> ElemSet {
        ElemSet::from_elements(self.order, ((i - 1) * self.k..i * self.k).map(ElementId::new))
    }

    /// The correspondent group `A0`: classes of residue `n-1`.
    pub fn correspondent_group(&self) -> ElemSet {
        self.grade(self.n - 1)
    }

    /// `A0` as a standalone binary group.
    pub fn correspondent_binary(&self) -> BinaryGroupTable {
        self.as_binary().restrict(&self.correspondent_group())
    }

    /// `theta(X)` for `X` a subset of `A`.
    pub fn theta_set(&self, x: &ElemSet) -> ElemSet {
        ElemSet::from_elements(self.order, x.iter().map(|a| ElementId::new(self.theta(a))))
    }

    /// Residue-1 classes of a cover subset, pulled back to `A`.
    pub fn pull_back(&self, s: &ElemSet) -> ElemSet {
        ElemSet::from_elements(self.k, s.iter().filter_map(|p| self.theta_inverse(p.index())))
    }

    pub fn mul_sets(&self, x: &ElemSet, y: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for a in x.iter() {
            let row = a.index() * self.order;
            for b in y.iter() {
                out.insert(ElementId(self.table[row + b.index()]));
            }
        }
        out
    }

    pub fn left_mul(&self, p: usize, y: &ElemSet) -> ElemSet {
        ElemSet::from_elements(self.order, y.iter().map(|b| ElementId::new(self.mul(p, b.index()))))
    }

    pub fn right_mul(&self, x: &ElemSet, p: usize) -> ElemSet {
        ElemSet::from_elements(self.order, x.iter().map(|a| ElementId::new(self.mul(a.index(), p))))
    }

    /// `X^m` for a cover subset; `X^0` is the identity singleton.
    pub fn power_set(&self, x: &ElemSet, m: usize) -> ElemSet {
        let mut acc = ElemSet::singleton(self.order, ElementId::new(self.identity));
        for _ in 0..m {
            acc = self.mul_sets(&acc, x);
        }
        acc
    }

    /// Product of a sequence of cover subsets.
    pub fn product_of(&self, factors: &[ElemSet]) -> ElemSet {
        let mut acc = ElemSet::singleton(self.order, ElementId::new(self.identity));
        for f in factors {
            acc = self.mul_sets(&acc, f);
        }
        acc
    }

    /// `[X1 ... Xm]` for subsets of `A`, `m = 1 mod (n-1)`.
    pub fn nary_set_product(&self, factors: &[&ElemSet]) -> Result<ElemSet> {
        let m = self.n - 1;
        if factors.is_empty() || !(factors.len() - 1).is_multiple_of(m) {
            return Err(Error::Length { len: factors.len(), modulus: m });
        }
        let lifted: Vec<ElemSet> = factors.iter().map(|x| self.theta_set(x)).collect();
        Ok(self.pull_back(&self.product_of(&lifted)))
    }

    /// Closure of a nonempty subset under multiplication, which in a
    /// finite group is the subgroup it generates.
    pub fn closure(&self, gens: &ElemSet) -> ElemSet {
        let g: Vec<usize> = gens.iter().map(|e| e.index()).collect();
        let mut set = gens.clone();
        let mut queue: VecDeque<usize> = g.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &h in &g {
                let y = self.mul(x, h);
                if set.insert(ElementId::new(y)) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: &ElemSet) -> bool {
        !s.is_empty() && s.iter().all(|a| s.iter().all(|b| s.contains(ElementId::new(self.mul(a.index(), b.index())))))
    }

    /// Subgroup `B*` of classes of words over `B`, and `B0 = B* ∩ A0`.
    pub fn embed_subgroup(&self, b: &ElemSet) -> EmbeddedSubgroup {
        let star = self.closure(&self.theta_set(b));
        let zero = star.intersection(&self.correspondent_group());
        EmbeddedSubgroup { subgroup: b.clone(), star, zero }
    }

    /// `g S g^-1`.
    pub fn conjugate(&self, s: &ElemSet, g: usize) -> ElemSet {
        let gi = self.inv(g);
        ElemSet::from_elements(self.order, s.iter().map(|x| ElementId::new(self.mul(self.mul(g, x.index()), gi))))
    }

    /// `{g in within | gS = Sg}`.
    pub fn normalizer_in(&self, s: &ElemSet, within: &ElemSet) -> ElemSet {
        ElemSet::from_elements(
            self.order,
            within.iter().filter(|g| self.left_mul(g.index(), s) == self.right_mul(s, g.index())),
        )
    }

    /// Left cosets `gH` of a subgroup `H` of `G`, both cover subsets,
    /// listed in order of their least element.
    pub fn left_cosets(&self, h: &ElemSet, g: &ElemSet) -> Vec<ElemSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for x in g.iter() {
            if seen.contains(x) {
                continue;
            }
            let c = self.left_mul(x.index(), h);
            seen = seen.union(&c);
            out.push(c);
        }
        out
    }

    /// The index of `B` in `A`, `B0` in `A0` and `B*` in `A*`, with the
    /// coset bijections between levels checked explicitly.
    pub fn index_correspondence(&self, g: &NaryGroup, b: &ElemSet) -> Result<IndexReport> {
        let n = self.n;
        let emb = self.embed_subgroup(b);
        if self.pull_back(&emb.star.intersection(&self.grade(1))) != *b {
            return Err(Error::NotSubgroup);
        }
        let a0 = self.correspondent_group();
        let full = ElemSet::full(self.order);
        let star_cosets = self.left_cosets(&emb.star, &full);
        let zero_cosets = self.left_cosets(&emb.zero, &a0);
        let power = self.power_set(&self.theta_set(b), n - 1);
        // n-ary left cosets [x B^(n-1)].
        let mut nary: Vec<ElemSet> = Vec::new();
        let mut seen = ElemSet::empty(self.k);
        let mut reps = Vec::new();
        for x in g.elements() {
            if seen.contains(x) {
                continue;
            }
            let c = self.pull_back(&self.left_mul(self.theta(x), &power));
            seen = seen.union(&c);
            nary.push(c);
            reps.push(x);
        }
        // x B^(n-1) <-> theta(x) B* <-> theta(x b1 ... b(n-2)) B0, b_i in B.
        let fill = b.first().ok_or(Error::NotSubgroup)?;
        let mut star_hit = Vec::new();
        let mut zero_hit = Vec::new();
        for &x in &reps {
            let s = self.left_mul(self.theta(x), &emb.star);
            let mut w = vec![x];
            w.extend(std::iter::repeat_n(fill, n - 2));
            let z = self.left_mul(self.class_of(&w), &emb.zero);
            if !star_cosets.contains(&s) || !zero_cosets.contains(&z) {
                return Err(Error::Preconditions("coset correspondence is not well defined".into()));
            }
            star_hit.push(s);
            zero_hit.push(z);
        }
        star_hit.sort();
        star_hit.dedup();
        zero_hit.sort();
        zero_hit.dedup();
        if star_hit.len() != star_cosets.len() || zero_hit.len() != zero_cosets.len() {
            return Err(Error::Preconditions("coset correspondence is not bijective".into()));
        }
        let report =
            IndexReport { nary_index: nary.len(), zero_index: zero_cosets.len(), star_index: star_cosets.len() };
        if report.nary_index != report.zero_index || report.nary_index != report.star_index {
            return Err(Error::Preconditions("indices differ between levels".into()));
        }
        Ok(report)
    }

    /// For an invariant `B`, the explicit map
    /// `theta(x) B* -> theta(x b1 ... b(n-2)) B0` between the quotients
    /// `A*/B*` and `A0/B0`, checked to be an isomorphism. Returns the
    /// quotient order and the map as pairs of coset indices.
    pub fn quotient_isomorphism(&self, g: &NaryGroup, b: &ElemSet) -> Result<QuotientMap> {
        let n = self.n;
        let emb = self.embed_subgroup(b);
        let a0 = self.correspondent_group();
        let full = ElemSet::full(self.order);
        let is_normal = |h: &ElemSet, within: &ElemSet| within.iter().all(|x| self.conjugate(h, x.index()) == *h);
        if !is_normal(&emb.star, &full) || !is_normal(&emb.zero, &a0) {
            return Err(Error::NotInvariant);
        }
        let star_cosets = self.left_cosets(&emb.star, &full);
        let zero_cosets = self.left_cosets(&emb.zero, &a0);
        let fill = b.first().ok_or(Error::NotSubgroup)?;
        let coset_of =
            |cosets: &[ElemSet], p: usize| cosets.iter().position(|c| c.contains(ElementId::new(p))).unwrap();
        // Every star coset meets theta(A); pick the least such x.
        let mut map = vec![usize::MAX; star_cosets.len()];
        for x in g.elements() {
            let s = coset_of(&star_cosets, self.theta(x));
            if map[s] != usize::MAX {
                continue;
            }
            let mut w = vec![x];
            w.extend(std::iter::repeat_n(fill, n - 2));
            map[s] = coset_of(&zero_cosets, self.class_of(&w));
        }
        if map.contains(&usize::MAX) {
            return Err(Error::Preconditions("a coset of B* misses theta(A)".into()));
        }
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != zero_cosets.len() {
            return Err(Error::Preconditions("quotient map is not bijective".into()));
        }
        let rep = |c: &ElemSet| c.first().unwrap().index();
        for (i, ci) in star_cosets.iter().enumerate() {
            for (j, cj) in star_cosets.iter().enumerate() {
                let prod = coset_of(&star_cosets, self.mul(rep(ci), rep(cj)));
                let zi = &zero_cosets[map[i]];
                let zj = &zero_cosets[map[j]];
                let zprod = coset_of(&zero_cosets, self.mul(rep(zi), rep(zj)));
                if map[prod] != zprod {
                    return Err(Error::Preconditions("quotient map is not a homomorphism".into()));
                }
            }
        }
        Ok(QuotientMap { order: star_cosets.len(), map })
    }
}

/// The coset map produced by [`PostCover::quotient_isomorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub order: usize,
    pub map: Vec<usize>,
}

impl NaryGroup {
    /// Class of a word in the covering group.
    pub fn class_in_cover(&self, w: &Word) -> usize {
        self.cover().class_of(&w.0)
    }
}
