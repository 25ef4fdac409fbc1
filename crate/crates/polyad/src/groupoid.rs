//! Finite n-ary groupoids: a carrier `0..k`, an arity, and an operation.
//!
//! The operation is described by a [`Backing`]; when `k^n` fits under the
//! table cap the whole operation table is materialized once and every
//! evaluation becomes a lookup.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binary::BinaryGroupTable;
use crate::binary::PermutationMap;
use crate::element::{ElemSet, ElementId};
use crate::error::{AssocViolation, Error, Result, SolvabilityViolation};

/// Work limits for exhaustive scans and table materialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of tuples an exhaustive check may visit.
    pub eval_budget: u64,
    /// Maximum number of entries in a materialized operation table.
    pub table_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { eval_budget: 100_000_000, table_cap: 10_000_000 }
    }
}

impl Limits {
    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.eval_budget as u128 {
            Err(Error::BudgetExceeded { needed, budget: self.eval_budget })
        } else {
            Ok(())
        }
    }
}

/// `k^e` without overflow.
pub fn pow_u128(k: usize, e: usize) -> u128 {
    let mut r: u128 = 1;
    for _ in 0..e {
        r = r.saturating_mul(k as u128);
    }
    r
}

/// How the operation is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backing {
    /// Row-major table of `k^n` results, first argument most significant.
    FullTable(Vec<u32>),
    /// `[x1 ... xn] = x1 x2 ... xn c` over a binary group, `c` central.
    Derived { base: BinaryGroupTable, central: ElementId },
    /// `[x1 ... xn] = x1 x2^b ... xn^(b^(n-1)) d`.
    Gluskin { base: BinaryGroupTable, beta: PermutationMap, d: ElementId },
    /// The coset `gH` of a normal subgroup with the induced product; the
    /// carrier is `g h_0, g h_1, ...` in increasing order of `h`.
    Coset { base: BinaryGroupTable, subgroup: ElemSet, g: ElementId },
    /// Componentwise product; the first factor is the most significant digit.
    Product(Vec<NaryGroupoid>),
    /// Tuples of `n-1` permutations of `0..q` sharing the twist `sigma`.
    Permutation { q: usize, n: usize, sigma: PermutationMap },
}

#[derive(Clone, Debug)]
enum Aux {
    None,
    BetaPowers(Vec<PermutationMap>),
    Coset { carrier: Vec<u32>, pos: Vec<u32> },
    Permutation { sq: BinaryGroupTable, sigma_powers: Vec<Vec<usize>> },
}

/// A finite n-ary groupoid.
#[derive(Clone, Debug)]
pub struct NaryGroupoid {
    size: usize,
    arity: usize,
    backing: Backing,
    labels: Vec<String>,
    aux: Aux,
    table: Option<Vec<u32>>,
}

impl PartialEq for NaryGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.arity == other.arity
            && self.backing == other.backing
            && self.labels == other.labels
    }
}
impl Eq for NaryGroupoid {}

impl NaryGroupoid {
    /// A groupoid given by its full operation table.
    pub fn from_table(size: usize, arity: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::BadArity(arity));
        }
        let expected = pow_u128(size, arity);
        if expected != table.len() as u128 {
            return Err(Error::TableSize { expected: expected as usize, found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= size) {
            return Err(Error::ElementOutOfRange { index: bad as usize, size });
        }
        Self::with_backing(size, arity, Backing::FullTable(table), labels, &Limits::default())
    }

    /// Wraps a backing, precomputing auxiliary data and, within the table
    /// cap, the full operation table. Backing data must already be valid.
    pub(crate) fn with_backing(
        size: usize,
        arity: usize,
        backing: Backing,
        labels: Option<Vec<String>>,
        limits: &Limits,
    ) -> Result<Self> {
        if arity < 2 {
            return Err(Error::BadArity(arity));
        }
        if size == 0 {
            return Err(Error::Preconditions("empty carrier".into()));
        }
        let labels = match labels {
            Some(l) if l.len() == size => l,
            Some(l) => return Err(Error::Preconditions(alloc::format!("{} labels for {} elements", l.len(), size))),
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        let aux = match &backing {
            Backing::Gluskin { beta, .. } => Aux::BetaPowers((0..arity).map(|e| beta.pow(e)).collect()),
            Backing::Coset { base, subgroup, g } => {
                let carrier: Vec<u32> = subgroup.iter().map(|h| base.op(*g, h).0).collect();
                let mut pos = vec![u32::MAX; base.size()];
                for (i, &x) in carrier.iter().enumerate() {
                    pos[x as usize] = i as u32;
                }
                Aux::Coset { carrier, pos }
            }
            Backing::Permutation { q, sigma, .. } => {
                let sq = BinaryGroupTable::symmetric(*q);
                let sigma_powers =
                    (0..arity).map(|e| sigma.pow(e).images().iter().map(|&x| x as usize).collect()).collect();
                Aux::Permutation { sq, sigma_powers }
            }
            _ => Aux::None,
        };
        let mut g = NaryGroupoid { size, arity, backing, labels, aux, table: None };
        if !matches!(g.backing, Backing::FullTable(_)) && pow_u128(size, arity) <= limits.table_cap as u128 {
            let total = pow_u128(size, arity) as usize;
            let mut table = Vec::with_capacity(total);
            let mut args = vec![ElementId(0); arity];
            for _ in 0..total {
                table.push(g.compute(&args).0);
                odometer(&mut args, size);
            }
            g.table = Some(table);
        }
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels[e.index()]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Preconditions("label count differs from carrier size".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size).map(ElementId::new)
    }

    pub fn element(&self, i: usize) -> Result<ElementId> {
        if i < self.size {
            Ok(ElementId::new(i))
        } else {
            Err(Error::ElementOutOfRange { index: i, size: self.size })
        }
    }

    /// The full table, materialized or computed, when it fits under `cap`.
    pub fn full_table(&self, cap: u64) -> Option<Vec<u32>> {
        if let Backing::FullTable(t) = &self.backing {
            return Some(t.clone());
        }
        if let Some(t) = &self.table {
            return Some(t.clone());
        }
        let total = pow_u128(self.size, self.arity);
        if total > cap as u128 {
            return None;
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut args = vec![ElementId(0); self.arity];
        for _ in 0..total {
            out.push(self.compute(&args).0);
            odometer(&mut args, self.size);
        }
        Some(out)
    }

    /// One application of the operation; `args.len()` must equal the arity.
    #[inline]
    pub fn op(&self, args: &[ElementId]) -> ElementId {
        debug_assert_eq!(args.len(), self.arity);
        let t = match &self.backing {
            Backing::FullTable(t) => t,
            _ => match &self.table {
                Some(t) => t,
                None => return self.compute(args),
            },
        };
        let mut idx = 0usize;
        for a in args {
            idx = idx * self.size + a.index();
        }
        ElementId(t[idx])
    }

    fn compute(&self, args: &[ElementId]) -> ElementId {
        match (&self.backing, &self.aux) {
            (Backing::FullTable(t), _) => {
                let idx = args.iter().fold(0usize, |i, a| i * self.size + a.index());
                ElementId(t[idx])
            }
            (Backing::Derived { base, central }, _) => base.op(base.product(args.iter().copied()), *central),
            (Backing::Gluskin { base, d, .. }, Aux::BetaPowers(pows)) => {
                let p = args.iter().enumerate().fold(base.identity(), |acc, (i, &x)| base.op(acc, pows[i].apply(x)));
                base.op(p, *d)
            }
            (Backing::Coset { base, .. }, Aux::Coset { carrier, pos }) => {
                let p = base.product(args.iter().map(|a| ElementId(carrier[a.index()])));
                ElementId(pos[p.index()])
            }
            (Backing::Product(parts), _) => {
                let mut digits: Vec<Vec<ElementId>> = vec![Vec::with_capacity(args.len()); parts.len()];
                for a in args {
                    let mut x = a.index();
                    for (j, part) in parts.iter().enumerate().rev() {
                        digits[j].push(ElementId::new(x % part.size));
                        x /= part.size;
                    }
                }
                let mut out = 0usize;
                for (part, d) in parts.iter().zip(&digits) {
                    out = out * part.size + part.op(d).index();
                }
                ElementId::new(out)
            }
            (Backing::Permutation { n, .. }, Aux::Permutation { sq, sigma_powers }) => {
                let comps = n - 1;
                let qf = sq.size();
                let split = |x: usize| {
                    let mut v = vec![0usize; comps];
                    let mut x = x;
                    for j in (0..comps).rev() {
                        v[j] = x % qf;
                        x /= qf;
                    }
                    v
                };
                let parts: Vec<Vec<usize>> = args.iter().map(|a| split(a.index())).collect();
                let mut out = 0usize;
                for j in 0..comps {
                    let g = parts
                        .iter()
                        .enumerate()
                        .fold(sq.identity(), |acc, (t, f)| sq.op(acc, ElementId::new(f[sigma_powers[t][j]])));
                    out = out * qf + g.index();
                }
                ElementId::new(out)
            }
            _ => unreachable!("auxiliary data matches backing"),
        }
    }

    /// Long product of a word of length `1 mod (n-1)`, folded from the left.
    pub fn eval(&self, word: &[ElementId]) -> Result<ElementId> {
        let m = self.arity - 1;
        if word.is_empty() || !(word.len() - 1).is_multiple_of(m) {
            return Err(Error::Length { len: word.len(), modulus: m });
        }
        for a in word {
            if a.index() >= self.size {
                return Err(Error::ElementOutOfRange { index: a.index(), size: self.size });
            }
        }
        Ok(self.eval_unchecked(word))
    }

    /// [`Self::eval`] without validation.
    pub fn eval_unchecked(&self, word: &[ElementId]) -> ElementId {
        if word.len() == 1 {
            return word[0];
        }
        let n = self.arity;
        let mut buf = vec![ElementId(0); n];
        let mut acc = self.op(&word[..n]);
        let mut i = n;
        while i < word.len() {
            buf[0] = acc;
            buf[1..].copy_from_slice(&word[i..i + n - 1]);
            acc = self.op(&buf);
            i += n - 1;
        }
        acc
    }

    /// Evaluates the right fold `[a1 ... [a(m-n+1) ... am]]`.
    pub fn eval_right(&self, word: &[ElementId]) -> ElementId {
        if word.len() == 1 {
            return word[0];
        }
        let n = self.arity;
        let mut buf = vec![ElementId(0); n];
        let mut acc = self.op(&word[word.len() - n..]);
        let mut end = word.len() - n;
        while end > 0 {
            buf[..n - 1].copy_from_slice(&word[end - (n - 1)..end]);
            buf[n - 1] = acc;
            acc = self.op(&buf);
            end -= n - 1;
        }
        acc
    }

    fn bracketing_violation(&self, t: &[ElementId], inner: &mut [ElementId]) -> Option<AssocViolation> {
        let n = self.arity;
        inner.copy_from_slice(&t[..n]);
        let first = self.op(inner);
        inner[0] = first;
        inner[1..].copy_from_slice(&t[n..]);
        let left = self.op(inner);
        for i in 1..n {
            let mid = self.op(&t[i..i + n]);
            inner[..i].copy_from_slice(&t[..i]);
            inner[i] = mid;
            inner[i + 1..].copy_from_slice(&t[i + n..]);
            let right = self.op(inner);
            if right != left {
                return Some(AssocViolation { tuple: t.to_vec(), position: i, left, right });
            }
        }
        None
    }

    /// First `(2n-1)`-tuple, in lexicographic order, on which two
    /// bracketings disagree.
    pub fn find_associativity_violation(&self, limits: &Limits) -> Result<Option<AssocViolation>> {
        let len = 2 * self.arity - 1;
        let total = pow_u128(self.size, len);
        limits.check(total)?;
        Ok(match self.full_table(limits.table_cap) {
            Some(table) => self.dense_associativity_violation(&table),
            None => self.generic_associativity_violation(),
        })
    }

    fn generic_associativity_violation(&self) -> Option<AssocViolation> {
        let len = 2 * self.arity - 1;
        let mut t = vec![ElementId(0); len];
        let mut inner = vec![ElementId(0); self.arity];
        loop {
            if let Some(v) = self.bracketing_violation(&t, &mut inner) {
                return Some(v);
            }
            if !odometer(&mut t, self.size) {
                return None;
            }
        }
    }

    /// Same scan as the generic path over a dense table. Everything except
    /// the last letter is fixed in the outer loop, so each bracketing is a
    /// precomputed offset plus that letter (or, for the last bracketing,
    /// plus the inner product it feeds).
    fn dense_associativity_violation(&self, table: &[u32]) -> Option<AssocViolation> {
        let (k, n) = (self.size, self.arity);
        let len = 2 * n - 1;
        // Weight of argument position j in the flat index.
        let w: Vec<usize> = (0..n).map(|j| k.pow((n - 1 - j) as u32)).collect();
        let mut t = vec![0usize; len - 1];
        let mut offsets = vec![0usize; n - 1];
        loop {
            for (i, off) in offsets.iter_mut().enumerate() {
                let mid = table[(0..n).map(|j| t[i + j] * w[j]).sum::<usize>()] as usize;
                let head: usize = (0..i).map(|j| t[j] * w[j]).sum();
                let tail: usize = (i + n..len - 1).map(|j| t[j] * w[j - n + 1]).sum();
                *off = head + mid * w[i] + tail;
            }
            let last_head: usize = (0..n - 1).map(|j| t[j] * w[j]).sum();
            let last_inner: usize = (0..n - 1).map(|j| t[n - 1 + j] * w[j]).sum();
            for x in 0..k {
                let left = table[offsets[0] + x];
                let mut bad =
                    offsets[1..].iter().position(|&o| table[o + x] != left).map(|p| (p + 1, table[offsets[p + 1] + x]));
                if bad.is_none() {
                    let right = table[last_head + table[last_inner + x] as usize];
                    if right != left {
                        bad = Some((n - 1, right));
                    }
                }
                if let Some((position, right)) = bad {
                    let mut tuple: Vec<ElementId> = t.iter().map(|&a| ElementId::new(a)).collect();
                    tuple.push(ElementId::new(x));
                    return Some(AssocViolation { tuple, position, left: ElementId(left), right: ElementId(right) });
                }
            }
            // Advance the prefix, last position fastest.
            let mut j = len - 1;
            loop {
                if j == 0 {
                    return None;
                }
                j -= 1;
                t[j] += 1;
                if t[j] < k {
                    break;
                }
                t[j] = 0;
            }
        }
    }

    pub fn is_associative(&self, limits: &Limits) -> Result<bool> {
        Ok(self.find_associativity_violation(limits)?.is_none())
    }

    /// Associativity on `samples` pseudo-random tuples from a fixed seed.
    pub fn sample_associativity(&self, samples: u64, seed: u64) -> Option<AssocViolation> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = 2 * self.arity - 1;
        let mut t = vec![ElementId(0); len];
        let mut inner = vec![ElementId(0); self.arity];
        for _ in 0..samples {
            for x in t.iter_mut() {
                *x = ElementId::new((rng.next_u64() % self.size as u64) as usize);
            }
            if let Some(v) = self.bracketing_violation(&t, &mut inner) {
                return Some(v);
            }
        }
        None
    }

    /// Checks that `[x a2 ... an] = b` and `[a1 ... a(n-1) y] = b` are
    /// solvable for all parameters by testing that every translation is a
    /// bijection. Does not test associativity.
    pub fn find_solvability_violation(&self, limits: &Limits) -> Result<Option<SolvabilityViolation>> {
        let n = self.arity;
        limits.check(2 * pow_u128(self.size, n))?;
        let total = pow_u128(self.size, n - 1) as usize;
        let mut args = vec![ElementId(0); n];
        let mut fixed = vec![ElementId(0); n - 1];
        let mut hit = ElemSet::empty(self.size);
        for left_unknown in [true, false] {
            for _ in 0..total {
                hit = ElemSet::empty(hit.universe());
                for x in self.elements() {
                    if left_unknown {
                        args[0] = x;
                        args[1..].copy_from_slice(&fixed);
                    } else {
                        args[..n - 1].copy_from_slice(&fixed);
                        args[n - 1] = x;
                    }
                    hit.insert(self.op(&args));
                }
                if hit.len() != self.size {
                    let rhs = self.elements().find(|&b| !hit.contains(b)).unwrap();
                    return Ok(Some(SolvabilityViolation { left_unknown, known: fixed.clone(), rhs }));
                }
                odometer(&mut fixed, self.size);
            }
        }
        Ok(None)
    }

    /// Solvability on sampled parameter tuples.
    pub fn sample_solvability(&self, samples: u64, seed: u64) -> Option<SolvabilityViolation> {
        let n = self.arity;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut args = vec![ElementId(0); n];
        let mut fixed = vec![ElementId(0); n - 1];
        for s in 0..samples {
            let left_unknown = s % 2 == 0;
            for x in fixed.iter_mut() {
                *x = ElementId::new((rng.next_u64() % self.size as u64) as usize);
            }
            let mut hit = ElemSet::empty(self.size);
            for x in self.elements() {
                if left_unknown {
                    args[0] = x;
                    args[1..].copy_from_slice(&fixed);
                } else {
                    args[..n - 1].copy_from_slice(&fixed);
                    args[n - 1] = x;
                }
                hit.insert(self.op(&args));
            }
            if hit.len() != self.size {
                let rhs = self.elements().find(|&b| !hit.contains(b)).unwrap();
                return Some(SolvabilityViolation { left_unknown, known: fixed, rhs });
            }
        }
        None
    }

    /// Whether this associative groupoid is an n-ary group. Fails with
    /// [`Error::NotAssociative`] when associativity does not hold.
    pub fn is_group(&self, limits: &Limits) -> Result<bool> {
        if let Some(v) = self.find_associativity_violation(limits)? {
            return Err(Error::NotAssociative(v));
        }
        Ok(self.find_solvability_violation(limits)?.is_none())
    }

    /// Replaces one table entry; used to build counterexamples.
    pub fn perturbed(&self, args: &[ElementId], value: ElementId) -> Result<NaryGroupoid> {
        let mut table = self
            .full_table(u64::MAX)
            .ok_or(Error::BudgetExceeded { needed: pow_u128(self.size, self.arity), budget: u64::MAX })?;
        let idx = args.iter().fold(0usize, |i, a| i * self.size + a.index());
        table[idx] = value.0;
        NaryGroupoid::from_table(self.size, self.arity, table, Some(self.labels.clone()))
    }

    /// The projection groupoid `[a1 ... an] = an` (or `= a1` when `first`).
    pub fn projection(size: usize, arity: usize, first: bool) -> Result<Self> {
        let total = pow_u128(size, arity) as usize;
        let mut table = Vec::with_capacity(total);
        let mut args = vec![ElementId(0); arity];
        for _ in 0..total {
            table.push(if first { args[0].0 } else { args[arity - 1].0 });
            odometer(&mut args, size);
        }
        Self::from_table(size, arity, table, None)
    }
}

/// Advances `digits` as a base-`k` counter, last position fastest.
/// Returns `false` after wrapping around to all zeros.
pub fn odometer(digits: &mut [ElementId], k: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if d.index() + 1 < k {
            d.0 += 1;
            return true;
        }
        d.0 = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ids;

    fn derived_z(k: usize, n: usize) -> NaryGroupoid {
        let total = pow_u128(k, n) as usize;
        let mut table = Vec::with_capacity(total);
        let mut args = vec![ElementId(0); n];
        for _ in 0..total {
            table.push((args.iter().map(|a| a.index()).sum::<usize>() % k) as u32);
            odometer(&mut args, k);
        }
        NaryGroupoid::from_table(k, n, table, None).unwrap()
    }

    #[test]
    fn dense_scan_matches_generic() {
        for (k, n) in [(3, 2), (3, 3), (4, 3), (2, 4)] {
            let g = derived_z(k, n);
            let table = g.full_table(u64::MAX).unwrap();
            assert!(g.dense_associativity_violation(&table).is_none());
            for seed in 0..20u64 {
                let total = table.len();
                let mut t = table.clone();
                let at = (seed as usize * 7919) % total;
                t[at] = (t[at] + 1 + seed as u32 % (k as u32 - 1)) % k as u32;
                let h = NaryGroupoid::from_table(k, n, t.clone(), None).unwrap();
                assert_eq!(h.dense_associativity_violation(&t), h.generic_associativity_violation());
            }
        }
    }

    #[test]
    fn eval_left_fold() {
        let g = derived_z(4, 3);
        assert_eq!(g.eval(&ids(&[1, 2, 3])).unwrap(), ElementId(2));
        assert_eq!(g.eval(&ids(&[3])).unwrap(), ElementId(3));
        assert_eq!(g.eval(&ids(&[1, 1, 1, 1, 1])).unwrap(), ElementId(1));
        assert!(matches!(g.eval(&ids(&[1, 2])), Err(Error::Length { .. })));
        assert_eq!(g.eval_right(&ids(&[1, 2, 3, 3, 3])), ElementId(0));
    }

    #[test]
    fn projection_is_semigroup_not_group() {
        let p = NaryGroupoid::projection(2, 3, false).unwrap();
        let lim = Limits::default();
        assert!(p.is_associative(&lim).unwrap());
        assert!(!p.is_group(&lim).unwrap());
    }

    #[test]
    fn perturbation_breaks_associativity() {
        let g = derived_z(2, 3);
        let bad = g.perturbed(&ids(&[0, 0, 1]), ElementId(0)).unwrap();
        let v = bad.find_associativity_violation(&Limits::default()).unwrap().unwrap();
        let t = &v.tuple;
        assert_ne!(v.left, v.right);
        assert_eq!(v.left, bad.op(&[bad.op(&t[..3]), t[3], t[4]]));
        assert!(matches!(bad.is_group(&Limits::default()), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let g = derived_z(4, 3);
        let tiny = Limits { eval_budget: 10, table_cap: 10 };
        assert!(matches!(g.find_associativity_violation(&tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn odometer_wraps() {
        let mut d = ids(&[1, 1]);
        assert!(!odometer(&mut d, 2));
        assert_eq!(d, ids(&[0, 0]));
    }
}
