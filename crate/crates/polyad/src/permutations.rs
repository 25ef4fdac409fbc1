//! n-ary permutations: tuples `{σ, f1, .., f(n-1)}` of bijections
//! `fj: Aj -> A(σ(j))` between sets of equal size `q`, their m-ary
//! composition, and the k-ary groups they form when `σ^k = σ`.
//!
//! All sets are `0..q`; bijections act left to right, so `f g` means
//! "apply `f`, then `g`". Positions `j` are zero-based in code.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::binary::{lex_permutations, PermutationMap};
use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::group::NaryGroup;
use crate::groupoid::{Backing, Limits, NaryGroupoid};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaryPermutation {
    sigma: PermutationMap,
    maps: Vec<PermutationMap>,
}

impl NaryPermutation {
    /// `maps[j]` sends set `j` to set `sigma(j)`; all maps act on `0..q`.
    pub fn new(sigma: PermutationMap, maps: Vec<PermutationMap>) -> Result<Self> {
        if maps.len() != sigma.len() || maps.is_empty() {
            return Err(Error::SizeMismatch);
        }
        let q = maps[0].len();
        if maps.iter().any(|f| f.len() != q) {
            return Err(Error::SizeMismatch);
        }
        Ok(NaryPermutation { sigma, maps })
    }

    pub fn sigma(&self) -> &PermutationMap {
        &self.sigma
    }

    pub fn maps(&self) -> &[PermutationMap] {
        &self.maps
    }

    pub fn q(&self) -> usize {
        self.maps[0].len()
    }

    /// `n - 1`, the number of component maps.
    pub fn width(&self) -> usize {
        self.maps.len()
    }

    /// Index in the carrier of [`permutation_group`]: components are
    /// mixed-radix digits over `q!`, first component most significant,
    /// each digit the lexicographic rank of the map.
    pub fn encode(&self) -> usize {
        let perms = lex_permutations(self.q());
        let base = perms.len();
        self.maps.iter().fold(0, |acc, f| {
            let r = perms.binary_search_by(|p| p.as_slice().cmp(f.images())).expect("valid permutation");
            acc * base + r
        })
    }

    pub fn decode(q: usize, sigma: &PermutationMap, x: usize) -> Result<Self> {
        let perms = lex_permutations(q);
        let base = perms.len();
        let mut digits = alloc::vec![0usize; sigma.len()];
        let mut x = x;
        for d in digits.iter_mut().rev() {
            *d = x % base;
            x /= base;
        }
        if x != 0 {
            return Err(Error::ElementOutOfRange { index: x, size: base.pow(sigma.len() as u32) });
        }
        let maps = digits.iter().map(|&d| PermutationMap::new(perms[d].clone())).collect::<Result<_>>()?;
        NaryPermutation::new(sigma.clone(), maps)
    }

    /// Each map in cycle notation, comma separated, e.g. `[(12),()]`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.maps.iter().map(|f| f.cycle_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// The m-ary composition `(f1 .. fm)`: the twist is `σ1 σ2 .. σm` and
/// component `j` is `f1j f2σ1(j) f3σ1σ2(j) ..`.
pub fn compose(fs: &[NaryPermutation]) -> Result<NaryPermutation> {
    let first = fs.first().ok_or_else(|| Error::Preconditions("nothing to compose".into()))?;
    let (w, q) = (first.width(), first.q());
    if fs.iter().any(|f| f.width() != w || f.q() != q) {
        return Err(Error::SizeMismatch);
    }
    let mut maps = Vec::with_capacity(w);
    for j in 0..w {
        let mut pos = ElementId::new(j);
        let mut g = PermutationMap::identity(q);
        for f in fs {
            g = g.then(&f.maps[pos.index()]);
            pos = f.sigma.apply(pos);
        }
        maps.push(g);
    }
    let sigma = fs.iter().skip(1).fold(first.sigma.clone(), |s, f| s.then(&f.sigma));
    NaryPermutation::new(sigma, maps)
}

/// The k-ary group of all n-ary permutations with twist `sigma` on sets
/// of size `q`, of order `(q!)^(n-1)`. The arity defaults to
/// `ord(sigma) + 1`.
pub fn permutation_group(q: usize, sigma: &PermutationMap, arity: Option<usize>, limits: &Limits) -> Result<NaryGroup> {
    NaryGroup::trusted(permutation_groupoid(q, sigma, arity, limits)?, limits)
}

/// The groupoid behind [`permutation_group`], not yet verified.
pub fn permutation_groupoid(
    q: usize,
    sigma: &PermutationMap,
    arity: Option<usize>,
    limits: &Limits,
) -> Result<NaryGroupoid> {
    let n = sigma.len() + 1;
    if q == 0 {
        return Err(Error::Preconditions("empty sets".into()));
    }
    let k = arity.unwrap_or(sigma.order() + 1);
    if k < 2 {
        return Err(Error::BadArity(k));
    }
    if sigma.pow(k) != *sigma {
        return Err(Error::SigmaNotIdempotentPower);
    }
    let size = lex_permutations(q)
        .len()
        .checked_pow((n - 1) as u32)
        .ok_or(Error::BudgetExceeded { needed: u128::MAX, budget: limits.eval_budget })?;
    let labels = (0..size).map(|x| NaryPermutation::decode(q, sigma, x).map(|f| f.label())).collect::<Result<_>>()?;
    NaryGroupoid::with_backing(size, k, Backing::Permutation { q, n, sigma: sigma.clone() }, Some(labels), limits)
}

/// The cyclic twist `(1 2 .. n-1)`.
pub fn cycle(n: usize) -> PermutationMap {
    let w = n.saturating_sub(1).max(1);
    PermutationMap::from_fn(w, |j| (j + 1) % w).expect("cycle")
}

/// The right shifts `r_c` of an n-ary group acting on the quotients
/// `A1, .., A(n-1)` of words of length `i`, where `r_c` sends the class of
/// `a1..ai` to the class of `a1..ai c`. Classes in each quotient are
/// numbered by their position in the cover.
#[derive(Clone, Debug)]
pub struct RegularRepresentation {
    pub shifts: Vec<NaryPermutation>,
}

pub fn right_regular(g: &NaryGroup) -> Result<RegularRepresentation> {
    let (k, n) = (g.size(), g.arity());
    let cover = g.cover();
    let width = n - 1;
    let sigma = cycle(n);
    let mut shifts = Vec::with_capacity(k);
    for c in g.elements() {
        let tc = cover.theta(c);
        let maps = (0..width)
            .map(|j| {
                // Grade j+1 to grade j+2 (wrapping to grade 1).
                PermutationMap::from_fn(k, |x| cover.mul(j * k + x, tc) % k)
            })
            .collect::<Result<_>>()?;
        shifts.push(NaryPermutation::new(sigma.clone(), maps)?);
    }
    Ok(RegularRepresentation { shifts })
}

impl RegularRepresentation {
    /// Whether `c -> r_c` is injective and `r_[c1..cn] = (r_c1 .. r_cn)`
    /// for every tuple.
    pub fn is_embedding(&self, g: &NaryGroup, limits: &Limits) -> Result<bool> {
        let (k, n) = (g.size(), g.arity());
        let codes: Vec<usize> = self.shifts.iter().map(|f| f.encode()).collect();
        let mut sorted = codes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Ok(false);
        }
        limits.check(crate::groupoid::pow_u128(k, n))?;
        let mut t = alloc::vec![ElementId(0); n];
        let mut args = Vec::with_capacity(n);
        loop {
            args.clear();
            args.extend(t.iter().map(|c| self.shifts[c.index()].clone()));
            if compose(&args)? != self.shifts[g.op(&t).index()] {
                return Ok(false);
            }
            if !crate::groupoid::odometer(&mut t, k) {
                return Ok(true);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::named_example;
    use crate::structure::idempotents;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn perm(v: &[u32]) -> PermutationMap {
        PermutationMap::new(v.to_vec()).unwrap()
    }

    fn random_perm(rng: &mut ChaCha8Rng, q: usize) -> PermutationMap {
        let all = lex_permutations(q);
        PermutationMap::new(all[(rng.next_u64() % all.len() as u64) as usize].clone()).unwrap()
    }

    #[test]
    fn single_composition_is_identity() {
        let f = NaryPermutation::new(cycle(3), alloc::vec![perm(&[1, 0]), perm(&[0, 1])]).unwrap();
        assert_eq!(compose(std::slice::from_ref(&f)).unwrap(), f);
    }

    #[test]
    fn ternary_swap_example() {
        // (fgh) = {f1 g2 h1, f2 g1 h2} under the twist (12).
        let s = cycle(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mk = |rng: &mut ChaCha8Rng| {
                NaryPermutation::new(s.clone(), alloc::vec![random_perm(rng, 3), random_perm(rng, 3)]).unwrap()
            };
            let (f, g, h) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            let r = compose(&[f.clone(), g.clone(), h.clone()]).unwrap();
            assert_eq!(r.maps()[0], f.maps()[0].then(&g.maps()[1]).then(&h.maps()[0]));
            assert_eq!(r.maps()[1], f.maps()[1].then(&g.maps()[0]).then(&h.maps()[1]));
            assert_eq!(r.sigma(), &s);
        }
    }

    #[test]
    fn componentwise_when_untwisted() {
        let id = PermutationMap::identity(2);
        let f = NaryPermutation::new(id.clone(), alloc::vec![perm(&[1, 0, 2]), perm(&[2, 0, 1])]).unwrap();
        let g = NaryPermutation::new(id.clone(), alloc::vec![perm(&[0, 2, 1]), perm(&[1, 0, 2])]).unwrap();
        let r = compose(&[f.clone(), g.clone(), f.clone()]).unwrap();
        for j in 0..2 {
            assert_eq!(r.maps()[j], f.maps()[j].then(&g.maps()[j]).then(&f.maps()[j]));
        }
    }

    #[test]
    fn mixed_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let q = 1 + (rng.next_u64() % 3) as usize;
            let w = 1 + (rng.next_u64() % 3) as usize;
            let m = 1 + (rng.next_u64() % 5) as usize;
            let sigmas = lex_permutations(w);
            let fs: Vec<NaryPermutation> = (0..m)
                .map(|_| {
                    let s =
                        PermutationMap::new(sigmas[(rng.next_u64() % sigmas.len() as u64) as usize].clone()).unwrap();
                    NaryPermutation::new(s, (0..w).map(|_| random_perm(&mut rng, q)).collect()).unwrap()
                })
                .collect();
            let whole = compose(&fs).unwrap();
            for i in 0..m {
                for len in 1..=m - i {
                    let inner = compose(&fs[i..i + len]).unwrap();
                    let mut split = fs[..i].to_vec();
                    split.push(inner);
                    split.extend_from_slice(&fs[i + len..]);
                    assert_eq!(compose(&split).unwrap(), whole);
                }
            }
        }
    }

    #[test]
    fn group_orders_and_idempotents() {
        let lim = Limits::default();
        for q in 1..=3usize {
            for n in 3..=4usize {
                let g = permutation_group(q, &cycle(n), None, &lim).unwrap();
                let fact: usize = (1..=q).product();
                assert_eq!(g.arity(), n);
                assert_eq!(g.size(), fact.pow(n as u32 - 1));
                assert_eq!(idempotents(&g).len(), fact.pow(n as u32 - 2));
            }
        }
    }

    #[test]
    fn group_operation_matches_compose() {
        let lim = Limits::default();
        let s = cycle(4);
        let g = permutation_group(2, &s, None, &lim).unwrap();
        let mut t = alloc::vec![ElementId(0); 4];
        loop {
            let fs: Vec<NaryPermutation> =
                t.iter().map(|x| NaryPermutation::decode(2, &s, x.index()).unwrap()).collect();
            assert_eq!(compose(&fs).unwrap().encode(), g.op(&t).index());
            if !crate::groupoid::odometer(&mut t, g.size()) {
                break;
            }
        }
    }

    #[test]
    fn twist_must_be_a_power_fixed_point() {
        let lim = Limits::default();
        let s = cycle(4);
        assert!(matches!(permutation_group(2, &s, Some(3), &lim), Err(Error::SigmaNotIdempotentPower)));
        let t = PermutationMap::parse_cycles("(12)", 3).unwrap();
        assert_eq!(permutation_group(2, &t, Some(5), &lim).unwrap().arity(), 5);
        assert_eq!(permutation_group(1, &s, None, &lim).unwrap().size(), 1);
    }

    #[test]
    fn regular_embeddings() {
        let lim = Limits::default();
        for name in ["T3", "V6", "Vn(5)", "derived(S3,3)", "derived(Z4,4)", "Zg_cyclic(5,3)", "Zg_cyclic(4,5)"] {
            let g = named_example(name).unwrap();
            let r = right_regular(&g).unwrap();
            assert!(r.is_embedding(&g, &lim).unwrap(), "{name}");
        }
    }
}
