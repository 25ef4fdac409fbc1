use std::collections::BTreeMap;
use std::sync::Mutex;

use polyad::constructions::{derived, direct_product, gluskin, named_binary, product_components};
use polyad::groupoid::NaryGroupoid;
use polyad::retract::Retract;
use polyad::structure::{nadic_order, nadic_power};
use polyad::{BinaryGroupTable, ElementId, Limits, NaryGroup, PermutationMap, Word};
use proptest::prelude::*;

const BASES: &[&str] = &["Z2", "Z3", "Z4", "Z5", "Z6", "S3", "Q8", "D4"];

fn base(i: usize) -> BinaryGroupTable {
    named_binary(BASES[i % BASES.len()]).unwrap()
}

static CACHE: Mutex<BTreeMap<(u64, usize), NaryGroup>> = Mutex::new(BTreeMap::new());

/// A derived or Gluskin group chosen from `seed`, cached since building
/// one re-verifies it.
fn group(seed: u64, n: usize) -> NaryGroup {
    let key = (seed % 16, n);
    if let Some(g) = CACHE.lock().unwrap().get(&key) {
        return g.clone();
    }
    let g = build(key.0, n);
    CACHE.lock().unwrap().insert(key, g.clone());
    g
}

fn build(seed: u64, n: usize) -> NaryGroup {
    let b = base(seed as usize);
    let centre: Vec<ElementId> = b.elements().filter(|&x| b.is_central(x)).collect();
    let c = centre[(seed as usize / 8) % centre.len()];
    if seed.is_multiple_of(3) && b.is_abelian() {
        // x -> x^-1 is an automorphism of an abelian group; any d of
        // order at most 2 is fixed by it and commutes.
        let neg = PermutationMap::from_fn(b.size(), |x| b.inv(ElementId::new(x)).index()).unwrap();
        let d =
            b.elements().find(|&x| b.op(x, x) == b.identity() && x.index() as u64 == seed % 2).unwrap_or(b.identity());
        if n % 2 == 1 {
            return gluskin(&b, &neg, d, n).unwrap();
        }
    }
    derived(&b, c, n).unwrap()
}

fn word(g: &NaryGroup, raw: &[u32]) -> Vec<ElementId> {
    raw.iter().map(|&x| ElementId(x % g.size() as u32)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn constructions_are_groups(seed in 0u64..200, n in 3usize..5) {
        let g = group(seed, n);
        let table = NaryGroupoid::from_table(g.size(), n, g.groupoid().full_table(1 << 20).unwrap(), None).unwrap();
        prop_assert!(table.find_associativity_violation(&Limits::default()).unwrap().is_none());
        prop_assert!(table.is_group(&Limits::default()).unwrap());
    }

    #[test]
    fn skew_solves_every_position(seed in 0u64..200, n in 3usize..7, a in 0u32..8, i in 0usize..7) {
        let g = group(seed, n);
        let a = ElementId(a % g.size() as u32);
        let mut w = vec![a; n];
        w[i % n] = g.skew(a);
        prop_assert_eq!(g.op(&w), a);
    }

    #[test]
    fn solve_fills_the_hole(seed in 0u64..200, n in 3usize..6, raw in prop::collection::vec(0u32..8, 6), hole in 0usize..6, rhs in 0u32..8) {
        let g = group(seed, n);
        let w = word(&g, &raw[..n]);
        let rhs = ElementId(rhs % g.size() as u32);
        let mut pattern: Vec<Option<ElementId>> = w.iter().copied().map(Some).collect();
        pattern[hole % n] = None;
        let x = g.solve(&pattern, rhs).unwrap();
        let mut filled = w.clone();
        filled[hole % n] = x;
        prop_assert_eq!(g.op(&filled), rhs);
    }

    #[test]
    fn powers_add(seed in 0u64..200, n in 3usize..6, a in 0u32..8, exps in prop::collection::vec(-7i64..8, 6)) {
        let g = group(seed, n);
        let a = ElementId(a % g.size() as u32);
        let parts: Vec<ElementId> = exps[..n].iter().map(|&s| nadic_power(&g, a, s)).collect();
        let total: i64 = exps[..n].iter().sum::<i64>() + 1;
        prop_assert_eq!(g.op(&parts), nadic_power(&g, a, total));
        prop_assert_eq!(nadic_power(&g, a, nadic_order(&g, a) as i64), a);
    }

    #[test]
    fn retract_reconstructs(seed in 0u64..200, n in 3usize..6, a in 0u32..8, raw in prop::collection::vec(0u32..8, 6), i in 0usize..6) {
        let g = group(seed, n);
        let r = Retract::new(&g, ElementId(a % g.size() as u32)).unwrap();
        let w = word(&g, &raw[..n]);
        prop_assert_eq!(r.reconstruct(&w, i % n), g.op(&w));
    }

    #[test]
    fn canonical_classes_match_the_cover(seed in 0u64..200, n in 3usize..6, raw in prop::collection::vec(0u32..8, 1..12)) {
        let g = group(seed, n);
        let w = Word::new(word(&g, &raw));
        let c = g.theta_canonical(&w, ElementId(0));
        let rep = g.class_representative(&c);
        prop_assert_eq!(g.theta_canonical(&rep, ElementId(0)), c);
        let cover = g.cover();
        prop_assert_eq!(cover.class_of(w.letters()), cover.class_of(rep.letters()));
        let inv = g.inverse_sequence(&w);
        prop_assert!(g.is_neutral(&w.concat(&inv)).unwrap());
        prop_assert!(g.is_neutral(&inv.concat(&w)).unwrap());
    }
}

proptest! {
    // Each case verifies a fresh product group, so keep the count low.
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn products_act_componentwise(s1 in 0u64..200, s2 in 0u64..200, raw in prop::collection::vec(0u32..64, 3)) {
        let (g, h) = (group(s1, 3), group(s2, 3));
        let p = direct_product(&[&g, &h]).unwrap();
        let w: Vec<ElementId> = raw.iter().map(|&x| ElementId(x % p.size() as u32)).collect();
        let parts: Vec<Vec<ElementId>> = w.iter().map(|&x| product_components(&[g.size(), h.size()], x)).collect();
        let out = product_components(&[g.size(), h.size()], p.op(&w));
        let left: Vec<ElementId> = parts.iter().map(|c| c[0]).collect();
        let right: Vec<ElementId> = parts.iter().map(|c| c[1]).collect();
        prop_assert_eq!(out, vec![g.op(&left), h.op(&right)]);
    }
}
