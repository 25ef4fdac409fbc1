//! Ordinary (binary) groups given by Cayley tables, and permutations of a
//! finite set.
//!
//! These are the raw material for every n-ary construction and the target
//! of retract and covering-group comparisons.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::element::{ElemSet, ElementId};
use crate::error::{Error, Result};

/// A bijection of `0..k`, applied as `x -> image[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationMap {
    image: Vec<u32>,
}

impl PermutationMap {
    pub fn identity(k: usize) -> Self {
        PermutationMap { image: (0..k as u32).collect() }
    }

    pub fn new(image: Vec<u32>) -> Result<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &x in &image {
            let x = x as usize;
            if x >= k || seen[x] {
                return Err(Error::InvalidPermutation(format!("{image:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(PermutationMap { image })
    }

    pub fn from_fn(k: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new((0..k).map(|i| f(i) as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        ElementId(self.image[x.index()])
    }

    pub fn images(&self) -> &[u32] {
        &self.image
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &PermutationMap) -> PermutationMap {
        PermutationMap { image: self.image.iter().map(|&x| other.image[x as usize]).collect() }
    }

    pub fn inverse(&self) -> PermutationMap {
        let mut inv = vec![0u32; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        PermutationMap { image: inv }
    }

    pub fn pow(&self, e: usize) -> PermutationMap {
        let mut r = PermutationMap::identity(self.len());
        for _ in 0..e {
            r = r.then(self);
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Smallest `m >= 1` with `self^m = id`.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut m = 1;
        while !p.is_identity() {
            p = p.then(self);
            m += 1;
        }
        m
    }

    /// Parses cycle notation over `1..=k`, e.g. `(1 2)(3 4)` or `(12)`.
    /// Single-digit cycles may omit spaces.
    pub fn parse_cycles(s: &str, k: usize) -> Result<Self> {
        let mut image: Vec<u32> = (0..k as u32).collect();
        let bad = |m: &str| Error::InvalidPermutation(format!("{s:?}: {m}"));
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "id" {
            return Ok(PermutationMap { image });
        }
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| bad("expected '('"))?;
            if !rest[..open].trim().is_empty() {
                return Err(bad("text outside cycles"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unbalanced parentheses"))?;
            let body = rest[open + 1..close].trim();
            let points: Vec<usize> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
                body.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| bad("bad point")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("bad point")))
                    .collect::<Result<_>>()?
            };
            for &p in &points {
                if p == 0 || p > k {
                    return Err(bad("point out of range"));
                }
            }
            // Cycles compose left to right, matching the group convention.
            let mut cyc = PermutationMap::identity(k);
            for w in 0..points.len() {
                cyc.image[points[w] - 1] = (points[(w + 1) % points.len()] - 1) as u32;
            }
            let composed = PermutationMap { image }.then(&PermutationMap::new(cyc.image)?);
            image = composed.image;
            rest = &rest[close + 1..];
            rest = rest.trim_start();
        }
        PermutationMap::new(image)
    }

    /// Cycle notation over `1..=k`; the identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let k = self.len();
        let mut seen = vec![false; k];
        let mut out = String::new();
        let wide = k > 9;
        for start in 0..k {
            if seen[start] || self.image[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first && wide {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.image[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct BinaryGroupTable {
    size: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: ElementId,
    labels: Vec<String>,
}

impl PartialEq for BinaryGroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.mul == other.mul
    }
}
impl Eq for BinaryGroupTable {}

impl BinaryGroupTable {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(size: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidGroup("empty carrier".into()));
        }
        if mul.len() != size * size {
            return Err(Error::TableSize { expected: size * size, found: mul.len() });
        }
        if let Some(&bad) = mul.iter().find(|&&x| x as usize >= size) {
            return Err(Error::ElementOutOfRange { index: bad as usize, size });
        }
        let m = |a: usize, b: usize| mul[a * size + b] as usize;
        for a in 0..size {
            for b in 0..size {
                let ab = m(a, b);
                for c in 0..size {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let id = (0..size)
            .find(|&e| (0..size).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inv = vec![0u32; size];
        for (a, slot) in inv.iter_mut().enumerate() {
            let b = (0..size)
                .find(|&b| m(a, b) == id && m(b, a) == id)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            *slot = b as u32;
        }
        let labels = match labels {
            Some(l) if l.len() == size => l,
            Some(l) => return Err(Error::InvalidGroup(format!("{} labels for {size} elements", l.len()))),
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        Ok(BinaryGroupTable { size, mul, inv, id: ElementId::new(id), labels })
    }

    /// Skips the associativity scan; for tables produced by trusted code.
    pub(crate) fn from_table_trusted(size: usize, mul: Vec<u32>, labels: Vec<String>) -> Self {
        let m = |a: usize, b: usize| mul[a * size + b] as usize;
        let id = (0..size).find(|&e| (0..size).all(|a| m(e, a) == a)).expect("identity");
        let inv = (0..size).map(|a| (0..size).find(|&b| m(a, b) == id).expect("inverse") as u32).collect();
        BinaryGroupTable { size, mul, inv, id: ElementId::new(id), labels }
    }

    fn build(size: usize, labels: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut mul = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                mul.push(f(a, b) as u32);
            }
        }
        Self::from_table_trusted(size, mul, labels)
    }

    /// The additive group `Z_k`.
    pub fn cyclic(k: usize) -> Self {
        let labels = (0..k).map(|i| i.to_string()).collect();
        Self::build(k, labels, |a, b| (a + b) % k)
    }

    /// The dihedral group of order `2m`, `<b, c | b^2 = c^m = 1, cb = bc^-1>`.
    /// Element `b^s c^i` has index `s*m + i`.
    pub fn dihedral(m: usize) -> Self {
        let mut labels = Vec::with_capacity(2 * m);
        for s in 0..2 {
            for i in 0..m {
                labels.push(power_label(if s == 1 { "b" } else { "" }, "c", i));
            }
        }
        Self::build(2 * m, labels, |x, y| {
            let (s1, i1) = (x / m, x % m);
            let (s2, i2) = (y / m, y % m);
            let i1 = if s2 == 1 { (m - i1) % m } else { i1 };
            ((s1 + s2) % 2) * m + (i1 + i2) % m
        })
    }

    /// The quaternion group `<a, b | a^4 = 1, b^2 = a^2, ab = ba^-1>`.
    /// Element `b^s a^i` has index `s*4 + i`.
    pub fn quaternion() -> Self {
        let mut labels = Vec::with_capacity(8);
        for s in 0..2 {
            for i in 0..4 {
                labels.push(power_label(if s == 1 { "b" } else { "" }, "a", i));
            }
        }
        Self::build(8, labels, |x, y| {
            let (s1, i1) = (x / 4, x % 4);
            let (s2, i2) = (y / 4, y % 4);
            let i1 = if s2 == 1 { (4 - i1) % 4 } else { i1 };
            let mut e = (i1 + i2) % 4;
            let mut s = s1 + s2;
            if s == 2 {
                s = 0;
                e = (e + 2) % 4;
            }
            s * 4 + e
        })
    }

    /// The symmetric group on `q` points, elements in lexicographic order of
    /// their image vectors, composed left to right: `(pq)(x) = q(p(x))`.
    pub fn symmetric(q: usize) -> Self {
        let perms = lex_permutations(q);
        let index = |p: &[u32]| perms.binary_search_by(|x| x.as_slice().cmp(p)).unwrap();
        let labels = perms.iter().map(|p| PermutationMap { image: p.clone() }.cycle_string()).collect();
        let mut mul = Vec::with_capacity(perms.len() * perms.len());
        for p in &perms {
            for r in &perms {
                let c: Vec<u32> = p.iter().map(|&x| r[x as usize]).collect();
                mul.push(index(&c) as u32);
            }
        }
        Self::from_table_trusted(perms.len(), mul, labels)
    }

    /// The alternating group on `q` points, re-indexed from [`Self::symmetric`].
    pub fn alternating(q: usize) -> Self {
        let s = Self::symmetric(q);
        let even = ElemSet::from_elements(
            s.size,
            lex_permutations(q)
                .iter()
                .enumerate()
                .filter(|(_, p)| permutation_parity(p) == 0)
                .map(|(i, _)| ElementId::new(i)),
        );
        s.restrict(&even)
    }

    /// Even permutations of `S_q` as a subset of [`Self::symmetric`].
    pub fn even_permutations(q: usize) -> ElemSet {
        let perms = lex_permutations(q);
        ElemSet::from_elements(
            perms.len(),
            perms.iter().enumerate().filter(|(_, p)| permutation_parity(p) == 0).map(|(i, _)| ElementId::new(i)),
        )
    }

    /// Direct product; `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &BinaryGroupTable) -> Self {
        let (k1, k2) = (self.size, other.size);
        let mut labels = Vec::with_capacity(k1 * k2);
        for a in 0..k1 {
            for b in 0..k2 {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
            }
        }
        Self::build(k1 * k2, labels, |x, y| {
            let a = self.mul[(x / k2) * k1 + y / k2] as usize;
            let b = other.mul[(x % k2) * k2 + y % k2] as usize;
            a * k2 + b
        })
    }

    /// The subgroup on `set`, re-indexed in increasing order of the
    /// original indices. `set` must be a subgroup.
    pub fn restrict(&self, set: &ElemSet) -> Self {
        let members = set.to_vec();
        let mut pos = vec![u32::MAX; self.size];
        for (i, e) in members.iter().enumerate() {
            pos[e.index()] = i as u32;
        }
        let labels = members.iter().map(|e| self.labels[e.index()].clone()).collect();
        Self::build(members.len(), labels, |x, y| pos[self.op(members[x], members[y]).index()] as usize)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> ElementId {
        self.id
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels[e.index()]
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size).map(ElementId::new)
    }

    #[inline]
    pub fn op(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.mul[a.index() * self.size + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        ElementId(self.inv[a.index()])
    }

    pub fn product<I: IntoIterator<Item = ElementId>>(&self, items: I) -> ElementId {
        items.into_iter().fold(self.id, |acc, x| self.op(acc, x))
    }

    pub fn pow(&self, a: ElementId, e: usize) -> ElementId {
        (0..e).fold(self.id, |acc, _| self.op(acc, a))
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        let mut x = a;
        let mut m = 1;
        while x != self.id {
            x = self.op(x, a);
            m += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn is_central(&self, c: ElementId) -> bool {
        self.elements().all(|a| self.op(a, c) == self.op(c, a))
    }

    pub fn center(&self) -> ElemSet {
        ElemSet::from_elements(self.size, self.elements().filter(|&c| self.is_central(c)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.size)
    }

    pub fn is_automorphism(&self, f: &PermutationMap) -> bool {
        self.automorphism_violation(f).is_none()
    }

    /// First pair `(x, y)` with `f(xy) != f(x) f(y)`.
    pub fn automorphism_violation(&self, f: &PermutationMap) -> Option<(ElementId, ElementId)> {
        if f.len() != self.size {
            return Some((ElementId(0), ElementId(0)));
        }
        for x in self.elements() {
            for y in self.elements() {
                if f.apply(self.op(x, y)) != self.op(f.apply(x), f.apply(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Subgroup generated by `gens` (the trivial subgroup when empty).
    pub fn generate(&self, gens: &[ElementId]) -> ElemSet {
        let mut set = ElemSet::singleton(self.size, self.id);
        let mut queue: VecDeque<ElementId> = VecDeque::from([self.id]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.op(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        set.contains(self.id) && set.iter().all(|a| set.iter().all(|b| set.contains(self.op(a, b))))
    }

    /// Elementwise product `XY`.
    pub fn set_product(&self, x: &ElemSet, y: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.size);
        for a in x.iter() {
            for b in y.iter() {
                out.insert(self.op(a, b));
            }
        }
        out
    }

    /// `g^-1 S g`.
    pub fn conjugate_set(&self, s: &ElemSet, g: ElementId) -> ElemSet {
        let gi = self.inv(g);
        ElemSet::from_elements(self.size, s.iter().map(|x| self.op(self.op(gi, x), g)))
    }

    pub fn is_normal(&self, h: &ElemSet) -> bool {
        self.elements().all(|g| self.conjugate_set(h, g) == *h)
    }

    /// `{g | gS = Sg}` for an arbitrary subset `S`.
    pub fn normalizer(&self, s: &ElemSet) -> ElemSet {
        ElemSet::from_elements(
            self.size,
            self.elements().filter(|&g| {
                let gs = ElemSet::from_elements(self.size, s.iter().map(|x| self.op(g, x)));
                let sg = ElemSet::from_elements(self.size, s.iter().map(|x| self.op(x, g)));
                gs == sg
            }),
        )
    }

    /// `[H, K]`, generated by commutators `h^-1 k^-1 h k`.
    pub fn commutator(&self, h: &ElemSet, k: &ElemSet) -> ElemSet {
        let mut gens = BTreeSet::new();
        for a in h.iter() {
            for b in k.iter() {
                let c = self.op(self.op(self.inv(a), self.inv(b)), self.op(a, b));
                gens.insert(c);
            }
        }
        self.generate(&gens.into_iter().collect::<Vec<_>>())
    }

    /// Derived series `G = G0 > G1 > ...` until it stabilizes.
    pub fn derived_series(&self) -> Vec<ElemSet> {
        let mut series = vec![ElemSet::full(self.size)];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator(last, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// Lower central series `G = G1 > [G1, G] > ...` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<ElemSet> {
        let full = ElemSet::full(self.size);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator(last, &full);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().len() == 1
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().len() == 1
    }

    /// Every subgroup, sorted by size then members.
    pub fn all_subgroups(&self) -> Vec<ElemSet> {
        let trivial = self.generate(&[]);
        let mut found: BTreeSet<ElemSet> = BTreeSet::new();
        let mut queue: VecDeque<(ElemSet, Vec<ElementId>)> = VecDeque::new();
        found.insert(trivial.clone());
        queue.push_back((trivial, Vec::new()));
        while let Some((s, gens)) = queue.pop_front() {
            for x in self.elements() {
                if s.contains(x) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let t = self.generate(&g2);
                if found.insert(t.clone()) {
                    queue.push_back((t, g2));
                }
            }
        }
        found.into_iter().collect()
    }

    /// Multiset of element orders, sorted; a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// A small generating set chosen greedily, preferring high-order elements.
    pub fn generating_set(&self) -> Vec<ElementId> {
        let mut order: Vec<ElementId> = self.elements().collect();
        order.sort_by_key(|&a| (core::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = self.generate(&[]);
        for a in order {
            if span.len() == self.size {
                break;
            }
            if !span.contains(a) {
                gens.push(a);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// An isomorphism `self -> other` as an image vector, found by
    /// backtracking over images of a generating set.
    pub fn find_isomorphism(&self, other: &BinaryGroupTable) -> Option<PermutationMap> {
        if self.size != other.size || self.order_profile() != other.order_profile() {
            return None;
        }
        let gens = self.generating_set();
        let candidates: Vec<Vec<ElementId>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                other.elements().filter(|&h| other.element_order(h) == o).collect()
            })
            .collect();
        let mut choice = vec![ElementId(0); gens.len()];
        self.iso_search(other, &gens, &candidates, &mut choice, 0)
    }

    fn iso_search(
        &self,
        other: &BinaryGroupTable,
        gens: &[ElementId],
        cands: &[Vec<ElementId>],
        choice: &mut Vec<ElementId>,
        depth: usize,
    ) -> Option<PermutationMap> {
        if depth == gens.len() {
            return self.extend_to_isomorphism(other, gens, choice);
        }
        for &h in &cands[depth] {
            choice[depth] = h;
            // Prune: images chosen so far must generate a subgroup of the
            // same size as the preimages do.
            if self.generate(&gens[..=depth]).len() != other.generate(&choice[..=depth]).len() {
                continue;
            }
            if let Some(m) = self.iso_search(other, gens, cands, choice, depth + 1) {
                return Some(m);
            }
        }
        None
    }

    fn extend_to_isomorphism(
        &self,
        other: &BinaryGroupTable,
        gens: &[ElementId],
        images: &[ElementId],
    ) -> Option<PermutationMap> {
        let mut map = vec![u32::MAX; self.size];
        map[self.id.index()] = other.id.0;
        let mut queue = VecDeque::from([self.id]);
        while let Some(x) = queue.pop_front() {
            let fx = ElementId(map[x.index()]);
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.op(x, g);
                let fy = other.op(fx, h);
                if map[y.index()] == u32::MAX {
                    map[y.index()] = fy.0;
                    queue.push_back(y);
                } else if map[y.index()] != fy.0 {
                    return None;
                }
            }
        }
        let f = PermutationMap::new(map).ok()?;
        for x in self.elements() {
            for y in self.elements() {
                if f.apply(self.op(x, y)) != other.op(f.apply(x), f.apply(y)) {
                    return None;
                }
            }
        }
        Some(f)
    }

    pub fn is_isomorphic(&self, other: &BinaryGroupTable) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// All automorphisms, by brute force over generator images.
    pub fn automorphisms(&self) -> Vec<PermutationMap> {
        let gens = self.generating_set();
        let mut out = Vec::new();
        let mut choice = vec![ElementId(0); gens.len()];
        self.all_auts(&gens, &mut choice, 0, &mut out);
        out.sort();
        out
    }

    fn all_auts(&self, gens: &[ElementId], choice: &mut Vec<ElementId>, depth: usize, out: &mut Vec<PermutationMap>) {
        if depth == gens.len() {
            if let Some(f) = self.extend_to_isomorphism(self, gens, choice) {
                out.push(f);
            }
            return;
        }
        let o = self.element_order(gens[depth]);
        for h in self.elements() {
            if self.element_order(h) == o {
                choice[depth] = h;
                self.all_auts(gens, choice, depth + 1, out);
            }
        }
    }
}

fn power_label(prefix: &str, gen: &str, e: usize) -> String {
    match (prefix.is_empty(), e) {
        (true, 0) => "e".into(),
        (false, 0) => prefix.into(),
        (_, 1) => format!("{prefix}{gen}"),
        _ => format!("{prefix}{gen}{e}"),
    }
}

/// All permutations of `0..q` as image vectors, in lexicographic order.
pub fn lex_permutations(q: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (0..q as u32).collect();
    let mut out = vec![cur.clone()];
    loop {
        // Standard next-permutation step.
        let Some(i) = (1..q).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..q).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// 0 for even permutations, 1 for odd.
pub fn permutation_parity(p: &[u32]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}
