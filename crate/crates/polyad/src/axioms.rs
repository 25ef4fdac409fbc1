//! Alternative axiom systems for n-ary groups and an audit harness that
//! checks they agree with the standard definition.
//!
//! Each system is a solvability (or existence) condition decided by an
//! exhaustive scan on an associative groupoid. Systems marked as not
//! characterizing are known to admit non-groups or to reject groups; they
//! are kept for the counterexample corpus.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binary::BinaryGroupTable;
use crate::constructions::{derived, gluskin, named_example};
use crate::element::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::groupoid::{odometer, pow_u128, Limits, NaryGroupoid};

/// One axiom system. Positions and counts are 1-based as in the usual
/// notation `[a1 ... an]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomSystem {
    /// `[x a2..an] = b` and `[a1..a(n-1) y] = b`.
    Post2,
    /// `[a1..x..an] = b` with the unknown at position `i`, `1 < i < n`.
    Post1(usize),
    /// `[x1..x(n-1) a] = b` and `[a y1..y(n-1)] = b`.
    Main,
    /// `[x1..xi a(i+1)..an] = b` and `[b1..b(n-j) y1..yj] = b`.
    PrefixSuffix(usize, usize),
    /// `[x1..xi a^(n-i)] = b` and `[a^(n-j) y1..yj] = b`.
    Diagonal(usize, usize),
    /// `[a1..ak x1..xi a(k+i+1)..an] = b`.
    OneEq(usize, usize),
    /// `[a^k x1..xi a^(n-k-i)] = b`.
    OneEqDiagonal(usize, usize),
    /// `[a x1..x(n-2) c] = b`.
    Sandwich,
    /// `[a x1..x(k(n-1)-1) a] = b`.
    LongSandwich(usize),
    /// For every `a` there are words `α, β` of length `n-2` with
    /// `[b α a] = b = [a β b]` for all `b`.
    Existential,
    /// For every `a` some `ā` satisfies `[b a^(n-3) ā a] = b = [a ā a^(n-3) b]`.
    Skew,
    /// `[u1..u(k(n-1)) a] = b` and `[a v1..v(m(n-1))] = b`.
    Long(usize, usize),
    /// `[a^i b^(n-1-i) x] = b` and `[y b^(n-1-j) a^j] = b`.
    PowerPair(usize, usize),
    /// Some `d` makes `[a^i b^(n-1-i) x] = d` and `[y b^(n-1-j) a^j] = b`
    /// solvable for all `a, b`.
    DPoint(usize, usize),
    /// Some `d` makes `[a^i b^(n-1-i) x] = b` and `[y b^(n-1-j) a^j] = d`
    /// solvable for all `a, b`.
    DPointDual(usize, usize),
    /// `[x^(n-1) a] = b` and `[a y^(n-1)] = b`. Not characterizing.
    RepeatedUnknown,
    /// Every position but `i` unknown, `a` at `i`. Not characterizing.
    SingleKnown(usize),
    /// Two single-known equations at positions `i` and `j`. Characterizing
    /// only for the pair `{1, n}`.
    PositionPair(usize, usize),
}

impl AxiomSystem {
    /// Whether agreement with the group property is guaranteed on
    /// associative groupoids of arity `n`.
    pub fn is_characterizing(&self, n: usize) -> bool {
        match *self {
            AxiomSystem::RepeatedUnknown | AxiomSystem::SingleKnown(_) => false,
            AxiomSystem::PositionPair(i, j) => (i.min(j), i.max(j)) == (1, n),
            _ => true,
        }
    }

    /// Validates the parameters against the arity.
    pub fn admissible(&self, n: usize) -> Result<()> {
        let need3 = |ok: bool| {
            if n < 3 {
                Err(Error::ArityTooSmall(n))
            } else if !ok {
                Err(Error::Preconditions("parameters out of range".into()))
            } else {
                Ok(())
            }
        };
        let range = |ok: bool| if ok { Ok(()) } else { Err(Error::Preconditions("parameters out of range".into())) };
        let pos = |i: usize| (1..n).contains(&i);
        match *self {
            AxiomSystem::Post2 | AxiomSystem::Main | AxiomSystem::RepeatedUnknown => Ok(()),
            AxiomSystem::Post1(i) => need3(i > 1 && i < n),
            AxiomSystem::PrefixSuffix(i, j) | AxiomSystem::Diagonal(i, j) | AxiomSystem::PowerPair(i, j) => {
                range(pos(i) && pos(j))
            }
            AxiomSystem::OneEq(k, i) | AxiomSystem::OneEqDiagonal(k, i) => {
                need3(k >= 1 && i >= 1 && k <= n - 2 && i <= n - 2 && k + i < n)
            }
            AxiomSystem::Sandwich | AxiomSystem::Existential | AxiomSystem::Skew => need3(true),
            AxiomSystem::LongSandwich(k) => range(k >= 1 && k * (n - 1) >= 2),
            AxiomSystem::Long(k, m) => range(k >= 1 && m >= 1),
            AxiomSystem::DPoint(i, j) | AxiomSystem::DPointDual(i, j) => need3(pos(i) && pos(j)),
            AxiomSystem::SingleKnown(i) => range((1..=n).contains(&i)),
            AxiomSystem::PositionPair(i, j) => range((1..=n).contains(&i) && (1..=n).contains(&j) && i != j),
        }
    }
}

impl fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomSystem::Post2 => write!(f, "POST2"),
            AxiomSystem::Post1(i) => write!(f, "POST1({i})"),
            AxiomSystem::Main => write!(f, "MAIN"),
            AxiomSystem::PrefixSuffix(i, j) => write!(f, "PREFIX_SUFFIX({i},{j})"),
            AxiomSystem::Diagonal(i, j) => write!(f, "DIAG({i},{j})"),
            AxiomSystem::OneEq(k, i) => write!(f, "ONE_EQ({k},{i})"),
            AxiomSystem::OneEqDiagonal(k, i) => write!(f, "ONE_EQ_DIAG({k},{i})"),
            AxiomSystem::Sandwich => write!(f, "SANDWICH"),
            AxiomSystem::LongSandwich(k) => write!(f, "LONG_SANDWICH({k})"),
            AxiomSystem::Existential => write!(f, "EXISTENTIAL"),
            AxiomSystem::Skew => write!(f, "SKEW"),
            AxiomSystem::Long(k, m) => write!(f, "LONG({k},{m})"),
            AxiomSystem::PowerPair(i, j) => write!(f, "POWER_PAIR({i},{j})"),
            AxiomSystem::DPoint(i, j) => write!(f, "DPOINT({i},{j})"),
            AxiomSystem::DPointDual(i, j) => write!(f, "DPOINT_DUAL({i},{j})"),
            AxiomSystem::RepeatedUnknown => write!(f, "REPEATED"),
            AxiomSystem::SingleKnown(i) => write!(f, "SINGLE_KNOWN({i})"),
            AxiomSystem::PositionPair(i, j) => write!(f, "POSITIONS({i},{j})"),
        }
    }
}

impl FromStr for AxiomSystem {
    type Err = Error;

    /// Parses the names produced by `Display`. `DIAG` and `DPOINT` without
    /// parameters mean `(1,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownName(s.to_string());
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(p) => {
                let inner = s[p + 1..].strip_suffix(')').ok_or_else(bad)?;
                let args: Vec<usize> = inner
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<core::result::Result<_, _>>()
                    .map_err(|_| bad())?;
                (&s[..p], args)
            }
            None => (s, Vec::new()),
        };
        let name = name.to_ascii_uppercase();
        let sys = match (name.as_str(), args.as_slice()) {
            ("POST2", []) => AxiomSystem::Post2,
            ("POST1", [i]) => AxiomSystem::Post1(*i),
            ("MAIN", []) => AxiomSystem::Main,
            ("PREFIX_SUFFIX", [i, j]) => AxiomSystem::PrefixSuffix(*i, *j),
            ("DIAG", []) => AxiomSystem::Diagonal(1, 1),
            ("DIAG", [i, j]) => AxiomSystem::Diagonal(*i, *j),
            ("ONE_EQ", [k, i]) => AxiomSystem::OneEq(*k, *i),
            ("ONE_EQ_DIAG", [k, i]) => AxiomSystem::OneEqDiagonal(*k, *i),
            ("SANDWICH", []) => AxiomSystem::Sandwich,
            ("LONG_SANDWICH", [k]) => AxiomSystem::LongSandwich(*k),
            ("EXISTENTIAL", []) => AxiomSystem::Existential,
            ("SKEW", []) => AxiomSystem::Skew,
            ("LONG", [k, m]) => AxiomSystem::Long(*k, *m),
            ("POWER_PAIR", [i, j]) => AxiomSystem::PowerPair(*i, *j),
            ("DPOINT", []) => AxiomSystem::DPoint(1, 1),
            ("DPOINT", [i, j]) => AxiomSystem::DPoint(*i, *j),
            ("DPOINT_DUAL", [i, j]) => AxiomSystem::DPointDual(*i, *j),
            ("REPEATED", []) => AxiomSystem::RepeatedUnknown,
            ("SINGLE_KNOWN", [i]) => AxiomSystem::SingleKnown(*i),
            ("POSITIONS", [i, j]) => AxiomSystem::PositionPair(*i, *j),
            _ => return Err(bad()),
        };
        Ok(sys)
    }
}

/// Long products are only instantiated up to this multiple of `n-1` in
/// audits.
pub const LONG_RANGE: usize = 2;

/// Every characterizing system for arity `n`, over all admissible
/// parameters (long variants up to [`LONG_RANGE`]).
pub fn all_systems(n: usize) -> Vec<AxiomSystem> {
    let mut out = vec![AxiomSystem::Post2, AxiomSystem::Main];
    for i in 1..n {
        out.push(AxiomSystem::Post1(i));
        for j in 1..n {
            out.push(AxiomSystem::PrefixSuffix(i, j));
            out.push(AxiomSystem::Diagonal(i, j));
            out.push(AxiomSystem::OneEq(i, j));
            out.push(AxiomSystem::OneEqDiagonal(i, j));
            out.push(AxiomSystem::PowerPair(i, j));
            out.push(AxiomSystem::DPoint(i, j));
            out.push(AxiomSystem::DPointDual(i, j));
        }
    }
    out.extend([AxiomSystem::Sandwich, AxiomSystem::Existential, AxiomSystem::Skew]);
    for k in 1..=LONG_RANGE {
        out.push(AxiomSystem::LongSandwich(k));
        for m in 1..=LONG_RANGE {
            out.push(AxiomSystem::Long(k, m));
        }
    }
    out.push(AxiomSystem::PositionPair(n, 1));
    out.retain(|s| s.admissible(n).is_ok());
    out.sort();
    out
}

/// The non-characterizing variants for arity `n`.
pub fn counterexample_systems(n: usize) -> Vec<AxiomSystem> {
    let mut out = vec![AxiomSystem::RepeatedUnknown];
    out.extend((1..=n).map(AxiomSystem::SingleKnown));
    for i in 1..=n {
        for j in i + 1..=n {
            if (i, j) != (1, n) {
                out.push(AxiomSystem::PositionPair(i, j));
            }
        }
    }
    out
}

/// Scans all `k^len` tuples of unknowns, building each word with `fill`,
/// and reports whether the values cover the carrier.
fn covers(g: &NaryGroupoid, len: usize, fill: impl Fn(&[ElementId], &mut Vec<ElementId>)) -> bool {
    let k = g.size();
    let mut hit = ElemSet::empty(k);
    let mut xs = vec![ElementId(0); len];
    let mut word = Vec::new();
    loop {
        word.clear();
        fill(&xs, &mut word);
        hit.insert(g.eval_unchecked(&word));
        if hit.len() == k || !odometer(&mut xs, k) {
            return hit.len() == k;
        }
    }
}

/// Whether `pred` holds for every tuple of `len` elements.
fn for_all(k: usize, len: usize, mut pred: impl FnMut(&[ElementId]) -> bool) -> bool {
    let mut ps = vec![ElementId(0); len];
    loop {
        if !pred(&ps) {
            return false;
        }
        if !odometer(&mut ps, k) {
            return true;
        }
    }
}

/// Whether `pred` holds for some tuple of `len` elements.
fn exists(k: usize, len: usize, mut pred: impl FnMut(&[ElementId]) -> bool) -> bool {
    !for_all(k, len, |t| !pred(t))
}

fn rep(word: &mut Vec<ElementId>, a: ElementId, times: usize) {
    word.extend(std::iter::repeat_n(a, times));
}

/// The set of values `[u1 .. u(t(n-1)) a]` over all `u`.
fn long_left_values(g: &NaryGroupoid, a: ElementId, t: usize) -> ElemSet {
    let (k, n) = (g.size(), g.arity());
    let mut cur = ElemSet::from_elements(k, [a]);
    for _ in 0..t {
        let mut next = ElemSet::empty(k);
        for r in cur.iter() {
            let mut us = vec![ElementId(0); n - 1];
            let mut w = vec![ElementId(0); n];
            loop {
                w[..n - 1].copy_from_slice(&us);
                w[n - 1] = r;
                next.insert(g.op(&w));
                if !odometer(&mut us, k) {
                    break;
                }
            }
        }
        cur = next;
    }
    cur
}

fn long_right_values(g: &NaryGroupoid, a: ElementId, t: usize) -> ElemSet {
    let (k, n) = (g.size(), g.arity());
    let mut cur = ElemSet::from_elements(k, [a]);
    for _ in 0..t {
        let mut next = ElemSet::empty(k);
        for r in cur.iter() {
            let mut us = vec![ElementId(0); n - 1];
            let mut w = vec![ElementId(0); n];
            loop {
                w[0] = r;
                w[1..].copy_from_slice(&us);
                next.insert(g.op(&w));
                if !odometer(&mut us, k) {
                    break;
                }
            }
        }
        cur = next;
    }
    cur
}

/// Upper bound on the tuples visited by [`check_axiom`].
pub fn cost(system: &AxiomSystem, k: usize, n: usize) -> u128 {
    let p = |e: usize| pow_u128(k, e);
    match *system {
        AxiomSystem::Post2 | AxiomSystem::Post1(_) | AxiomSystem::SingleKnown(_) | AxiomSystem::Main => 2 * p(n),
        AxiomSystem::PositionPair(..) => 2 * p(n),
        AxiomSystem::PrefixSuffix(..) | AxiomSystem::OneEq(..) => 2 * p(n),
        AxiomSystem::Diagonal(i, j) => p(i + 1) + p(j + 1),
        AxiomSystem::OneEqDiagonal(_, i) => p(i + 1),
        AxiomSystem::Sandwich => p(n),
        AxiomSystem::LongSandwich(t) => p(t * (n - 1) + 1),
        AxiomSystem::Existential => 2 * p(n),
        AxiomSystem::Skew => 2 * p(3),
        AxiomSystem::Long(s, t) => (s + t) as u128 * p(n + 1),
        AxiomSystem::PowerPair(..) | AxiomSystem::RepeatedUnknown => 2 * p(3),
        AxiomSystem::DPoint(..) | AxiomSystem::DPointDual(..) => 2 * p(4),
    }
}

/// Decides `system` on an associative groupoid by exhaustive scan.
pub fn check_axiom(g: &NaryGroupoid, system: &AxiomSystem, limits: &Limits) -> Result<bool> {
    let (k, n) = (g.size(), g.arity());
    system.admissible(n)?;
    if let Some(v) = g.find_associativity_violation(limits)? {
        return Err(Error::NotAssociative(v));
    }
    limits.check(cost(system, k, n))?;
    Ok(decide(g, system))
}

fn decide(g: &NaryGroupoid, system: &AxiomSystem) -> bool {
    let (k, n) = (g.size(), g.arity());
    // `[a1..a(i-1) x a(i+1)..an] = b` for every choice of the knowns.
    let single_unknown = |i: usize| {
        for_all(k, n - 1, |ps| {
            covers(g, 1, |x, w| {
                w.extend_from_slice(&ps[..i - 1]);
                w.push(x[0]);
                w.extend_from_slice(&ps[i - 1..]);
            })
        })
    };
    // Every position but `i` unknown, `a` at `i`.
    let single_known = |i: usize| {
        (0..k).all(|a| {
            covers(g, n - 1, |xs, w| {
                w.extend_from_slice(&xs[..i - 1]);
                w.push(ElementId::new(a));
                w.extend_from_slice(&xs[i - 1..]);
            })
        })
    };
    let elems = || g.elements();
    match *system {
        AxiomSystem::Post2 => single_unknown(1) && single_unknown(n),
        AxiomSystem::Post1(i) => single_unknown(i),
        AxiomSystem::Main => single_known(n) && single_known(1),
        AxiomSystem::PrefixSuffix(i, j) => {
            for_all(k, n - i, |ps| {
                covers(g, i, |xs, w| {
                    w.extend_from_slice(xs);
                    w.extend_from_slice(ps);
                })
            }) && for_all(k, n - j, |ps| {
                covers(g, j, |ys, w| {
                    w.extend_from_slice(ps);
                    w.extend_from_slice(ys);
                })
            })
        }
        AxiomSystem::Diagonal(i, j) => elems().all(|a| {
            covers(g, i, |xs, w| {
                w.extend_from_slice(xs);
                rep(w, a, n - i);
            }) && covers(g, j, |ys, w| {
                rep(w, a, n - j);
                w.extend_from_slice(ys);
            })
        }),
        AxiomSystem::OneEq(kk, i) => for_all(k, n - i, |ps| {
            covers(g, i, |xs, w| {
                w.extend_from_slice(&ps[..kk]);
                w.extend_from_slice(xs);
                w.extend_from_slice(&ps[kk..]);
            })
        }),
        AxiomSystem::OneEqDiagonal(kk, i) => elems().all(|a| {
            covers(g, i, |xs, w| {
                rep(w, a, kk);
                w.extend_from_slice(xs);
                rep(w, a, n - kk - i);
            })
        }),
        AxiomSystem::Sandwich => for_all(k, 2, |ps| {
            covers(g, n - 2, |xs, w| {
                w.push(ps[0]);
                w.extend_from_slice(xs);
                w.push(ps[1]);
            })
        }),
        AxiomSystem::LongSandwich(t) => elems().all(|a| {
            covers(g, t * (n - 1) - 1, |xs, w| {
                w.push(a);
                w.extend_from_slice(xs);
                w.push(a);
            })
        }),
        AxiomSystem::Existential => elems().all(|a| {
            let mut w = vec![ElementId(0); n];
            let left = exists(k, n - 2, |alpha| {
                elems().all(|b| {
                    w[0] = b;
                    w[1..n - 1].copy_from_slice(alpha);
                    w[n - 1] = a;
                    g.op(&w) == b
                })
            });
            left && exists(k, n - 2, |beta| {
                elems().all(|b| {
                    w[0] = a;
                    w[1..n - 1].copy_from_slice(beta);
                    w[n - 1] = b;
                    g.op(&w) == b
                })
            })
        }),
        AxiomSystem::Skew => elems().all(|a| {
            elems().any(|abar| {
                elems().all(|b| {
                    let mut w = vec![b];
                    rep(&mut w, a, n - 3);
                    w.push(abar);
                    w.push(a);
                    let mut v = vec![a, abar];
                    rep(&mut v, a, n - 3);
                    v.push(b);
                    g.op(&w) == b && g.op(&v) == b
                })
            })
        }),
        AxiomSystem::Long(s, t) => {
            elems().all(|a| long_left_values(g, a, s).len() == k && long_right_values(g, a, t).len() == k)
        }
        AxiomSystem::PowerPair(i, j) => for_all(k, 2, |ab| {
            let (a, b) = (ab[0], ab[1]);
            covers_value(g, |x, w| power_left(w, a, b, i, n, x), b)
                && covers_value(g, |y, w| power_right(w, a, b, j, n, y), b)
        }),
        AxiomSystem::DPoint(i, j) => {
            let right = for_all(k, 2, |ab| covers_value(g, |y, w| power_right(w, ab[0], ab[1], j, n, y), ab[1]));
            right
                && elems().any(|d| for_all(k, 2, |ab| covers_value(g, |x, w| power_left(w, ab[0], ab[1], i, n, x), d)))
        }
        AxiomSystem::DPointDual(i, j) => {
            let left = for_all(k, 2, |ab| covers_value(g, |x, w| power_left(w, ab[0], ab[1], i, n, x), ab[1]));
            left && elems()
                .any(|d| for_all(k, 2, |ab| covers_value(g, |y, w| power_right(w, ab[0], ab[1], j, n, y), d)))
        }
        AxiomSystem::RepeatedUnknown => elems().all(|a| {
            covers(g, 1, |x, w| {
                rep(w, x[0], n - 1);
                w.push(a);
            }) && covers(g, 1, |y, w| {
                w.push(a);
                rep(w, y[0], n - 1);
            })
        }),
        AxiomSystem::SingleKnown(i) => single_known(i),
        AxiomSystem::PositionPair(i, j) => single_known(i) && single_known(j),
    }
}

/// `[a^i b^(n-1-i) x]`.
fn power_left(w: &mut Vec<ElementId>, a: ElementId, b: ElementId, i: usize, n: usize, x: ElementId) {
    rep(w, a, i);
    rep(w, b, n - 1 - i);
    w.push(x);
}

/// `[y b^(n-1-j) a^j]`.
fn power_right(w: &mut Vec<ElementId>, a: ElementId, b: ElementId, j: usize, n: usize, y: ElementId) {
    w.push(y);
    rep(w, b, n - 1 - j);
    rep(w, a, j);
}

/// Whether some single unknown makes the word equal `target`.
fn covers_value(g: &NaryGroupoid, fill: impl Fn(ElementId, &mut Vec<ElementId>), target: ElementId) -> bool {
    let mut w = Vec::new();
    g.elements().any(|x| {
        w.clear();
        fill(x, &mut w);
        g.op(&w) == target
    })
}

/// Number of tuples `(x1..xi)` with `[x1..xi tail] = b`, where `tail` has
/// length `n-i`.
pub fn count_solutions(g: &NaryGroupoid, i: usize, tail: &[ElementId], b: ElementId, limits: &Limits) -> Result<u128> {
    let (k, n) = (g.size(), g.arity());
    if i == 0 || i >= n || tail.len() != n - i {
        return Err(Error::Preconditions(format!("need 1 <= i <= n-1 and a tail of length n-i, got i={i}")));
    }
    if let Some(&bad) = tail.iter().chain([&b]).find(|x| x.index() >= k) {
        return Err(Error::ElementOutOfRange { index: bad.index(), size: k });
    }
    limits.check(pow_u128(k, i))?;
    let mut xs = vec![ElementId(0); i];
    let mut w = vec![ElementId(0); n];
    w[i..].copy_from_slice(tail);
    let mut count = 0u128;
    loop {
        w[..i].copy_from_slice(&xs);
        if g.op(&w) == b {
            count += 1;
        }
        if !odometer(&mut xs, k) {
            return Ok(count);
        }
    }
}

/// Whether the equations `[x1..x(n-1) a] = b` and `[a y1..y(n-1)] = b`
/// have exactly one solution each for all `a, b`.
pub fn main_uniquely_solvable(g: &NaryGroupoid) -> bool {
    let (k, n) = (g.size(), g.arity());
    let mut counts = vec![0usize; k];
    for right in [true, false] {
        for a in g.elements() {
            counts.iter_mut().for_each(|c| *c = 0);
            let mut xs = vec![ElementId(0); n - 1];
            let mut w = vec![ElementId(0); n];
            loop {
                if right {
                    w[..n - 1].copy_from_slice(&xs);
                    w[n - 1] = a;
                } else {
                    w[0] = a;
                    w[1..].copy_from_slice(&xs);
                }
                counts[g.op(&w).index()] += 1;
                if !odometer(&mut xs, k) {
                    break;
                }
            }
            if counts.iter().any(|&c| c != 1) {
                return false;
            }
        }
    }
    true
}

/// One groupoid of the audit corpus.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub groupoid: NaryGroupoid,
}

/// All associative binary operations on `k` points, as flattened tables.
pub fn binary_semigroups(k: usize) -> Vec<Vec<u32>> {
    let cells = k * k;
    let mut out = Vec::new();
    let mut t = vec![ElementId(0); cells];
    loop {
        let m = |x: usize, y: usize| t[x * k + y].index();
        let assoc = (0..k).all(|x| (0..k).all(|y| (0..k).all(|z| m(m(x, y), z) == m(x, m(y, z)))));
        if assoc {
            out.push(t.iter().map(|e| e.0).collect());
        }
        if !odometer(&mut t, k) {
            return out;
        }
    }
}

/// The n-ary groupoid `[x1..xn] = x1 x2 .. xn` over a binary semigroup.
pub fn derived_from_semigroup(k: usize, table: &[u32], n: usize) -> Result<NaryGroupoid> {
    let total = pow_u128(k, n) as usize;
    let mut out = Vec::with_capacity(total);
    let mut args = vec![ElementId(0); n];
    for _ in 0..total {
        let v = args[1..].iter().fold(args[0].0, |acc, x| table[acc as usize * k + x.index()]);
        out.push(v);
        odometer(&mut args, k);
    }
    NaryGroupoid::from_table(k, n, out, None)
}

/// The audit corpus for `k <= max_k`, `3 <= n <= max_n`.
///
/// It holds the small catalog groups, every derived and Gluskin group over
/// cyclic groups of order `<= max_k`, the projection semigroups, the
/// derived groups over `C(n-1)`, and `random` groupoids drawn from the
/// associative ones: each draw perturbs a random binary table until it is
/// associative (by resampling from the enumerated semigroups, which is the
/// fixed point of that filter) and derives an n-ary operation from it.
pub fn audit_corpus(max_k: usize, max_n: usize, random: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut push = |name: String, groupoid: NaryGroupoid| out.push(CorpusEntry { name, groupoid });
    for name in ["T3", "Vn(2)", "Vn(3)"] {
        let g = named_example(name)?;
        if g.size() <= max_k && g.arity() <= max_n {
            push(name.to_string(), g.groupoid().clone());
        }
    }
    for n in 3..=max_n {
        for k in 1..=max_k {
            let base = BinaryGroupTable::cyclic(k);
            for c in base.elements() {
                push(format!("derived(Z{k},{n},c={})", c.index()), derived(&base, c, n)?.groupoid().clone());
            }
            for beta in base.automorphisms() {
                for d in base.elements() {
                    if let Ok(g) = gluskin(&base, &beta, d, n) {
                        push(format!("gluskin(Z{k},{n},{:?},d={})", beta.images(), d.index()), g.groupoid().clone());
                    }
                }
            }
            if k >= 2 {
                push(format!("projection_last({k},{n})"), NaryGroupoid::projection(k, n, false)?);
                push(format!("projection_first({k},{n})"), NaryGroupoid::projection(k, n, true)?);
            }
        }
        let c = BinaryGroupTable::cyclic(n - 1);
        push(format!("derived(C{},{n})", n - 1), derived(&c, c.identity(), n)?.groupoid().clone());
    }
    let semigroups: Vec<(usize, Vec<Vec<u32>>)> = (1..=max_k).map(|k| (k, binary_semigroups(k))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..random {
        let (k, tables) = &semigroups[(rng.next_u64() % semigroups.len() as u64) as usize];
        let t = &tables[(rng.next_u64() % tables.len() as u64) as usize];
        let n = 3 + (rng.next_u64() % (max_n.saturating_sub(2)).max(1) as u64) as usize;
        push(format!("semigroup#{r}(k={k},n={n})"), derived_from_semigroup(*k, t, n)?);
    }
    Ok(out)
}

/// Verdicts of every system on one groupoid.
#[derive(Clone, Debug)]
pub struct AuditRow {
    pub name: String,
    pub size: usize,
    pub arity: usize,
    pub is_group: bool,
    pub systems_checked: usize,
    /// Characterizing systems whose verdict differs from `is_group`.
    pub disagreements: Vec<AxiomSystem>,
    /// Verdicts of the non-characterizing variants.
    pub counterexamples: Vec<(AxiomSystem, bool)>,
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().map(|r| r.disagreements.len()).sum()
    }

    pub fn groups(&self) -> usize {
        self.rows.iter().filter(|r| r.is_group).count()
    }
}

/// Runs every characterizing system on every corpus entry and records
/// where a verdict differs from the group property.
pub fn equivalence_audit(corpus: &[CorpusEntry], limits: &Limits) -> Result<AuditReport> {
    let mut rows = Vec::with_capacity(corpus.len());
    for entry in corpus {
        let g = &entry.groupoid;
        let n = g.arity();
        let is_group = g.is_group(limits)?;
        let systems = all_systems(n);
        let mut disagreements = Vec::new();
        for s in &systems {
            if check_axiom(g, s, limits)? != is_group {
                disagreements.push(*s);
            }
        }
        let mut counterexamples = Vec::new();
        for s in counterexample_systems(n) {
            counterexamples.push((s, check_axiom(g, &s, limits)?));
        }
        rows.push(AuditRow {
            name: entry.name.clone(),
            size: g.size(),
            arity: n,
            is_group,
            systems_checked: systems.len(),
            disagreements,
            counterexamples,
        });
    }
    Ok(AuditReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ids;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn names_round_trip() {
        for n in 2..=5 {
            for s in all_systems(n).into_iter().chain(counterexample_systems(n)) {
                assert_eq!(s.to_string().parse::<AxiomSystem>().unwrap(), s);
            }
        }
        assert_eq!("DIAG".parse::<AxiomSystem>().unwrap(), AxiomSystem::Diagonal(1, 1));
        assert!("NOPE(1)".parse::<AxiomSystem>().is_err());
    }

    #[test]
    fn arity_requirements() {
        let z = derived(&BinaryGroupTable::cyclic(3), ElementId(0), 2).unwrap();
        assert!(matches!(check_axiom(z.groupoid(), &AxiomSystem::Sandwich, &lim()), Err(Error::ArityTooSmall(2))));
        assert!(check_axiom(z.groupoid(), &AxiomSystem::Main, &lim()).unwrap());
        assert!(check_axiom(z.groupoid(), &AxiomSystem::Long(2, 2), &lim()).unwrap());
    }

    #[test]
    fn non_associative_is_rejected() {
        let g = derived(&BinaryGroupTable::cyclic(2), ElementId(0), 3).unwrap();
        let bad = g.groupoid().perturbed(&ids(&[0, 0, 1]), ElementId(0)).unwrap();
        assert!(matches!(check_axiom(&bad, &AxiomSystem::Main, &lim()), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn projections_pass_only_the_weak_variants() {
        for (k, n) in [(2, 3), (3, 3), (2, 4), (3, 4)] {
            let p = NaryGroupoid::projection(k, n, false).unwrap();
            for s in all_systems(n) {
                assert!(!check_axiom(&p, &s, &lim()).unwrap(), "{s} on last projection");
            }
            for i in 1..n {
                assert!(check_axiom(&p, &AxiomSystem::SingleKnown(i), &lim()).unwrap());
            }
            assert!(!check_axiom(&p, &AxiomSystem::SingleKnown(n), &lim()).unwrap());
            assert!(check_axiom(&p, &AxiomSystem::PositionPair(1, 2), &lim()).unwrap());
            let q = NaryGroupoid::projection(k, n, true).unwrap();
            assert!(check_axiom(&q, &AxiomSystem::PositionPair(2, n), &lim()).unwrap());
        }
    }

    #[test]
    fn repeated_unknown_fails_over_c_n_minus_1() {
        for n in 3..=5 {
            let c = BinaryGroupTable::cyclic(n - 1);
            let g = derived(&c, c.identity(), n).unwrap();
            assert!(!check_axiom(g.groupoid(), &AxiomSystem::RepeatedUnknown, &lim()).unwrap());
            assert!(check_axiom(g.groupoid(), &AxiomSystem::Main, &lim()).unwrap());
        }
        let z5 = derived(&BinaryGroupTable::cyclic(5), ElementId(0), 3).unwrap();
        assert!(check_axiom(z5.groupoid(), &AxiomSystem::RepeatedUnknown, &lim()).unwrap());
    }

    #[test]
    fn solution_counts() {
        let t3 = named_example("T3").unwrap();
        for a in t3.elements() {
            for b in t3.elements() {
                assert_eq!(count_solutions(t3.groupoid(), 2, &[a], b, &lim()).unwrap(), 3);
                assert_eq!(count_solutions(t3.groupoid(), 1, &[a, a], b, &lim()).unwrap(), 1);
            }
        }
        let r = named_example("Rusakov5").unwrap();
        let tail = ids(&[3, 5]);
        assert_eq!(count_solutions(r.groupoid(), 3, &tail, ElementId(1), &lim()).unwrap(), 64);
        assert!(count_solutions(r.groupoid(), 5, &[], ElementId(1), &lim()).is_err());
    }

    #[test]
    fn solutions_split_by_suffix() {
        // Fixing x2..xi leaves exactly one x1.
        let g = named_example("derived(S3,4)").unwrap();
        let (k, n) = (g.size(), g.arity());
        let tail = ids(&[4]);
        for b in g.elements() {
            for_all(k, n - 2, |suffix| {
                let mut w: Vec<ElementId> = vec![ElementId(0)];
                w.extend_from_slice(suffix);
                w.extend_from_slice(&tail);
                let hits = g.elements().filter(|&x| {
                    w[0] = x;
                    g.op(&w) == b
                });
                assert_eq!(hits.count(), 1);
                true
            });
        }
    }

    #[test]
    fn unique_solvability_only_for_trivial_carrier() {
        for k in 1..=3 {
            let g = derived(&BinaryGroupTable::cyclic(k), ElementId(0), 3).unwrap();
            assert_eq!(main_uniquely_solvable(g.groupoid()), k == 1);
        }
    }

    #[test]
    fn semigroup_enumeration() {
        assert_eq!(binary_semigroups(2).len(), 8);
        assert_eq!(binary_semigroups(3).len(), 113);
    }

    #[test]
    fn small_audit() {
        let corpus = audit_corpus(3, 4, 40, 7).unwrap();
        let report = equivalence_audit(&corpus, &lim()).unwrap();
        assert_eq!(report.disagreements(), 0);
        assert!(report.groups() > 0 && report.groups() < report.rows.len());
    }
}
