//! Independent oracles and random generators shared by the integration tests.
//!
//! Nothing here calls the library's closure, Green's or intersection code;
//! everything is recomputed from plain maps so the tests check the library
//! against a separate implementation.

#![allow(dead_code)]

pub mod cases;

use std::collections::{BTreeSet, HashSet};

use invsemi::bicyclic::BicyclicElement;
use invsemi::finite::PartialInjection;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x1b5e_2024;

/// Seeded generator; the seed comes from `INVSEMI_TEST_SEED` if set and is printed.
pub fn rng(label: &str) -> ChaCha8Rng {
    let seed = std::env::var("INVSEMI_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    println!("[{label}] seed = {seed}");
    ChaCha8Rng::seed_from_u64(seed)
}

/// A plain image vector: `m[i] = Some(j)` when `i ↦ j`.
pub type Map = Vec<Option<usize>>;

pub fn to_map(p: &PartialInjection) -> Map {
    (0..p.degree()).map(|i| p.apply(i)).collect()
}

pub fn from_map(m: &Map) -> PartialInjection {
    PartialInjection::new(m.len(), m.iter().enumerate().filter_map(|(i, j)| j.map(|j| (i, j)))).unwrap()
}

/// First `a`, then `b`.
pub fn compose(a: &Map, b: &Map) -> Map {
    a.iter().map(|x| x.and_then(|j| b[j])).collect()
}

pub fn inverse(a: &Map) -> Map {
    let mut out = vec![None; a.len()];
    for (i, j) in a.iter().enumerate() {
        if let Some(j) = j {
            out[*j] = Some(i);
        }
    }
    out
}

pub fn is_idempotent(a: &Map) -> bool {
    compose(a, a) == *a
}

/// Every injective partial map on `n` points, by brute force over all image vectors.
pub fn all_partial_injections(n: usize) -> Vec<Map> {
    let mut out = Vec::new();
    let mut current: Map = vec![None; n];
    fn rec(i: usize, n: usize, current: &mut Map, used: &mut Vec<bool>, out: &mut Vec<Map>) {
        if i == n {
            out.push(current.clone());
            return;
        }
        current[i] = None;
        rec(i + 1, n, current, used, out);
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                current[i] = Some(j);
                rec(i + 1, n, current, used, out);
                used[j] = false;
            }
        }
        current[i] = None;
    }
    rec(0, n, &mut current, &mut vec![false; n], &mut out);
    out
}

/// Naive fixed point: keep multiplying everything by everything until nothing new appears.
pub fn naive_closure(gens: &[Map]) -> BTreeSet<Map> {
    let mut set: BTreeSet<Map> = gens.iter().cloned().chain(gens.iter().map(inverse)).collect();
    loop {
        let items: Vec<Map> = set.iter().cloned().collect();
        let mut grew = false;
        for a in &items {
            for b in &items {
                if set.insert(compose(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

pub fn random_map(rng: &mut impl Rng, n: usize) -> Map {
    let mut targets: Vec<usize> = (0..n).collect();
    targets.shuffle(rng);
    let density = rng.gen_range(0.4..=1.0);
    (0..n).map(|i| if rng.gen_bool(density) { Some(targets[i]) } else { None }).collect()
}

/// 1 to 3 random generators of degree 2 to 4.
pub fn random_generators(rng: &mut impl Rng) -> Vec<Map> {
    let n = rng.gen_range(2..=4);
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| random_map(rng, n)).collect()
}

/// `S¹ a S¹` as a set.
pub fn two_sided_ideal(s: &BTreeSet<Map>, a: &Map) -> BTreeSet<Map> {
    let mut out = BTreeSet::new();
    let with_one: Vec<Option<&Map>> = std::iter::once(None).chain(s.iter().map(Some)).collect();
    for x in &with_one {
        let xa = match x {
            Some(x) => compose(x, a),
            None => a.clone(),
        };
        for y in &with_one {
            out.insert(match y {
                Some(y) => compose(&xa, y),
                None => xa.clone(),
            });
        }
    }
    out
}

/// Bicyclic product with the pair rule, written out directly.
pub fn bicyclic_mul(p: (u64, u64), q: (u64, u64)) -> (u64, u64) {
    let (a, b) = p;
    let (c, d) = q;
    if b >= c {
        (a, d + b - c)
    } else {
        (a + c - b, d)
    }
}

/// Elements of `⟨gens⟩` with coordinates `≤ bound`, explored inside coordinates
/// `≤ limit` by extending on both sides with generators and inverses.
pub fn bicyclic_oracle(gens: &[(u64, u64)], bound: u64, limit: u64) -> BTreeSet<(u64, u64)> {
    let letters: Vec<(u64, u64)> = gens.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let mut seen: HashSet<(u64, u64)> = letters.iter().copied().collect();
    let mut stack: Vec<(u64, u64)> = seen.iter().copied().collect();
    while let Some(p) = stack.pop() {
        for &l in &letters {
            for q in [bicyclic_mul(p, l), bicyclic_mul(l, p)] {
                if q.0.max(q.1) <= limit && seen.insert(q) {
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().filter(|&(a, b)| a <= bound && b <= bound).collect()
}

pub fn pairs(gens: &[BicyclicElement]) -> Vec<(u64, u64)> {
    gens.iter().map(|p| (p.a, p.b)).collect()
}

pub fn random_bicyclic_gens(rng: &mut impl Rng, coord: u64, max_gens: usize, want_nonidempotent: bool) -> Vec<BicyclicElement> {
    loop {
        let count = rng.gen_range(1..=max_gens);
        let gens: Vec<BicyclicElement> = (0..count)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    BicyclicElement::idempotent(rng.gen_range(0..=coord))
                } else {
                    BicyclicElement::new(rng.gen_range(0..=coord), rng.gen_range(0..=coord))
                }
            })
            .collect();
        if !want_nonidempotent || gens.iter().any(|g| !g.is_idempotent()) {
            return gens;
        }
    }
}

/// Interval walk of a word over `x` / `X`: `(lo, hi, t)`.
pub fn walk(word: &str) -> (i64, i64, i64) {
    let (mut lo, mut hi, mut t) = (0i64, 0i64, 0i64);
    for c in word.chars() {
        t += if c == 'x' { 1 } else { -1 };
        lo = lo.min(t);
        hi = hi.max(t);
    }
    (lo, hi, t)
}

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| if rng.gen_bool(0.5) { 'x' } else { 'X' }).collect()
}

/// The bicyclic value of a word with `x ↦ (1, 0)`, computed letter by letter.
pub fn bicyclic_value(word: &str) -> (u64, u64) {
    word.chars()
        .map(|c| if c == 'x' { (1, 0) } else { (0, 1) })
        .reduce(bicyclic_mul)
        .expect("nonempty word")
}
