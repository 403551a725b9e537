//! The bicyclic monoid `B = ⟨x : xx⁻¹ ≥ x⁻¹x⟩` as pairs `(a, b) = x⁻ᵃxᵇ`,
//! with bounded closures of finitely generated inverse subsemigroups,
//! finite generating sets and intersections.
//!
//! Anything computed from a bounded closure is exact only up to its bound;
//! results record the bound and escape cap that were used.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_invariant, Error, Result};

/// Default escape cap: derivations may pass through coordinates up to `3·N`.
pub const DEFAULT_ESCAPE_CAP: u64 = 3;

/// `x⁻ᵃxᵇ`; JSON form `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u64, u64)", into = "(u64, u64)")]
pub struct BicyclicElement {
    pub a: u64,
    pub b: u64,
}

impl From<(u64, u64)> for BicyclicElement {
    fn from((a, b): (u64, u64)) -> Self {
        BicyclicElement { a, b }
    }
}

impl From<BicyclicElement> for (u64, u64) {
    fn from(p: BicyclicElement) -> Self {
        (p.a, p.b)
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl BicyclicElement {
    pub const IDENTITY: BicyclicElement = BicyclicElement { a: 0, b: 0 };
    pub const X: BicyclicElement = BicyclicElement { a: 0, b: 1 };

    pub fn new(a: u64, b: u64) -> Self {
        BicyclicElement { a, b }
    }

    /// `e_i = x⁻ⁱxⁱ`.
    pub fn idempotent(i: u64) -> Self {
        BicyclicElement { a: i, b: i }
    }

    pub fn multiply(self, q: BicyclicElement) -> BicyclicElement {
        let m = self.b.max(q.a);
        BicyclicElement { a: self.a + m - self.b, b: q.b + m - q.a }
    }

    pub fn invert(self) -> BicyclicElement {
        BicyclicElement { a: self.b, b: self.a }
    }

    pub fn is_idempotent(self) -> bool {
        self.a == self.b
    }

    /// Image in the maximal group image `B/σ ≅ ℤ`: the exponent sum.
    pub fn sigma_value(self) -> i64 {
        self.b as i64 - self.a as i64
    }

    pub fn power(self, r: u64) -> Result<BicyclicElement> {
        if r == 0 {
            return Err(Error::IllFormed("power 0 has no meaning in a semigroup".into()));
        }
        let mut acc = self;
        for _ in 1..r {
            acc = acc.multiply(self);
        }
        if self.b >= self.a {
            let expected = BicyclicElement::new(self.a, self.a + r * (self.b - self.a));
            ensure_invariant!(acc == expected, "power of {self} is {acc}, expected {expected}");
        }
        Ok(acc)
    }

    fn max_coord(self) -> u64 {
        self.a.max(self.b)
    }
}

/// Elements of `⟨gens⟩` with coordinates `≤ bound`, reached by derivations
/// that never leave coordinates `≤ cap·bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedClosure {
    pub bound: u64,
    pub cap: u64,
    pub members: BTreeSet<BicyclicElement>,
}

impl BoundedClosure {
    pub fn contains(&self, p: &BicyclicElement) -> bool {
        self.members.contains(p)
    }

    pub fn idempotents(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().filter(|p| p.is_idempotent()).map(|p| p.a)
    }
}

fn check_gens(gens: &[BicyclicElement], bound: u64, cap: u64) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::IllFormed("generator list is empty".into()));
    }
    if bound == 0 || cap == 0 {
        return Err(Error::IllFormed("bound and escape cap must be positive".into()));
    }
    if let Some(g) = gens.iter().find(|g| g.max_coord() > bound) {
        return Err(Error::Precondition(format!("generator {g} exceeds the bound {bound}")));
    }
    Ok(())
}

pub fn bounded_closure(gens: &[BicyclicElement], bound: u64, cap: u64) -> Result<BoundedClosure> {
    check_gens(gens, bound, cap)?;
    let limit = cap * bound;
    let side = (limit + 1) as usize;
    let cell = |p: BicyclicElement| p.a as usize * side + p.b as usize;

    let mut letters: Vec<BicyclicElement> = gens.iter().flat_map(|&g| [g, g.invert()]).collect();
    letters.sort_unstable();
    letters.dedup();
    let mut seen = vec![false; side * side];
    let mut stack = Vec::new();
    for &l in &letters {
        if !seen[cell(l)] {
            seen[cell(l)] = true;
            stack.push(l);
        }
    }
    while let Some(p) = stack.pop() {
        for &l in &letters {
            for q in [p.multiply(l), l.multiply(p)] {
                if q.max_coord() <= limit && !seen[cell(q)] {
                    seen[cell(q)] = true;
                    stack.push(q);
                }
            }
        }
    }
    let mut members = BTreeSet::new();
    for a in 0..=bound {
        for b in 0..=bound {
            let p = BicyclicElement::new(a, b);
            if seen[cell(p)] {
                members.insert(p);
            }
        }
    }
    Ok(BoundedClosure { bound, cap, members })
}

/// Shape of an inverse subsemigroup `S` of `B`: `(k, k+m)` is in `S` with
/// `k` minimal and then `m` minimal, the idempotents of `S` at or above
/// `e_k` are the `e_{k+i+rm}` with `i` in `residues`, and `low_idempotents`
/// are the indices `< k` of idempotents in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicyclicSummary {
    pub has_nonidempotent: bool,
    pub k: Option<u64>,
    pub m: Option<u64>,
    pub residues: Vec<u64>,
    pub low_idempotents: Vec<u64>,
    /// All idempotents when `S` consists of idempotents only.
    pub idempotents: Vec<u64>,
    pub bound: u64,
    pub cap: u64,
}

impl BicyclicSummary {
    /// Whether `e_i` belongs to `S` according to the summary; exact for every
    /// `i` when the summary holds.
    pub fn has_idempotent(&self, i: u64) -> bool {
        match (self.k, self.m) {
            (Some(k), Some(m)) if i >= k => self.residues.contains(&((i - k) % m)),
            (Some(_), Some(_)) => self.low_idempotents.contains(&i),
            _ => self.idempotents.contains(&i),
        }
    }
}

pub fn structural_summary(gens: &[BicyclicElement], bound: u64, cap: u64) -> Result<BicyclicSummary> {
    check_gens(gens, bound, cap)?;
    if gens.iter().all(|g| g.is_idempotent()) {
        // products of idempotents e_i e_j = e_max(i,j) add nothing new
        let idempotents: Vec<u64> = gens.iter().map(|g| g.a).collect::<BTreeSet<_>>().into_iter().collect();
        return Ok(BicyclicSummary {
            has_nonidempotent: false,
            k: None,
            m: None,
            residues: Vec::new(),
            low_idempotents: Vec::new(),
            idempotents,
            bound,
            cap,
        });
    }
    let closure = bounded_closure(gens, bound, cap)?;
    let k = closure
        .members
        .iter()
        .filter(|p| p.b > p.a)
        .map(|p| p.a)
        .min()
        .ok_or_else(|| Error::CertificationFailed {
            bound,
            cap,
            detail: "no nonidempotent found inside the bound".into(),
        })?;
    let m = closure.members.iter().filter(|p| p.a == k && p.b > k).map(|p| p.b - k).min().expect("k is attained");

    let mut residues: BTreeSet<u64> = BTreeSet::new();
    let mut low = Vec::new();
    for i in closure.idempotents() {
        if i >= k {
            // conjugating by (e_k x^m)^s brings e_{k+sm+i} down to e_{k+i}
            residues.insert((i - k) % m);
        } else {
            low.push(i);
        }
    }
    let summary = BicyclicSummary {
        has_nonidempotent: true,
        k: Some(k),
        m: Some(m),
        residues: residues.into_iter().collect(),
        low_idempotents: low,
        idempotents: Vec::new(),
        bound,
        cap,
    };
    ensure_invariant!(closure.contains(&BicyclicElement::new(k, k + m)), "(k, k+m) missing from the closure");
    for i in 0..=bound {
        let in_closure = closure.contains(&BicyclicElement::idempotent(i));
        ensure_invariant!(
            !in_closure || summary.has_idempotent(i),
            "summary omits the idempotent e_{i}"
        );
        // every idempotent the summary predicts must be reachable, barring cap artifacts
        if summary.has_idempotent(i) && !in_closure {
            return Err(Error::CertificationFailed {
                bound,
                cap,
                detail: format!("e_{i} is predicted by the progression rule but was not reached"),
            });
        }
    }
    Ok(summary)
}

/// A finite generating set: the nonidempotent generators (as `(a, b)` with
/// `b > a`) together with those `e_j`, `j < k + m`, of `S` that the
/// nonidempotent generators do not already produce.
pub fn finite_generating_set(gens: &[BicyclicElement], bound: u64, cap: u64) -> Result<Vec<BicyclicElement>> {
    let summary = structural_summary(gens, bound, cap)?;
    let (k, m) = match (summary.k, summary.m) {
        (Some(k), Some(m)) => (k, m),
        _ => {
            return Err(Error::Precondition(
                "the subsemigroup consists of idempotents only; it is finite and generated by its elements".into(),
            ))
        }
    };
    let a: BTreeSet<BicyclicElement> = gens
        .iter()
        .filter(|g| !g.is_idempotent())
        .map(|&g| if g.b > g.a { g } else { g.invert() })
        .collect();
    let a: Vec<BicyclicElement> = a.into_iter().collect();
    let from_a = bounded_closure(&a, bound, cap)?;
    let mut out = a;
    out.extend(
        (0..k + m)
            .filter(|&j| summary.has_idempotent(j))
            .map(BicyclicElement::idempotent)
            .filter(|e| !from_a.contains(e)),
    );
    out.sort_unstable();
    let original = bounded_closure(gens, bound, cap)?;
    let regenerated = bounded_closure(&out, bound, cap)?;
    if original.members != regenerated.members {
        return Err(Error::CertificationFailed {
            bound,
            cap,
            detail: "the finite generating set does not regenerate the subsemigroup inside the bound".into(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum IntersectionCase {
    /// One side consists of idempotents only, so the intersection is finite.
    IdempotentOnly,
    /// `e_i u = e_i v` is a nonidempotent of `U ∩ V`.
    Infinite {
        u: BicyclicElement,
        v: BicyclicElement,
        u_power: BicyclicElement,
        v_power: BicyclicElement,
        idempotent: u64,
        nonidempotent: BicyclicElement,
    },
    /// No common idempotent at or above `e_threshold` inside the bound.
    Finite { threshold: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicyclicIntersection {
    pub generators: Vec<BicyclicElement>,
    pub empty: bool,
    #[serde(flatten)]
    pub case: IntersectionCase,
    pub bound: u64,
    pub cap: u64,
}

/// Generating set for `⟨U⟩ ∩ ⟨V⟩`, certified against bounded closures.
pub fn intersect(
    u_gens: &[BicyclicElement],
    v_gens: &[BicyclicElement],
    bound: u64,
    cap: u64,
) -> Result<BicyclicIntersection> {
    let cu = bounded_closure(u_gens, bound, cap)?;
    let cv = bounded_closure(v_gens, bound, cap)?;
    let meet: BTreeSet<BicyclicElement> = cu.members.intersection(&cv.members).copied().collect();
    let su = structural_summary(u_gens, bound, cap)?;
    let sv = structural_summary(v_gens, bound, cap)?;

    let (generators, case) = if !su.has_nonidempotent || !sv.has_nonidempotent {
        (meet.iter().copied().collect(), IntersectionCase::IdempotentOnly)
    } else {
        let (j, m) = (su.k.expect("set"), su.m.expect("set"));
        let (k, n) = (sv.k.expect("set"), sv.m.expect("set"));
        let u = BicyclicElement::new(j, j + m);
        let v = BicyclicElement::new(k, k + n);
        let u_power = u.power(n)?;
        let v_power = v.power(m)?;
        ensure_invariant!(u_power.sigma_value() == v_power.sigma_value(), "powers are not σ-related");
        let threshold = j.max(k);
        let common = (threshold..=bound).find(|&i| meet.contains(&BicyclicElement::idempotent(i)));
        match common {
            Some(i) => {
                let e = BicyclicElement::idempotent(i);
                let w = e.multiply(u_power);
                ensure_invariant!(w == e.multiply(v_power), "e_i u and e_i v differ");
                ensure_invariant!(!w.is_idempotent(), "e_i u is idempotent");
                if !meet.contains(&w) {
                    return Err(Error::CertificationFailed {
                        bound,
                        cap,
                        detail: format!("the common nonidempotent {w} is not reached inside the bound"),
                    });
                }
                let harvested = harvest(&meet, w, bound, cap)?;
                let generators = finite_generating_set(&harvested, bound, cap)?;
                let case = IntersectionCase::Infinite { u, v, u_power, v_power, idempotent: i, nonidempotent: w };
                (generators, case)
            }
            None => {
                let finite: Vec<BicyclicElement> = (0..threshold)
                    .map(BicyclicElement::idempotent)
                    .filter(|e| meet.contains(e))
                    .collect();
                (finite, IntersectionCase::Finite { threshold })
            }
        }
    };

    let empty = generators.is_empty();
    let regenerated: BTreeSet<BicyclicElement> =
        if empty { BTreeSet::new() } else { bounded_closure(&generators, bound, cap)?.members };
    if regenerated != meet {
        return Err(Error::CertificationFailed {
            bound,
            cap,
            detail: format!(
                "generating set yields {} elements inside the bound, the intersection has {}",
                regenerated.len(),
                meet.len()
            ),
        });
    }
    Ok(BicyclicIntersection { generators, empty, case, bound, cap })
}

/// Greedy generating set for a bounded set, seeded with a known nonidempotent:
/// nonidempotents by increasing `(b - a, a)`, then idempotents, each kept only
/// if the current generators do not already reach it.
fn harvest(
    meet: &BTreeSet<BicyclicElement>,
    seed: BicyclicElement,
    bound: u64,
    cap: u64,
) -> Result<Vec<BicyclicElement>> {
    let mut candidates: Vec<BicyclicElement> = meet.iter().copied().filter(|p| p.b > p.a).collect();
    candidates.sort_by_key(|p| (p.b - p.a, p.a));
    candidates.extend(meet.iter().copied().filter(|p| p.is_idempotent()));

    let mut gens = vec![seed];
    let mut reached = bounded_closure(&gens, bound, cap)?.members;
    for p in candidates {
        if reached.len() == meet.len() {
            break;
        }
        if !reached.contains(&p) {
            gens.push(p);
            reached = bounded_closure(&gens, bound, cap)?.members;
        }
    }
    Ok(gens)
}
