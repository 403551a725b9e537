//! Monogenic inverse semigroups.
//!
//! Elements of the free monogenic inverse semigroup FI₁ are Munn triples
//! `(lo, hi, t)`: the interval visited by the exponent walk of a word over
//! `x` and `X = x⁻¹`, and the position where it ends. Quotients by one
//! relation are handled through an explicit model: triples of span `< k`
//! stay distinct, and the ideal of triples of span `≥ k` maps onto a cyclic
//! group, the integers, or the bicyclic monoid. The model is checked against
//! congruence closure on a ball of triples before it is used.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bicyclic::{self, BicyclicElement};
use crate::error::{ensure_invariant, Error, Result};
use crate::finite::{Dsu, FiniteInvSemigroup, PartialInjection};
use crate::howson;

/// Extra span allowed above the relation when saturating.
pub const SPAN_MARGIN: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct MunnTriple {
    lo: i64,
    hi: i64,
    t: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleRepr {
    lo: i64,
    hi: i64,
    t: i64,
}

impl TryFrom<TripleRepr> for MunnTriple {
    type Error = Error;

    fn try_from(r: TripleRepr) -> Result<Self> {
        MunnTriple::new(r.lo, r.hi, r.t)
    }
}

impl From<MunnTriple> for TripleRepr {
    fn from(p: MunnTriple) -> Self {
        TripleRepr { lo: p.lo, hi: p.hi, t: p.t }
    }
}

impl fmt::Display for MunnTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.lo, self.hi, self.t)
    }
}

impl MunnTriple {
    pub const X: MunnTriple = MunnTriple { lo: 0, hi: 1, t: 1 };
    pub const X_INV: MunnTriple = MunnTriple { lo: -1, hi: 0, t: -1 };

    pub fn new(lo: i64, hi: i64, t: i64) -> Result<Self> {
        if lo > 0 || hi < 0 || t < lo || t > hi || lo == hi {
            return Err(Error::IllFormed(format!(
                "({lo}, {hi}, {t}) is not a Munn triple: need lo ≤ 0 ≤ hi, lo ≤ t ≤ hi and lo < hi"
            )));
        }
        Ok(MunnTriple { lo, hi, t })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn span(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn is_idempotent(&self) -> bool {
        self.t == 0
    }

    pub fn multiply(self, q: MunnTriple) -> MunnTriple {
        MunnTriple {
            lo: self.lo.min(self.t + q.lo),
            hi: self.hi.max(self.t + q.hi),
            t: self.t + q.t,
        }
    }

    pub fn invert(self) -> MunnTriple {
        MunnTriple { lo: self.lo - self.t, hi: self.hi - self.t, t: -self.t }
    }

    /// A shortest word with this walk: reach the nearer end of the interval first.
    pub fn word(&self) -> String {
        let (lo, hi, t) = (self.lo, self.hi, self.t);
        let low_first = -lo + (hi - lo) + (hi - t);
        let high_first = hi + (hi - lo) + (t - lo);
        let rep = |c: &str, n: i64| c.repeat(n as usize);
        if low_first <= high_first {
            format!("{}{}{}", rep("X", -lo), rep("x", hi - lo), rep("X", hi - t))
        } else {
            format!("{}{}{}", rep("x", hi), rep("X", hi - lo), rep("x", t - lo))
        }
    }
}

/// Evaluates a word over `x` and `X`.
pub fn eval_word(word: &str) -> Result<MunnTriple> {
    let mut acc: Option<MunnTriple> = None;
    for (pos, c) in word.chars().enumerate() {
        let letter = match c {
            'x' => MunnTriple::X,
            'X' => MunnTriple::X_INV,
            _ => return Err(Error::IllFormed(format!("unexpected character {c:?} at position {pos} in word {word:?}"))),
        };
        acc = Some(acc.map_or(letter, |p| p.multiply(letter)));
    }
    acc.ok_or_else(|| Error::IllFormed("empty word".into()))
}

/// One of the monogenic presentations handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum Presentation {
    /// FI₁ itself.
    Free,
    /// `x^k = x^(k+l)`.
    #[serde(rename = "finite_kl", alias = "finite")]
    FiniteKL { k: i64, l: i64 },
    /// `x^k x⁻¹ = x⁻¹ x^k`.
    CommutingPower { k: i64 },
    /// `x^k = x⁻¹ x^(k+1)`.
    BicyclicExt { k: i64 },
}

impl Presentation {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Presentation::Free => true,
            Presentation::FiniteKL { k, l } => k >= 1 && l >= 1,
            Presentation::CommutingPower { k } | Presentation::BicyclicExt { k } => k >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IllFormed(format!("presentation parameters must be at least 1: {self:?}")))
        }
    }

    /// The two sides of the defining relation, as triples.
    pub fn relation(&self) -> Option<(MunnTriple, MunnTriple)> {
        let t = |lo, hi, t| MunnTriple { lo, hi, t };
        match *self {
            Presentation::Free => None,
            Presentation::FiniteKL { k, l } => Some((t(0, k, k), t(0, k + l, k + l))),
            Presentation::CommutingPower { k } => Some((t(0, k, k - 1), t(-1, k - 1, k - 1))),
            Presentation::BicyclicExt { k } => Some((t(0, k, k), t(-1, k, k))),
        }
    }

    /// Span at which the relation first applies; every nontrivial class lies at or above it.
    pub fn ideal_span(&self) -> Option<i64> {
        match *self {
            Presentation::Free => None,
            Presentation::FiniteKL { k, .. } | Presentation::CommutingPower { k } | Presentation::BicyclicExt { k } => {
                Some(k)
            }
        }
    }

    pub fn default_cap(&self) -> i64 {
        match *self {
            Presentation::Free => SPAN_MARGIN,
            Presentation::FiniteKL { k, l } => k + l + SPAN_MARGIN,
            Presentation::CommutingPower { k } | Presentation::BicyclicExt { k } => k + SPAN_MARGIN,
        }
    }
}

/// An element of a monogenic quotient: a triple below the ideal (or any
/// triple in FI₁), or an element of the ideal in its kernel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonogenicElement {
    Triple(MunnTriple),
    /// `x^(k+r)` modulo `x^k = x^(k+l)`, with `0 ≤ r < l` measured from `t ≡ r`.
    Residue(i64),
    Integer(i64),
    Pair(BicyclicElement),
}

impl fmt::Display for MonogenicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonogenicElement::Triple(p) => write!(f, "{p}"),
            MonogenicElement::Residue(r) => write!(f, "[{r} mod l]"),
            MonogenicElement::Integer(n) => write!(f, "[{n}]"),
            MonogenicElement::Pair(p) => write!(f, "[{p}]"),
        }
    }
}

/// Image of an ideal element in the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelElement {
    Integer(i64),
    Pair(BicyclicElement),
}

/// A validated model of `⟨x | relation⟩`.
#[derive(Debug, Clone)]
pub struct Quotient {
    presentation: Presentation,
    cap: i64,
}

fn ball(cap: i64) -> Vec<MunnTriple> {
    let mut out = Vec::new();
    for s in 1..=cap {
        for lo in -s..=0 {
            for t in lo..=lo + s {
                out.push(MunnTriple { lo, hi: lo + s, t });
            }
        }
    }
    out
}

/// Congruence closure of one relation on the triples of span `≤ cap`;
/// returns the ball and a class representative index for each triple.
fn saturate(relation: (MunnTriple, MunnTriple), cap: i64) -> (Vec<MunnTriple>, Vec<usize>) {
    let triples = ball(cap);
    let index: HashMap<MunnTriple, usize> = triples.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut dsu = Dsu::new(triples.len());
    if let (Some(&a), Some(&b)) = (index.get(&relation.0), index.get(&relation.1)) {
        dsu.union(a, b);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &p) in triples.iter().enumerate() {
            let r = triples[dsu.find(i)];
            if r == p {
                continue;
            }
            for l in [MunnTriple::X, MunnTriple::X_INV] {
                for (a, b) in [(p.multiply(l), r.multiply(l)), (l.multiply(p), l.multiply(r))] {
                    if let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) {
                        if dsu.find(ia) != dsu.find(ib) {
                            dsu.union(ia, ib);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    let classes = (0..triples.len()).map(|i| dsu.find(i)).collect();
    (triples, classes)
}

impl Quotient {
    /// Builds the model and checks it against saturation at span cap `cap`
    /// (the presentation's default when `None`).
    pub fn new(presentation: Presentation, cap: Option<i64>) -> Result<Self> {
        presentation.validate()?;
        let cap = cap.unwrap_or_else(|| presentation.default_cap());
        let q = Quotient { presentation, cap };
        let Some(relation) = presentation.relation() else {
            return Ok(q);
        };
        if cap < relation.0.span().max(relation.1.span()) {
            return Err(Error::Undecided {
                cap,
                detail: "the span cap does not reach the defining relation".into(),
            });
        }
        let (triples, classes) = saturate(relation, cap);
        let mut by_class: BTreeMap<usize, MonogenicElement> = BTreeMap::new();
        let mut by_image: BTreeMap<MonogenicElement, usize> = BTreeMap::new();
        for (p, &c) in triples.iter().zip(&classes) {
            let image = q.project(*p);
            if let Some(&prev) = by_class.get(&c) {
                ensure_invariant!(prev == image, "{p} is identified with an element of image {prev}, not {image}");
            } else {
                by_class.insert(c, image);
            }
            match by_image.get(&image) {
                Some(&other) if other != c => {
                    return Err(Error::Undecided {
                        cap,
                        detail: format!("saturation has not identified {p} with other triples of image {image}"),
                    })
                }
                Some(_) => {}
                None => {
                    by_image.insert(image, c);
                }
            }
        }
        Ok(q)
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    fn in_ideal(&self, p: &MunnTriple) -> bool {
        self.presentation.ideal_span().is_some_and(|k| p.span() >= k)
    }

    /// The element of the quotient represented by a triple.
    pub fn project(&self, p: MunnTriple) -> MonogenicElement {
        if !self.in_ideal(&p) {
            return MonogenicElement::Triple(p);
        }
        match self.presentation {
            Presentation::FiniteKL { l, .. } => MonogenicElement::Residue(p.t.rem_euclid(l)),
            Presentation::CommutingPower { .. } => MonogenicElement::Integer(p.t),
            Presentation::BicyclicExt { .. } => MonogenicElement::Pair(bicyclic_image(p)),
            Presentation::Free => unreachable!("FI₁ has no ideal here"),
        }
    }

    pub fn project_word(&self, word: &str) -> Result<MonogenicElement> {
        Ok(self.project(eval_word(word)?))
    }

    /// A triple in the class of `a`.
    pub fn representative(&self, a: MonogenicElement) -> MunnTriple {
        let k = self.presentation.ideal_span().unwrap_or(1);
        match a {
            MonogenicElement::Triple(p) => p,
            MonogenicElement::Residue(r) => {
                let l = match self.presentation {
                    Presentation::FiniteKL { l, .. } => l,
                    _ => 1,
                };
                let t = k + (r - k).rem_euclid(l);
                MunnTriple { lo: 0, hi: k + l, t }
            }
            MonogenicElement::Integer(n) => MunnTriple { lo: n.min(0) - k, hi: n.max(0), t: n },
            MonogenicElement::Pair(p) => {
                let (hi, t) = (p.a as i64, p.a as i64 - p.b as i64);
                MunnTriple { lo: t.min(0) - k, hi, t }
            }
        }
    }

    pub fn multiply(&self, a: MonogenicElement, b: MonogenicElement) -> MonogenicElement {
        self.project(self.representative(a).multiply(self.representative(b)))
    }

    pub fn invert(&self, a: MonogenicElement) -> MonogenicElement {
        self.project(self.representative(a).invert())
    }

    pub fn word(&self, a: MonogenicElement) -> String {
        self.representative(a).word()
    }

    /// Equality of two words in the quotient.
    pub fn equal(&self, u: &str, v: &str) -> Result<bool> {
        Ok(self.project_word(u)? == self.project_word(v)?)
    }

    /// The kernel image of an ideal element.
    pub fn to_kernel(&self, p: MunnTriple) -> Result<KernelElement> {
        let k = match self.presentation {
            Presentation::CommutingPower { k } | Presentation::BicyclicExt { k } => k,
            _ => {
                return Err(Error::Precondition(
                    "kernel images are defined for the commuting-power and bicyclic-extension classes".into(),
                ))
            }
        };
        match self.project(p) {
            MonogenicElement::Integer(n) => Ok(KernelElement::Integer(n)),
            MonogenicElement::Pair(q) => Ok(KernelElement::Pair(q)),
            _ => Err(Error::NotInIdeal { span: p.span(), k }),
        }
    }

    /// Size measure used by bounded closures: span below the ideal, and the
    /// largest kernel coordinate inside it.
    pub fn size(&self, a: &MonogenicElement) -> u64 {
        match a {
            MonogenicElement::Triple(p) => p.span() as u64,
            MonogenicElement::Residue(_) => 0,
            MonogenicElement::Integer(n) => n.unsigned_abs(),
            MonogenicElement::Pair(p) => p.a.max(p.b),
        }
    }

    /// Elements of `⟨gens⟩` of size `≤ bound`, reached through elements of size `≤ cap·bound`.
    pub fn bounded_closure(&self, gens: &[MonogenicElement], bound: u64, cap: u64) -> Result<BTreeSet<MonogenicElement>> {
        if let Some(g) = gens.iter().find(|g| self.size(g) > bound) {
            return Err(Error::Precondition(format!("generator {g} exceeds the bound {bound}")));
        }
        let limit = cap * bound;
        let mut letters: Vec<MonogenicElement> = gens.iter().flat_map(|&g| [g, self.invert(g)]).collect();
        letters.sort_unstable();
        letters.dedup();
        let mut seen: BTreeSet<MonogenicElement> = letters.iter().copied().collect();
        let mut stack: Vec<MonogenicElement> = letters.clone();
        while let Some(a) = stack.pop() {
            for &l in &letters {
                for p in [self.multiply(a, l), self.multiply(l, a)] {
                    if self.size(&p) <= limit && seen.insert(p) {
                        stack.push(p);
                    }
                }
            }
        }
        Ok(seen.into_iter().filter(|a| self.size(a) <= bound).collect())
    }
}

/// The homomorphism FI₁ → B with `(lo, hi, t) ↦ (hi, hi - t)`; it sends `x`
/// to `(1, 0)` and identifies both sides of `x^k = x⁻¹x^(k+1)`.
pub fn bicyclic_image(p: MunnTriple) -> BicyclicElement {
    BicyclicElement::new(p.hi as u64, (p.hi - p.t) as u64)
}

/// Shorthand for [`Quotient::equal`] at the default cap.
pub fn quotient_equal(presentation: Presentation, u: &str, v: &str) -> Result<bool> {
    Quotient::new(presentation, None)?.equal(u, v)
}

/// `⟨x | x^k = x^(k+l)⟩` materialised as partial injections through its
/// right regular representation.
#[derive(Debug)]
pub struct FiniteQuotient {
    pub quotient: Quotient,
    pub elements: Vec<MonogenicElement>,
    pub semigroup: FiniteInvSemigroup,
    /// `index[i]` is the semigroup index of `elements[i]`.
    pub index: Vec<usize>,
}

impl FiniteQuotient {
    pub fn semigroup_index(&self, a: &MonogenicElement) -> Result<usize> {
        let i = self
            .elements
            .binary_search(a)
            .map_err(|_| Error::Precondition(format!("{a} is not an element of the quotient")))?;
        Ok(self.index[i])
    }

    pub fn element_of(&self, semigroup_index: usize) -> MonogenicElement {
        let i = self.index.iter().position(|&j| j == semigroup_index).expect("index is a bijection");
        self.elements[i]
    }
}

pub fn enumerate_finite(k: i64, l: i64, cap: Option<i64>) -> Result<FiniteQuotient> {
    let quotient = Quotient::new(Presentation::FiniteKL { k, l }, cap)?;
    let mut elements: Vec<MonogenicElement> = ball(k - 1).into_iter().map(MonogenicElement::Triple).collect();
    elements.extend((0..l).map(MonogenicElement::Residue));
    elements.sort_unstable();
    let n = elements.len();
    let pos = |a: &MonogenicElement| elements.binary_search(a).expect("quotient is closed");

    let rho = |a: MonogenicElement| -> Result<PartialInjection> {
        let range = quotient.multiply(a, quotient.invert(a));
        let pairs = elements
            .iter()
            .enumerate()
            .filter(|(_, &y)| quotient.multiply(y, range) == y)
            .map(|(i, &y)| (i, pos(&quotient.multiply(y, a))));
        PartialInjection::new(n, pairs)
    };
    let x = quotient.project(MunnTriple::X);
    let semigroup = FiniteInvSemigroup::closure(&[rho(x)?])?;
    ensure_invariant!(semigroup.len() == n, "x generates {} of the {n} elements", semigroup.len());
    let index: Vec<usize> = elements.iter().map(|&a| semigroup.require(&rho(a)?)).collect::<Result<_>>()?;
    ensure_invariant!(index.iter().collect::<BTreeSet<_>>().len() == n, "regular representation is not faithful");
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            ensure_invariant!(
                semigroup.mul(index[i], index[j]) == index[pos(&quotient.multiply(a, b))],
                "regular representation does not respect {a}·{b}"
            );
        }
    }
    let xk = quotient.project_word(&"x".repeat(k as usize))?;
    let xkl = quotient.project_word(&"x".repeat((k + l) as usize))?;
    ensure_invariant!(xk == xkl, "x^k and x^(k+l) differ in the quotient");
    Ok(FiniteQuotient { quotient, elements, semigroup, index })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonogenicIntersection {
    pub generators: Vec<MonogenicElement>,
    pub words: Vec<String>,
    pub empty: bool,
    /// The generating set is only known to be right inside the bound.
    pub certified_at_bound_only: bool,
    pub bound: u64,
    pub escape_cap: u64,
    pub span_cap: i64,
}

/// Generating set for `⟨U⟩ ∩ ⟨V⟩` in the quotient, certified by bounded closure.
pub fn intersect_fg(
    presentation: Presentation,
    u_words: &[String],
    v_words: &[String],
    bound: u64,
    escape_cap: u64,
    span_cap: Option<i64>,
) -> Result<MonogenicIntersection> {
    if u_words.is_empty() || v_words.is_empty() {
        return Err(Error::IllFormed("generator lists must be nonempty".into()));
    }
    if bound == 0 || escape_cap == 0 {
        return Err(Error::IllFormed("bound and escape cap must be positive".into()));
    }
    let q = Quotient::new(presentation, span_cap)?;
    let u: Vec<MonogenicElement> = u_words.iter().map(|w| q.project_word(w)).collect::<Result<_>>()?;
    let v: Vec<MonogenicElement> = v_words.iter().map(|w| q.project_word(w)).collect::<Result<_>>()?;

    let (mut generators, certified_at_bound_only) = match presentation {
        Presentation::FiniteKL { k, l } => {
            let fq = enumerate_finite(k, l, span_cap)?;
            let to_idx = |xs: &[MonogenicElement]| xs.iter().map(|a| fq.semigroup_index(a)).collect::<Result<Vec<_>>>();
            let (ui, vi) = (to_idx(&u)?, to_idx(&v)?);
            let greens = crate::finite::greens(&fq.semigroup)?;
            let out = howson::intersect_fg(&fq.semigroup, &greens, &ui, &vi)?;
            (out.generators.iter().map(|&i| fq.element_of(i)).collect(), false)
        }
        Presentation::CommutingPower { .. } => (integer_kernel_intersection(&q, &u, &v)?, false),
        Presentation::BicyclicExt { .. } => (bicyclic_kernel_intersection(&q, &u, &v, bound, escape_cap)?, true),
        Presentation::Free => {
            let cu = q.bounded_closure(&u, bound, escape_cap)?;
            let cv = q.bounded_closure(&v, bound, escape_cap)?;
            let meet: BTreeSet<MonogenicElement> = cu.intersection(&cv).copied().collect();
            (harvest(&q, &meet, bound, escape_cap)?, true)
        }
    };
    generators.sort_unstable();
    generators.dedup();

    let cu = q.bounded_closure(&u, bound, escape_cap)?;
    let cv = q.bounded_closure(&v, bound, escape_cap)?;
    let meet: BTreeSet<MonogenicElement> = cu.intersection(&cv).copied().collect();
    let regenerated = if generators.is_empty() {
        BTreeSet::new()
    } else {
        q.bounded_closure(&generators, bound, escape_cap)?
    };
    if regenerated != meet {
        return Err(Error::CertificationFailed {
            bound,
            cap: escape_cap,
            detail: format!(
                "generating set yields {} elements inside the bound, the intersection has {}",
                regenerated.len(),
                meet.len()
            ),
        });
    }
    let words = generators.iter().map(|&a| q.word(a)).collect();
    Ok(MonogenicIntersection {
        empty: generators.is_empty(),
        generators,
        words,
        certified_at_bound_only,
        bound,
        escape_cap,
        span_cap: q.cap(),
    })
}

/// Elements of `⟨gens⟩` below the ideal (exact: spans never decrease, so
/// such elements only have derivations below the ideal), and whether
/// `⟨gens⟩` reaches the ideal at all.
fn low_part(q: &Quotient, gens: &[MonogenicElement]) -> (BTreeSet<MunnTriple>, bool) {
    let mut reaches_ideal = false;
    let mut letters = Vec::new();
    for g in gens.iter().flat_map(|&g| [g, q.invert(g)]) {
        match g {
            MonogenicElement::Triple(p) => letters.push(p),
            _ => reaches_ideal = true,
        }
    }
    let mut seen: BTreeSet<MunnTriple> = letters.iter().copied().collect();
    let mut stack: Vec<MunnTriple> = letters.clone();
    while let Some(a) = stack.pop() {
        for &l in &letters {
            match q.multiply(MonogenicElement::Triple(a), MonogenicElement::Triple(l)) {
                MonogenicElement::Triple(p) => {
                    if seen.insert(p) {
                        stack.push(p);
                    }
                }
                _ => reaches_ideal = true,
            }
        }
    }
    (seen, reaches_ideal)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Class (2): `⟨U⟩ ∩ ℤ = dℤ` with `d` the gcd of the generators' exponent
/// sums, so the kernel part of the intersection is `lcm(d_U, d_V)ℤ`.
fn integer_kernel_intersection(
    q: &Quotient,
    u: &[MonogenicElement],
    v: &[MonogenicElement],
) -> Result<Vec<MonogenicElement>> {
    let (low_u, u_ideal) = low_part(q, u);
    let (low_v, v_ideal) = low_part(q, v);
    let mut out: Vec<MonogenicElement> = low_u.intersection(&low_v).map(|&p| MonogenicElement::Triple(p)).collect();
    if u_ideal && v_ideal {
        let exponent = |xs: &[MonogenicElement]| xs.iter().fold(0, |acc, &a| gcd(acc, q.representative(a).t()));
        let (du, dv) = (exponent(u), exponent(v));
        let lcm = if du == 0 || dv == 0 { 0 } else { du / gcd(du, dv) * dv };
        out.push(MonogenicElement::Integer(lcm));
    }
    Ok(out)
}

/// Class (3): the ideal is a copy of B; its part of the intersection comes
/// from the bicyclic intersection of the two ideal parts, and the finite
/// part below the ideal is intersected directly.
fn bicyclic_kernel_intersection(
    q: &Quotient,
    u: &[MonogenicElement],
    v: &[MonogenicElement],
    bound: u64,
    cap: u64,
) -> Result<Vec<MonogenicElement>> {
    let (low_u, _) = low_part(q, u);
    let (low_v, _) = low_part(q, v);
    let mut out: Vec<MonogenicElement> = low_u.intersection(&low_v).map(|&p| MonogenicElement::Triple(p)).collect();

    let kernel_gens = |xs: &[MonogenicElement]| -> Result<Vec<BicyclicElement>> {
        let closure = q.bounded_closure(xs, bound, cap)?;
        let kernel: BTreeSet<MonogenicElement> =
            closure.into_iter().filter(|a| matches!(a, MonogenicElement::Pair(_))).collect();
        Ok(harvest(q, &kernel, bound, cap)?
            .into_iter()
            .map(|a| match a {
                MonogenicElement::Pair(p) => p,
                _ => unreachable!("kernel elements are pairs"),
            })
            .collect())
    };
    let (ku, kv) = (kernel_gens(u)?, kernel_gens(v)?);
    if !ku.is_empty() && !kv.is_empty() {
        let inter = bicyclic::intersect(&ku, &kv, bound, cap)?;
        out.extend(inter.generators.into_iter().map(MonogenicElement::Pair));
    }
    Ok(out)
}

/// Greedy generating set for a bounded set: nonidempotents first, in order
/// of size, each kept only when not yet reached.
fn harvest(
    q: &Quotient,
    target: &BTreeSet<MonogenicElement>,
    bound: u64,
    cap: u64,
) -> Result<Vec<MonogenicElement>> {
    let idempotent = |a: &MonogenicElement| q.multiply(*a, *a) == *a;
    let mut candidates: Vec<MonogenicElement> = target.iter().copied().collect();
    candidates.sort_by_key(|a| (idempotent(a), q.size(a), *a));
    let mut gens = Vec::new();
    let mut reached = BTreeSet::new();
    for a in candidates {
        if reached.len() == target.len() {
            break;
        }
        if !reached.contains(&a) {
            gens.push(a);
            reached = q.bounded_closure(&gens, bound, cap)?;
        }
    }
    Ok(gens)
}
