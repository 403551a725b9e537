//! Brandt semigroups `B(G, I)` over finite group tables.
//!
//! Elements are triples `(i, g, j)` with `i, j` in `{0..index}` plus a zero;
//! `(i, g, j)(j, h, k) = (i, gh, k)` and every other product is zero.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_invariant, Error, Result};
use crate::finite::Dsu;
use crate::group::FiniteGroupTable;

/// Zero sorts below every triple; triples sort lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub enum BrandtElement {
    Zero,
    Triple { i: usize, g: usize, j: usize },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum ElementRepr {
    Zero { zero: bool },
    Triple { i: usize, g: usize, j: usize },
}

impl TryFrom<ElementRepr> for BrandtElement {
    type Error = Error;

    fn try_from(repr: ElementRepr) -> Result<Self> {
        match repr {
            ElementRepr::Zero { zero: true } => Ok(BrandtElement::Zero),
            ElementRepr::Zero { zero: false } => Err(Error::IllFormed("\"zero\" must be true".into())),
            ElementRepr::Triple { i, g, j } => Ok(BrandtElement::Triple { i, g, j }),
        }
    }
}

impl From<BrandtElement> for ElementRepr {
    fn from(e: BrandtElement) -> Self {
        match e {
            BrandtElement::Zero => ElementRepr::Zero { zero: true },
            BrandtElement::Triple { i, g, j } => ElementRepr::Triple { i, g, j },
        }
    }
}

impl BrandtElement {
    pub fn triple(i: usize, g: usize, j: usize) -> Self {
        BrandtElement::Triple { i, g, j }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BrandtElement::Zero)
    }

    pub fn row(&self) -> Option<usize> {
        match *self {
            BrandtElement::Triple { i, .. } => Some(i),
            BrandtElement::Zero => None,
        }
    }

    pub fn col(&self) -> Option<usize> {
        match *self {
            BrandtElement::Triple { j, .. } => Some(j),
            BrandtElement::Zero => None,
        }
    }
}

impl std::fmt::Display for BrandtElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BrandtElement::Zero => write!(f, "0"),
            BrandtElement::Triple { i, g, j } => write!(f, "({i},{g},{j})"),
        }
    }
}

/// `B(G, I)` with `I = {0..index}`. JSON form: `{"group": {...}, "index": n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrandtSemigroup {
    group: FiniteGroupTable,
    index: usize,
}

/// A 0-direct factor of a primitive inverse subsemigroup, in Brandt coordinates:
/// it is `B(subgroup, rows)` with `transversal[r]` in `H(base_row, rows[r])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrandtFactor {
    pub rows: Vec<usize>,
    pub base_row: usize,
    /// Group elements `g` with `(base_row, g, base_row)` in the factor.
    pub subgroup: Vec<usize>,
    /// One element per row; the entry for `base_row` is the base idempotent.
    pub transversal: Vec<BrandtElement>,
    pub elements: Vec<BrandtElement>,
}

impl BrandtFactor {
    /// The factor with its zero removed is a group.
    pub fn is_group(&self) -> bool {
        self.rows.len() == 1
    }

    /// Generating set in the shape `A ∪ {x_2, ..., x_n}`: every element of the
    /// base maximal subgroup plus the non-base transversal elements.
    pub fn generators(&self) -> Vec<BrandtElement> {
        let mut gens: Vec<BrandtElement> = self
            .subgroup
            .iter()
            .map(|&g| BrandtElement::triple(self.base_row, g, self.base_row))
            .collect();
        gens.extend(
            self.rows
                .iter()
                .zip(&self.transversal)
                .filter(|(&r, _)| r != self.base_row)
                .map(|(_, &x)| x),
        );
        gens
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<BrandtFactor>,
    pub contains_zero: bool,
}

/// A generating set for an intersection. `empty` distinguishes the empty
/// intersection from `{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrandtIntersection {
    pub generators: Vec<BrandtElement>,
    pub empty: bool,
    pub decomposition: Decomposition,
}

impl BrandtSemigroup {
    pub fn new(group: FiniteGroupTable, index: usize) -> Result<Self> {
        if index == 0 {
            return Err(Error::IllFormed("index set must be nonempty".into()));
        }
        Ok(BrandtSemigroup { group, index })
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn index_size(&self) -> usize {
        self.index
    }

    pub fn size(&self) -> usize {
        self.index * self.index * self.group.order() + 1
    }

    pub fn check(&self, a: BrandtElement) -> Result<()> {
        if let BrandtElement::Triple { i, g, j } = a {
            if i >= self.index || j >= self.index || g >= self.group.order() {
                return Err(Error::IllFormed(format!(
                    "{a} out of range for B(G, I) with |G| = {}, |I| = {}",
                    self.group.order(),
                    self.index
                )));
            }
        }
        Ok(())
    }

    pub fn multiply(&self, a: BrandtElement, b: BrandtElement) -> Result<BrandtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: BrandtElement, b: BrandtElement) -> BrandtElement {
        match (a, b) {
            (BrandtElement::Triple { i, g, j }, BrandtElement::Triple { i: k, g: h, j: l }) if j == k => {
                BrandtElement::triple(i, self.group.mul(g, h), l)
            }
            _ => BrandtElement::Zero,
        }
    }

    pub fn invert(&self, a: BrandtElement) -> Result<BrandtElement> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    pub(crate) fn inv(&self, a: BrandtElement) -> BrandtElement {
        match a {
            BrandtElement::Triple { i, g, j } => BrandtElement::triple(j, self.group.inv(g), i),
            BrandtElement::Zero => BrandtElement::Zero,
        }
    }

    pub fn is_idempotent(&self, a: BrandtElement) -> bool {
        self.mul(a, a) == a
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Vec<BrandtElement> {
        let mut all = vec![BrandtElement::Zero];
        for i in 0..self.index {
            for g in 0..self.group.order() {
                for j in 0..self.index {
                    all.push(BrandtElement::triple(i, g, j));
                }
            }
        }
        all
    }

    /// Inverse subsemigroup generated by `gens`.
    pub fn closure(&self, gens: &[BrandtElement]) -> Result<BTreeSet<BrandtElement>> {
        for &g in gens {
            self.check(g)?;
        }
        let letters: Vec<BrandtElement> = gens.iter().flat_map(|&g| [g, self.inv(g)]).collect();
        let mut seen: BTreeSet<BrandtElement> = letters.iter().copied().collect();
        let mut frontier: Vec<BrandtElement> = seen.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            for &l in &letters {
                let p = self.mul(a, l);
                if seen.insert(p) {
                    frontier.push(p);
                }
            }
        }
        Ok(seen)
    }

    /// The generating set `{(0, a, 0) : a in group_gens} ∪ {(0, e, j) : 0 < j < |I|}`.
    pub fn fg_generating_set(&self, group_gens: &[usize]) -> Result<Vec<BrandtElement>> {
        let gens: BTreeSet<usize> = group_gens.iter().copied().collect();
        if let Some(&bad) = gens.iter().find(|&&g| g >= self.group.order()) {
            return Err(Error::IllFormed(format!("group element {bad} out of range")));
        }
        let gens: Vec<usize> = gens.into_iter().collect();
        let reached = self.group.generated(&gens);
        if let Some(missing) = (0..self.group.order()).find(|g| !reached.contains(g)) {
            return Err(Error::Precondition(format!(
                "group generators do not generate G: element {missing} is not reached"
            )));
        }
        let e = self.group.identity();
        let mut out: Vec<BrandtElement> = gens.iter().map(|&a| BrandtElement::triple(0, a, 0)).collect();
        out.extend((1..self.index).map(|j| BrandtElement::triple(0, e, j)));

        let closure = self.closure(&out)?;
        let nonzero = closure.iter().filter(|a| !a.is_zero()).count();
        ensure_invariant!(
            nonzero == self.size() - 1 && closure.contains(&BrandtElement::Zero) == (self.index > 1),
            "generating set reaches {} of {} elements",
            closure.len(),
            self.size()
        );
        Ok(out)
    }

    /// Splits a primitive inverse subsemigroup (given by its elements) into
    /// its 0-direct factors: components of the relation "some product of the
    /// two is nonzero", each verified to be a Brandt semigroup.
    pub fn zero_direct_decomposition(&self, elems: &BTreeSet<BrandtElement>) -> Result<Decomposition> {
        for &a in elems {
            self.check(a)?;
        }
        let nonzero: Vec<BrandtElement> = elems.iter().copied().filter(|a| !a.is_zero()).collect();
        for &a in elems {
            let inv = self.inv(a);
            if !inv.is_zero() && !elems.contains(&inv) {
                return Err(Error::Precondition(format!("not inverse-closed: {a} has inverse {inv} outside")));
            }
            for &b in elems {
                let p = self.mul(a, b);
                if !p.is_zero() && !elems.contains(&p) {
                    return Err(Error::Precondition(format!("not closed: {a}·{b} = {p} outside")));
                }
            }
        }

        let mut dsu = Dsu::new(nonzero.len());
        for (x, &a) in nonzero.iter().enumerate() {
            for (y, &b) in nonzero.iter().enumerate().skip(x + 1) {
                if !self.mul(a, b).is_zero() || !self.mul(b, a).is_zero() {
                    dsu.union(x, y);
                }
            }
        }
        let mut components: BTreeMap<usize, Vec<BrandtElement>> = BTreeMap::new();
        for (x, &a) in nonzero.iter().enumerate() {
            components.entry(dsu.find(x)).or_default().push(a);
        }
        let mut factors: Vec<BrandtFactor> = components
            .into_values()
            .map(|elements| self.factor_coordinates(elements))
            .collect::<Result<_>>()?;
        factors.sort_by_key(|f| f.base_row);

        for (x, f) in factors.iter().enumerate() {
            for other in &factors[x + 1..] {
                for &a in &f.elements {
                    for &b in &other.elements {
                        ensure_invariant!(
                            self.mul(a, b).is_zero() && self.mul(b, a).is_zero(),
                            "factors are not 0-disjoint: {a}, {b}"
                        );
                    }
                }
            }
        }
        Ok(Decomposition { factors, contains_zero: elems.contains(&BrandtElement::Zero) })
    }

    fn factor_coordinates(&self, elements: Vec<BrandtElement>) -> Result<BrandtFactor> {
        let rows: Vec<usize> = elements.iter().filter_map(|a| a.row()).collect::<BTreeSet<_>>().into_iter().collect();
        let cols: BTreeSet<usize> = elements.iter().filter_map(|a| a.col()).collect();
        ensure_invariant!(rows.iter().copied().collect::<BTreeSet<_>>() == cols, "factor rows and columns differ");
        let base_row = rows[0];
        let e = self.group.identity();
        let base = BrandtElement::triple(base_row, e, base_row);
        ensure_invariant!(elements.contains(&base), "factor lacks its base idempotent {base}");

        let subgroup: Vec<usize> = elements
            .iter()
            .filter_map(|a| match *a {
                BrandtElement::Triple { i, g, j } if i == base_row && j == base_row => Some(g),
                _ => None,
            })
            .collect();
        ensure_invariant!(
            self.group.generated(&subgroup).len() == subgroup.len(),
            "base H-class is not a subgroup"
        );

        // minimal element of H(base_row, r) in canonical order; elements are sorted
        let transversal: Vec<BrandtElement> = rows
            .iter()
            .map(|&r| {
                if r == base_row {
                    Ok(base)
                } else {
                    elements
                        .iter()
                        .copied()
                        .find(|a| a.row() == Some(base_row) && a.col() == Some(r))
                        .ok_or_else(|| Error::Invariant(format!("H({base_row}, {r}) is empty in a factor")))
                }
            })
            .collect::<Result<_>>()?;

        ensure_invariant!(
            elements.len() == rows.len() * rows.len() * subgroup.len(),
            "factor has {} elements, expected |I'|²|G'| = {}",
            elements.len(),
            rows.len() * rows.len() * subgroup.len()
        );
        // every element is x_r⁻¹ (base, h, base) x_s with h in the subgroup
        for &a in &elements {
            let (r, s) = (a.row().expect("nonzero"), a.col().expect("nonzero"));
            let xr = transversal[rows.binary_search(&r).expect("row present")];
            let xs = transversal[rows.binary_search(&s).expect("row present")];
            let core = self.mul(self.mul(xr, a), self.inv(xs));
            let in_subgroup = matches!(core, BrandtElement::Triple { i, g, j }
                if i == base_row && j == base_row && subgroup.contains(&g));
            ensure_invariant!(in_subgroup, "{a} is not in the Brandt span of the factor coordinates");
        }
        // nonzero idempotents are primitive
        let idempotents: Vec<BrandtElement> = elements.iter().copied().filter(|&a| self.is_idempotent(a)).collect();
        ensure_invariant!(idempotents.len() == rows.len(), "factor has {} idempotents for {} rows", idempotents.len(), rows.len());
        for &f in &idempotents {
            for &e in &idempotents {
                ensure_invariant!(e == f || self.mul(f, e).is_zero(), "idempotent {f} is not primitive");
            }
        }

        Ok(BrandtFactor { rows, base_row, subgroup, transversal, elements })
    }

    /// Generating set for `⟨U_gens⟩ ∩ ⟨V_gens⟩`, assembled factor by factor
    /// from the 0-direct decomposition of the intersection.
    pub fn intersect(&self, u_gens: &[BrandtElement], v_gens: &[BrandtElement]) -> Result<BrandtIntersection> {
        let u = self.closure(u_gens)?;
        let v = self.closure(v_gens)?;
        let meet: BTreeSet<BrandtElement> = u.intersection(&v).copied().collect();
        let decomposition = self.zero_direct_decomposition(&meet)?;
        if meet.is_empty() {
            return Ok(BrandtIntersection { generators: Vec::new(), empty: true, decomposition });
        }
        let mut generators: Vec<BrandtElement> = decomposition.factors.iter().flat_map(|f| f.generators()).collect();
        if meet.contains(&BrandtElement::Zero) && !self.closure(&generators)?.contains(&BrandtElement::Zero) {
            generators.push(BrandtElement::Zero);
        }
        ensure_invariant!(
            self.closure(&generators)? == meet,
            "generating set does not regenerate the intersection"
        );
        Ok(BrandtIntersection { generators, empty: false, decomposition })
    }
}
