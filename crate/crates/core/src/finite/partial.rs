use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An injective partial map on `{0..degree}`.
///
/// Maps act on the right: `f.compose(&g)` applies `f` first, then `g`.
/// The canonical ordering compares `(degree, sorted pair list)` lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct PartialInjection {
    image: Vec<Option<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRepr {
    degree: usize,
    graph: Vec<[usize; 2]>,
}

impl TryFrom<ElementRepr> for PartialInjection {
    type Error = Error;

    fn try_from(repr: ElementRepr) -> Result<Self> {
        PartialInjection::new(repr.degree, repr.graph.iter().map(|&[i, j]| (i, j)))
    }
}

impl From<PartialInjection> for ElementRepr {
    fn from(p: PartialInjection) -> Self {
        ElementRepr {
            degree: p.degree(),
            graph: p.pairs().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl PartialInjection {
    /// Builds a partial injection from its graph, rejecting out-of-range
    /// coordinates and anything that is not functional and injective.
    pub fn new(degree: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::IllFormed("degree must be positive".into()));
        }
        let mut image = vec![None; degree];
        let mut hit = vec![false; degree];
        for (i, j) in pairs {
            if i >= degree || j >= degree {
                return Err(Error::IllFormed(format!(
                    "pair ({i}, {j}) out of range for degree {degree}"
                )));
            }
            if image[i].is_some() {
                return Err(Error::IllFormed(format!("point {i} has two images")));
            }
            if hit[j] {
                return Err(Error::IllFormed(format!("point {j} has two preimages")));
            }
            image[i] = Some(j as u32);
            hit[j] = true;
        }
        Ok(PartialInjection { image })
    }

    pub fn identity(degree: usize) -> Self {
        Self::partial_identity(degree, 0..degree)
    }

    pub fn empty(degree: usize) -> Self {
        Self::partial_identity(degree, std::iter::empty())
    }

    /// Identity restricted to `points`.
    pub fn partial_identity(degree: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut image = vec![None; degree];
        for p in points {
            image[p] = Some(p as u32);
        }
        PartialInjection { image }
    }

    /// Builds from an image list (`images[i]` is the image of `i`).
    pub fn from_images(images: &[Option<usize>]) -> Result<Self> {
        Self::new(
            images.len(),
            images.iter().enumerate().filter_map(|(i, j)| j.map(|j| (i, j))),
        )
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.image.get(i).copied().flatten().map(|j| j as usize)
    }

    /// The graph as pairs sorted ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (i, j as usize)))
    }

    pub fn rank(&self) -> usize {
        self.image.iter().filter(|j| j.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    /// `f.compose(g)` maps `i` to `g(f(i))`.
    pub fn compose(&self, other: &PartialInjection) -> Result<PartialInjection> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &PartialInjection) -> PartialInjection {
        PartialInjection {
            image: self
                .image
                .iter()
                .map(|j| j.and_then(|j| other.image[j as usize]))
                .collect(),
        }
    }

    pub fn invert(&self) -> PartialInjection {
        let mut image = vec![None; self.degree()];
        for (i, j) in self.pairs() {
            image[j] = Some(i as u32);
        }
        PartialInjection { image }
    }

    /// Idempotents are exactly the partial identities.
    pub fn is_idempotent(&self) -> bool {
        self.pairs().all(|(i, j)| i == j)
    }

    /// Natural partial order: `self <= other` iff the graph of `self` is
    /// contained in the graph of `other`.
    pub fn natural_le(&self, other: &PartialInjection) -> Result<bool> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self
            .image
            .iter()
            .zip(&other.image)
            .all(|(a, b)| a.is_none() || a == b))
    }
}

impl Ord for PartialInjection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.pairs().cmp(other.pairs()))
    }
}

impl PartialOrd for PartialInjection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Compact form `{0>1,1>2}`; the empty map prints as `{}`.
impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, j)) in self.pairs().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}>{j}")?;
        }
        write!(f, "}}")
    }
}
