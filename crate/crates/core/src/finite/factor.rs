//! Principal factors and maximal subgroups.

use crate::error::{ensure_invariant, Error, Result};
use crate::finite::{FiniteInvSemigroup, GreensData};
use crate::group::FiniteGroupTable;

/// A finite semigroup on `{0..size}` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    size: usize,
    mult: Vec<usize>,
}

impl CayleyTable {
    pub fn new(size: usize, mult: Vec<usize>) -> Result<Self> {
        if mult.len() != size * size {
            return Err(Error::IllFormed(format!("table for {size} elements has {} entries", mult.len())));
        }
        if let Some(&bad) = mult.iter().find(|&&c| c >= size) {
            return Err(Error::IllFormed(format!("table entry {bad} out of range")));
        }
        Ok(CayleyTable { size, mult })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size + b]
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// The unique `b` with `aba = a` and `bab = b`, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size).find(|&b| self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b)
    }

    pub fn is_associative(&self) -> bool {
        (0..self.size).all(|a| {
            (0..self.size).all(|b| {
                let ab = self.mul(a, b);
                (0..self.size).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }
}

/// `PF(J)`: the class `J` with products leaving `J` sent to a synthetic zero.
///
/// Local index `i < members.len()` stands for `members[i]`; the zero, when
/// present, is local index `members.len()`. The kernel gets no zero.
#[derive(Debug, Clone)]
pub struct PrincipalFactor {
    pub class: usize,
    pub members: Vec<usize>,
    pub zero: Option<usize>,
    pub table: CayleyTable,
}

impl PrincipalFactor {
    /// Assembles a factor from raw parts; used for tables that do not come
    /// from an ambient semigroup.
    pub fn from_parts(class: usize, members: Vec<usize>, with_zero: bool, table: CayleyTable) -> Result<Self> {
        let expected = members.len() + usize::from(with_zero);
        if table.size() != expected {
            return Err(Error::IllFormed(format!("table has {} elements, expected {expected}", table.size())));
        }
        let zero = with_zero.then_some(members.len());
        if let Some(z) = zero {
            let absorbing = (0..expected).all(|a| table.mul(a, z) == z && table.mul(z, a) == z);
            if !absorbing {
                return Err(Error::IllFormed("designated zero is not absorbing".into()));
            }
        }
        Ok(PrincipalFactor { class, members, zero, table })
    }

    pub fn local_of(&self, ambient: usize) -> Option<usize> {
        self.members.binary_search(&ambient).ok()
    }

    pub fn is_zero(&self, local: usize) -> bool {
        self.zero == Some(local)
    }
}

pub fn principal_factor(s: &FiniteInvSemigroup, greens: &GreensData, class: usize) -> Result<PrincipalFactor> {
    let members = greens
        .d_classes
        .get(class)
        .ok_or_else(|| Error::Precondition(format!("no J-class with index {class}")))?
        .clone();
    let is_kernel = greens.kernel == Some(class);
    let m = members.len();
    let size = if is_kernel { m } else { m + 1 };
    let mut mult = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            let local = if a == m || b == m {
                m
            } else {
                let p = s.mul(members[a], members[b]);
                match members.binary_search(&p) {
                    Ok(i) => i,
                    Err(_) => {
                        ensure_invariant!(!is_kernel, "kernel class is not closed under products");
                        m
                    }
                }
            };
            mult.push(local);
        }
    }
    let table = CayleyTable::new(size, mult)?;
    Ok(PrincipalFactor { class, members, zero: (!is_kernel).then_some(m), table })
}

/// `H_e` with its induced group structure; group index `i` is `members[i]`.
#[derive(Debug, Clone)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    pub members: Vec<usize>,
    pub group: FiniteGroupTable,
}

pub fn maximal_subgroup(s: &FiniteInvSemigroup, e: usize) -> Result<MaximalSubgroup> {
    if e >= s.len() || !s.is_idempotent(e) {
        let shown = if e < s.len() { s.element(e).to_string() } else { format!("index {e}") };
        return Err(Error::NotIdempotent(shown));
    }
    let members: Vec<usize> = (0..s.len())
        .filter(|&a| s.mul(a, s.inverse(a)) == e && s.mul(s.inverse(a), a) == e)
        .collect();
    let mut mult = Vec::with_capacity(members.len());
    for &a in &members {
        let mut row = Vec::with_capacity(members.len());
        for &b in &members {
            let p = s.mul(a, b);
            let local = members
                .binary_search(&p)
                .map_err(|_| Error::Invariant(format!("H-class of {e} not closed")))?;
            row.push(local);
        }
        mult.push(row);
    }
    let group = FiniteGroupTable::from_table(mult)
        .map_err(|err| Error::Invariant(format!("H-class of idempotent {e} is not a group: {err}")))?;
    Ok(MaximalSubgroup { idempotent: e, members, group })
}
