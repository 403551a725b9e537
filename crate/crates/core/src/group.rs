//! Finite groups given by multiplication tables.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group on `{0..order}` given by its Cayley table.
///
/// JSON form: `{"order": k, "mult": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FiniteGroupTable {
    order: usize,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRepr {
    order: usize,
    mult: Vec<Vec<usize>>,
}

impl TryFrom<GroupRepr> for FiniteGroupTable {
    type Error = Error;

    fn try_from(repr: GroupRepr) -> Result<Self> {
        if repr.order != repr.mult.len() {
            return Err(Error::IllFormed(format!(
                "order {} does not match a table with {} rows",
                repr.order,
                repr.mult.len()
            )));
        }
        FiniteGroupTable::from_table(repr.mult)
    }
}

impl From<FiniteGroupTable> for GroupRepr {
    fn from(g: FiniteGroupTable) -> Self {
        GroupRepr { order: g.order, mult: g.mult }
    }
}

impl FiniteGroupTable {
    /// Validates `mult` as a group table: closure, associativity, identity and inverses.
    pub fn from_table(mult: Vec<Vec<usize>>) -> Result<Self> {
        let order = mult.len();
        if order == 0 {
            return Err(Error::IllFormed("group table is empty".into()));
        }
        for (a, row) in mult.iter().enumerate() {
            if row.len() != order {
                return Err(Error::IllFormed(format!(
                    "row {a} has length {} but order is {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&c| c >= order) {
                return Err(Error::IllFormed(format!("entry {bad} in row {a} is out of range")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::IllFormed(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or_else(|| Error::IllFormed("table has no identity".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                .ok_or_else(|| Error::IllFormed(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroupTable { order, mult, identity, inverse })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group `Z/n` with `a * b = a + b mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroupTable {
            order: n,
            mult,
            identity: 0,
            inverse: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// The symmetric group on `n` points. Elements are the permutations in
    /// lexicographic order of their image lists (so 0 is the identity); the
    /// product applies the left factor first.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            perms.push(current.clone());
            if !next_permutation(&mut current) {
                break;
            }
        }
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("permutation present");
        let mult: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&p.iter().map(|&i| q[i]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(mult).expect("symmetric group table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Subgroup generated by `gens` under multiplication alone. The empty set
    /// generates the empty set.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = gens.iter().copied().collect();
        let mut frontier: Vec<usize> = seen.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let p = self.mul(a, g);
                if seen.insert(p) {
                    frontier.push(p);
                }
            }
        }
        seen
    }

    /// Searches for an isomorphism `self -> other`, returned as an image list.
    pub fn find_isomorphism(&self, other: &FiniteGroupTable) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        // Pick a small generating set greedily; a homomorphism is fixed by
        // the images of the generators.
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for a in 0..self.order {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
                span.insert(self.identity);
            }
        }
        let mut images = vec![0; gens.len()];
        self.search_iso(other, &gens, &mut images, 0)
    }

    fn search_iso(
        &self,
        other: &FiniteGroupTable,
        gens: &[usize],
        images: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            return self.extend_hom(other, gens, images);
        }
        let want = self.element_order(gens[depth]);
        for cand in 0..other.order {
            if other.element_order(cand) != want {
                continue;
            }
            images[depth] = cand;
            if let Some(map) = self.search_iso(other, gens, images, depth + 1) {
                return Some(map);
            }
        }
        None
    }

    // Extends generator images to a map by BFS and checks it is a bijective homomorphism.
    fn extend_hom(&self, other: &FiniteGroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map: Vec<Option<usize>> = vec![None; self.order];
        map[self.identity] = Some(other.identity);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            let fa = map[a].expect("assigned");
            for (&g, &fg) in gens.iter().zip(images) {
                let p = self.mul(a, g);
                let fp = other.mul(fa, fg);
                match map[p] {
                    Some(existing) if existing != fp => return None,
                    Some(_) => {}
                    None => {
                        map[p] = Some(fp);
                        frontier.push(p);
                    }
                }
            }
        }
        let map: Vec<usize> = map.into_iter().collect::<Option<_>>()?;
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != self.order {
            return None;
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut p = a;
        let mut n = 1;
        while p != self.identity {
            p = self.mul(p, a);
            n += 1;
        }
        n
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
