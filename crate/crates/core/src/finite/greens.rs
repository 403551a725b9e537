//! Green's relations for finite inverse semigroups.
//!
//! R, L and H come from the idempotents `aa⁻¹` and `a⁻¹a`; D is the join
//! of R and L. J is computed separately from principal two-sided ideals and
//! checked against D, which must agree in any finite semigroup.

use std::collections::{BTreeMap, HashMap};

use crate::error::{ensure_invariant, Result};
use crate::finite::FiniteInvSemigroup;

#[derive(Debug, Clone)]
pub struct GreensData {
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
    pub r_class_of: Vec<usize>,
    pub l_class_of: Vec<usize>,
    pub h_class_of: Vec<usize>,
    pub d_class_of: Vec<usize>,
    /// `j_leq[a][b]` iff D-class `a` lies below D-class `b` in the J-order.
    pub j_leq: Vec<Vec<bool>>,
    pub idempotents: Vec<usize>,
    /// The least D-class, when the J-order has a minimum.
    pub kernel: Option<usize>,
}

/// Groups indices by key; classes are numbered in order of their least member.
fn partition_by<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        groups.entry(key(i)).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    let mut class_of = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = c;
        }
    }
    (classes, class_of)
}

pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The principal two-sided ideal `S¹aS¹` as a membership vector.
pub fn principal_ideal(s: &FiniteInvSemigroup, a: usize) -> Vec<bool> {
    let letters = generator_letters(s);
    let mut seen = vec![false; s.len()];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        for &l in &letters {
            for p in [s.mul(x, l), s.mul(l, x)] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
    }
    seen
}

fn generator_letters(s: &FiniteInvSemigroup) -> Vec<usize> {
    let mut letters: Vec<usize> = s
        .generators()
        .iter()
        .flat_map(|g| {
            let i = s.index_of(g).expect("generator lies in its closure");
            [i, s.inverse(i)]
        })
        .collect();
    letters.sort_unstable();
    letters.dedup();
    letters
}

pub fn greens(s: &FiniteInvSemigroup) -> Result<GreensData> {
    let n = s.len();
    let right_id: Vec<usize> = (0..n).map(|a| s.mul(a, s.inverse(a))).collect();
    let left_id: Vec<usize> = (0..n).map(|a| s.mul(s.inverse(a), a)).collect();

    let (r_classes, r_class_of) = partition_by(n, |a| right_id[a]);
    let (l_classes, l_class_of) = partition_by(n, |a| left_id[a]);
    let (h_classes, h_class_of) = partition_by(n, |a| (right_id[a], left_id[a]));

    let mut dsu = Dsu::new(n);
    for a in 0..n {
        dsu.union(a, r_classes[r_class_of[a]][0]);
        dsu.union(a, l_classes[l_class_of[a]][0]);
    }
    let d_root: Vec<usize> = (0..n).map(|a| dsu.find(a)).collect();
    let (d_classes, d_class_of) = partition_by(n, |a| d_root[a]);

    let ideals: Vec<Vec<bool>> = (0..n).map(|a| principal_ideal(s, a)).collect();
    let mut ideal_ids: HashMap<&Vec<bool>, usize> = HashMap::new();
    for ideal in &ideals {
        let next = ideal_ids.len();
        ideal_ids.entry(ideal).or_insert(next);
    }
    let (j_classes, _) = partition_by(n, |a| ideal_ids[&ideals[a]]);
    ensure_invariant!(
        j_classes == d_classes,
        "D and J differ: {} D-classes vs {} J-classes",
        d_classes.len(),
        j_classes.len()
    );

    let d = d_classes.len();
    let j_leq: Vec<Vec<bool>> = (0..d)
        .map(|a| (0..d).map(|b| ideals[d_classes[b][0]][d_classes[a][0]]).collect())
        .collect();
    let kernel = (0..d).find(|&a| (0..d).all(|b| j_leq[a][b]));

    let idempotents = s.idempotents();
    for &e in &idempotents {
        ensure_invariant!(right_id[e] == e && left_id[e] == e, "idempotent {e} is not its own range");
    }
    for class in &d_classes {
        ensure_invariant!(
            class.iter().any(|&a| s.is_idempotent(a)),
            "D-class of {} has no idempotent",
            class[0]
        );
    }

    Ok(GreensData {
        r_classes,
        l_classes,
        h_classes,
        d_classes,
        r_class_of,
        l_class_of,
        h_class_of,
        d_class_of,
        j_leq,
        idempotents,
        kernel,
    })
}

impl GreensData {
    /// R-class indices inside a D-class, ascending.
    pub fn r_classes_in(&self, d: usize) -> Vec<usize> {
        let mut rs: Vec<usize> = self.d_classes[d].iter().map(|&a| self.r_class_of[a]).collect();
        rs.sort_unstable();
        rs.dedup();
        rs
    }

    pub fn l_classes_in(&self, d: usize) -> Vec<usize> {
        let mut ls: Vec<usize> = self.d_classes[d].iter().map(|&a| self.l_class_of[a]).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    /// The H-class at the intersection of an R-class and an L-class, if nonempty.
    pub fn h_class_at(&self, r: usize, l: usize) -> Option<usize> {
        self.r_classes[r]
            .iter()
            .find(|&&a| self.l_class_of[a] == l)
            .map(|&a| self.h_class_of[a])
    }

    /// D-class indices ordered top-down: a class never precedes one above it.
    pub fn d_classes_top_down(&self) -> Vec<usize> {
        let d = self.d_classes.len();
        let mut order: Vec<usize> = (0..d).collect();
        // number of classes strictly above is a linear extension of the order
        let above = |a: usize| (0..d).filter(|&b| b != a && self.j_leq[a][b]).count();
        order.sort_by_key(|&a| (above(a), a));
        order
    }

    /// Covering pairs `(upper, lower)` of the J-order.
    pub fn j_covers(&self) -> Vec<(usize, usize)> {
        let d = self.d_classes.len();
        let below = |a: usize, b: usize| a != b && self.j_leq[a][b];
        let mut covers = Vec::new();
        for upper in 0..d {
            for lower in 0..d {
                if below(lower, upper) && !(0..d).any(|m| below(lower, m) && below(m, upper)) {
                    covers.push((upper, lower));
                }
            }
        }
        covers
    }
}
