//! The least group congruence σ and E-unitarity.

use std::collections::BTreeMap;

use crate::error::{ensure_invariant, Error, Result};
use crate::finite::greens::Dsu;
use crate::finite::FiniteInvSemigroup;
use crate::group::FiniteGroupTable;

#[derive(Debug, Clone)]
pub struct SigmaData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// For each related pair `(s, t)` with `s < t`, an idempotent `e` with `es = et`.
    pub witnesses: BTreeMap<(usize, usize), usize>,
    /// The maximal group image `S/σ`, indexed by class.
    pub quotient: FiniteGroupTable,
}

pub fn sigma_classes(s: &FiniteInvSemigroup) -> Result<SigmaData> {
    let n = s.len();
    let idempotents = s.idempotents();
    let mut dsu = Dsu::new(n);
    let mut witnesses = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(&e) = idempotents.iter().find(|&&e| s.mul(e, a) == s.mul(e, b)) {
                witnesses.insert((a, b), e);
                dsu.union(a, b);
            }
        }
    }

    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        by_root.entry(dsu.find(a)).or_default().push(a);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    let mut class_of = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = c;
        }
    }

    // σ is already transitive, so every pair inside a class must carry a witness
    let pairs_in_classes: usize = classes.iter().map(|c| c.len() * (c.len() - 1) / 2).sum();
    ensure_invariant!(
        pairs_in_classes == witnesses.len(),
        "σ witness relation is not transitive ({} pairs vs {} witnessed)",
        pairs_in_classes,
        witnesses.len()
    );

    let k = classes.len();
    let mult: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| class_of[s.mul(classes[a][0], classes[b][0])]).collect())
        .collect();
    for a in 0..n {
        for b in 0..n {
            ensure_invariant!(
                class_of[s.mul(a, b)] == mult[class_of[a]][class_of[b]],
                "σ is not compatible with multiplication at ({a}, {b})"
            );
        }
    }
    let quotient = FiniteGroupTable::from_table(mult)
        .map_err(|e| Error::Invariant(format!("S/σ is not a group: {e}")))?;
    Ok(SigmaData { classes, class_of, witnesses, quotient })
}

/// Outcome of the E-unitary test; `witness` is a violating `(e, s)` with
/// `e` idempotent, `es` idempotent and `s` not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EUnitary {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

pub fn is_e_unitary(s: &FiniteInvSemigroup) -> Result<EUnitary> {
    let idempotents = s.idempotents();
    let mut witness = None;
    'search: for &e in &idempotents {
        for a in 0..s.len() {
            if !s.is_idempotent(a) && s.is_idempotent(s.mul(e, a)) {
                witness = Some((e, a));
                break 'search;
            }
        }
    }
    let holds = witness.is_none();

    let sigma = sigma_classes(s)?;
    let e_class = sigma.class_of[idempotents[0]];
    let e_is_class = idempotents.iter().all(|&e| sigma.class_of[e] == e_class)
        && sigma.classes[e_class].len() == idempotents.len();
    ensure_invariant!(
        holds == e_is_class,
        "E-unitary test ({holds}) disagrees with 'E is a σ-class' ({e_is_class})"
    );
    Ok(EUnitary { holds, witness })
}
