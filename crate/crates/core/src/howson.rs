//! Generating sets for inverse subsemigroups of a finite inverse semigroup,
//! built one J-class at a time, and intersections assembled the same way.
//!
//! All elements are indices into an ambient [`FiniteInvSemigroup`]; a
//! generating set `X` is a slice of such indices.

use std::collections::{BTreeMap, BTreeSet};

use crate::brandt::{BrandtElement, BrandtSemigroup};
use crate::error::{ensure_invariant, Error, Result};
use crate::finite::{
    is_e_unitary, maximal_subgroup, principal_factor, principal_ideal, sigma_classes, FiniteInvSemigroup, GreensData,
    Letter, PrincipalFactor, Word,
};
use crate::group::FiniteGroupTable;

/// `t = ȳ₁⋯ȳₙ` with `ȳᵢ = eᵢyᵢ` and `eᵢ = yᵢ⋯yₙ t⁻¹ y₁⋯yᵢ₋₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallFactorization {
    pub target: usize,
    pub letters: Vec<usize>,
    pub bars: Vec<usize>,
    pub idempotents: Vec<usize>,
    /// For a letter `yᵢ = x⁻¹`, the idempotent `fᵢ = x eᵢ x⁻¹` with `ȳᵢ = (fᵢx)⁻¹`.
    pub conjugates: Vec<Option<usize>>,
}

fn same_j(s: &FiniteInvSemigroup, a: usize, b: usize) -> bool {
    principal_ideal(s, a) == principal_ideal(s, b)
}

pub fn hall_factorize(s: &FiniteInvSemigroup, x: &[usize], word: &Word, t: usize) -> Result<HallFactorization> {
    if t >= s.len() {
        return Err(Error::Precondition(format!("target index {t} out of range")));
    }
    let value = s.eval(x, word)?;
    if value != t {
        return Err(Error::Precondition(format!(
            "word {word} evaluates to {} rather than {}",
            s.element(value),
            s.element(t)
        )));
    }
    let letters: Vec<usize> = word.letters().iter().map(|&l| s.letter_value(x, l)).collect();
    let n = letters.len();
    let t_inv = s.inverse(t);
    let t_ideal = principal_ideal(s, t);
    let tree: BTreeSet<usize> = s.subclosure(x);

    let mut idempotents = Vec::with_capacity(n);
    let mut bars = Vec::with_capacity(n);
    let mut conjugates = Vec::with_capacity(n);
    for i in 0..n {
        let factors = letters[i..].iter().copied().chain([t_inv]).chain(letters[..i].iter().copied());
        let e = s.product(factors).expect("nonempty product");
        let bar = s.mul(e, letters[i]);
        ensure_invariant!(s.is_idempotent(e), "e_{} = {} is not idempotent", i + 1, s.element(e));
        ensure_invariant!(tree.contains(&e), "e_{} lies outside T", i + 1);
        ensure_invariant!(principal_ideal(s, e) == t_ideal, "e_{} is not in the J-class of t", i + 1);
        ensure_invariant!(principal_ideal(s, bar) == t_ideal, "ȳ_{} is not D-related to t", i + 1);

        let l: Letter = word.letters()[i];
        let conjugate = if l.inverse {
            let g = x[l.generator];
            let f = s.product([g, e, s.inverse(g)]).expect("nonempty product");
            ensure_invariant!(s.is_idempotent(f) && tree.contains(&f), "f_{} is not an idempotent of T", i + 1);
            ensure_invariant!(same_j(s, f, t), "f_{} is not in the J-class of t", i + 1);
            ensure_invariant!(s.inverse(s.mul(f, g)) == bar, "ȳ_{} differs from (f x)⁻¹", i + 1);
            Some(f)
        } else {
            None
        };
        idempotents.push(e);
        bars.push(bar);
        conjugates.push(conjugate);
    }
    ensure_invariant!(
        s.product(bars.iter().copied()) == Some(t),
        "product of the ȳ does not reconstruct t"
    );
    Ok(HallFactorization { target: t, letters, bars, idempotents, conjugates })
}

/// Generators `e·y` of `T ∩ J` for `e ∈ E_J ∩ T` and `y` a generator or inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceGenerators {
    pub class: usize,
    pub generators: Vec<usize>,
    /// `(e, letter)` with `generators[i] = e · letter`.
    pub provenance: Vec<(usize, Letter)>,
}

/// Inverse subsemigroup generated inside `PF(J)`, returned as ambient
/// members of `J` together with a flag for the synthetic zero.
pub fn closure_in_factor(pf: &PrincipalFactor, s: &FiniteInvSemigroup, gens: &[usize]) -> Result<(BTreeSet<usize>, bool)> {
    let mut letters = Vec::new();
    for &g in gens {
        let local = pf
            .local_of(g)
            .ok_or_else(|| Error::Precondition(format!("{} is not in the J-class", s.element(g))))?;
        let inv = pf.local_of(s.inverse(g)).expect("J-classes are inverse-closed");
        letters.extend([local, inv]);
    }
    letters.sort_unstable();
    letters.dedup();
    let mut seen = vec![false; pf.table.size()];
    let mut stack = letters.clone();
    for &l in &letters {
        seen[l] = true;
    }
    while let Some(a) = stack.pop() {
        for &l in &letters {
            let p = pf.table.mul(a, l);
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    let members = (0..pf.members.len()).filter(|&i| seen[i]).map(|i| pf.members[i]).collect();
    let zero = pf.zero.is_some_and(|z| seen[z]);
    Ok((members, zero))
}

pub fn trace_generators(
    s: &FiniteInvSemigroup,
    greens: &GreensData,
    x: &[usize],
    class: usize,
) -> Result<TraceGenerators> {
    let members = greens
        .d_classes
        .get(class)
        .ok_or_else(|| Error::Precondition(format!("no J-class with index {class}")))?;
    let tree = s.subclosure(x);
    let meet: BTreeSet<usize> = members.iter().copied().filter(|a| tree.contains(a)).collect();
    if meet.is_empty() {
        return Err(Error::Precondition(format!("T does not meet J-class {class}")));
    }

    let letters: Vec<Letter> = (0..x.len()).flat_map(|g| [Letter::gen(g), Letter::inv(g)]).collect();
    let mut found: BTreeMap<usize, (usize, Letter)> = BTreeMap::new();
    for &e in meet.iter().filter(|&&e| s.is_idempotent(e)) {
        for &l in &letters {
            let p = s.mul(e, s.letter_value(x, l));
            if meet.contains(&p) {
                found.entry(p).or_insert((e, l));
            }
        }
    }
    let (generators, provenance): (Vec<usize>, Vec<(usize, Letter)>) = found.into_iter().unzip();

    let pf = principal_factor(s, greens, class)?;
    let (generated, _) = closure_in_factor(&pf, s, &generators)?;
    ensure_invariant!(
        generated == meet,
        "trace generators of J-class {class} generate {} of the {} elements of T ∩ J",
        generated.len(),
        meet.len()
    );
    Ok(TraceGenerators { class, generators, provenance })
}

/// Per-class generating sets whose union generates `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembly {
    pub blocks: Vec<TraceGenerators>,
}

impl Assembly {
    pub fn union(&self) -> Vec<usize> {
        let all: BTreeSet<usize> = self.blocks.iter().flat_map(|b| b.generators.iter().copied()).collect();
        all.into_iter().collect()
    }
}

pub fn assemble(s: &FiniteInvSemigroup, greens: &GreensData, x: &[usize]) -> Result<Assembly> {
    let tree = s.subclosure(x);
    let blocks: Vec<TraceGenerators> = greens
        .d_classes_top_down()
        .into_iter()
        .filter(|&d| greens.d_classes[d].iter().any(|a| tree.contains(a)))
        .map(|d| trace_generators(s, greens, x, d))
        .collect::<Result<_>>()?;
    let assembly = Assembly { blocks };
    ensure_invariant!(s.subclosure(&assembly.union()) == tree, "union of per-class generators does not regenerate T");
    Ok(assembly)
}

/// An isomorphism between a principal factor and `B(G, I)`; `to_brandt` is
/// indexed by local index of the factor.
#[derive(Debug, Clone)]
pub struct BrandtCoordinates {
    pub brandt: BrandtSemigroup,
    /// Local indices of the row idempotents, in order.
    pub rows: Vec<usize>,
    /// `transversal[i]` lies in `H(rows[0], rows[i])`.
    pub transversal: Vec<usize>,
    /// Local indices of the base maximal subgroup, in group-index order.
    pub group_members: Vec<usize>,
    pub to_brandt: Vec<BrandtElement>,
    pub from_brandt: BTreeMap<BrandtElement, usize>,
}

pub fn brandt_coordinates(pf: &PrincipalFactor) -> Result<BrandtCoordinates> {
    let zero = pf
        .zero
        .ok_or_else(|| Error::Precondition("factor has no zero; it is a group and takes the group path".into()))?;
    let table = &pf.table;
    let m = pf.members.len();
    let inverse: Vec<usize> = (0..table.size())
        .map(|a| {
            table
                .inverse(a)
                .ok_or_else(|| Error::NotCompletelyZeroSimple(format!("local element {a} has no inverse")))
        })
        .collect::<Result<_>>()?;
    let rows: Vec<usize> = (0..m).filter(|&a| table.is_idempotent(a)).collect();
    if rows.is_empty() {
        return Err(Error::NotCompletelyZeroSimple("no nonzero idempotent".into()));
    }
    for &e in &rows {
        for &f in &rows {
            if e != f && table.mul(e, f) != zero {
                let lower = if table.mul(e, f) == f { f } else { e };
                let upper = if lower == f { e } else { f };
                return Err(Error::NotCompletelyZeroSimple(format!(
                    "idempotent {upper} is not primitive: a nonzero idempotent {lower} lies below it"
                )));
            }
        }
    }
    let range = |a: usize| table.mul(a, inverse[a]);
    let domain = |a: usize| table.mul(inverse[a], a);
    let row_of = |e: usize| rows.binary_search(&e).ok();

    let base = rows[0];
    let mut transversal = Vec::with_capacity(rows.len());
    for &e in &rows {
        let x = (0..m).find(|&a| range(a) == base && domain(a) == e).ok_or_else(|| {
            Error::NotCompletelyZeroSimple(format!("idempotents {base} and {e} are not D-related"))
        })?;
        transversal.push(x);
    }
    let group_members: Vec<usize> = (0..m).filter(|&a| range(a) == base && domain(a) == base).collect();
    let group_mult: Vec<Vec<usize>> = group_members
        .iter()
        .map(|&a| {
            group_members
                .iter()
                .map(|&b| group_members.binary_search(&table.mul(a, b)).expect("H-class of an idempotent is closed"))
                .collect()
        })
        .collect();
    let group = FiniteGroupTable::from_table(group_mult)
        .map_err(|e| Error::Invariant(format!("base H-class is not a group: {e}")))?;
    let brandt = BrandtSemigroup::new(group, rows.len())?;

    let mut to_brandt = vec![BrandtElement::Zero; table.size()];
    for a in 0..m {
        let (i, j) = match (row_of(range(a)), row_of(domain(a))) {
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::NotCompletelyZeroSimple(format!("local element {a} has a zero range or domain"))),
        };
        let core = table.mul(table.mul(transversal[i], a), inverse[transversal[j]]);
        let g = group_members.binary_search(&core).map_err(|_| {
            Error::NotCompletelyZeroSimple(format!("local element {a} does not reduce into the base group"))
        })?;
        to_brandt[a] = BrandtElement::triple(i, g, j);
    }
    let from_brandt: BTreeMap<BrandtElement, usize> = to_brandt.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    ensure_invariant!(from_brandt.len() == table.size(), "coordinate map is not injective");
    ensure_invariant!(from_brandt.len() == brandt.size(), "coordinate map is not onto B(G, I)");
    for a in 0..table.size() {
        for b in 0..table.size() {
            ensure_invariant!(
                to_brandt[table.mul(a, b)] == brandt.mul(to_brandt[a], to_brandt[b]),
                "coordinates do not transport the product of {a} and {b}"
            );
        }
    }
    Ok(BrandtCoordinates { brandt, rows, transversal, group_members, to_brandt, from_brandt })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassBlock {
    pub class: usize,
    pub is_kernel: bool,
    pub generators: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowsonIntersection {
    pub blocks: Vec<ClassBlock>,
    pub generators: Vec<usize>,
    pub empty: bool,
}

/// Generating set for `⟨U⟩ ∩ ⟨V⟩`, built per J-class: kernel classes are
/// intersected as groups, the rest in Brandt coordinates of their principal
/// factors.
pub fn intersect_fg(
    s: &FiniteInvSemigroup,
    greens: &GreensData,
    u_gens: &[usize],
    v_gens: &[usize],
) -> Result<HowsonIntersection> {
    for &g in u_gens.iter().chain(v_gens) {
        if g >= s.len() {
            return Err(Error::Precondition(format!("generator index {g} out of range")));
        }
    }
    let u = s.subclosure(u_gens);
    let v = s.subclosure(v_gens);
    let meet: BTreeSet<usize> = u.intersection(&v).copied().collect();

    let mut blocks = Vec::new();
    for d in greens.d_classes_top_down() {
        let members = &greens.d_classes[d];
        let local_meet: Vec<usize> = members.iter().copied().filter(|a| meet.contains(a)).collect();
        if local_meet.is_empty() {
            continue;
        }
        let pf = principal_factor(s, greens, d)?;
        let generators = if pf.zero.is_none() {
            local_meet
        } else {
            let coords = brandt_coordinates(&pf)?;
            let to_b = |a: &usize| coords.to_brandt[pf.local_of(*a).expect("member of J")];
            let u_b: Vec<BrandtElement> = trace_generators(s, greens, u_gens, d)?.generators.iter().map(to_b).collect();
            let v_b: Vec<BrandtElement> = trace_generators(s, greens, v_gens, d)?.generators.iter().map(to_b).collect();
            let inter = coords.brandt.intersect(&u_b, &v_b)?;
            let mut back: Vec<usize> = inter
                .generators
                .iter()
                .filter(|b| !b.is_zero())
                .map(|b| pf.members[coords.from_brandt[b]])
                .collect();
            back.sort_unstable();
            back.dedup();
            let (generated, _) = closure_in_factor(&pf, s, &back)?;
            ensure_invariant!(
                generated.iter().copied().eq(local_meet.iter().copied()),
                "Brandt intersection in J-class {d} does not match U ∩ V ∩ J"
            );
            back
        };
        blocks.push(ClassBlock { class: d, is_kernel: greens.kernel == Some(d), generators });
    }
    let generators: Vec<usize> = blocks
        .iter()
        .flat_map(|b| b.generators.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let empty = meet.is_empty();
    if !empty {
        ensure_invariant!(s.subclosure(&generators) == meet, "assembled generators do not regenerate U ∩ V");
    }
    Ok(HowsonIntersection { blocks, generators, empty })
}

/// Embedding of a maximal subgroup `H_e` into the kernel group via `a ↦ f·a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupEmbedding {
    pub idempotent: usize,
    pub members: Vec<usize>,
    pub images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EUnitaryReport {
    pub kernel_class: usize,
    pub kernel_idempotent: usize,
    pub kernel: Vec<usize>,
    /// `sigma_iso[i]` is the σ-class of `kernel[i]`; a bijection onto `S/σ`.
    pub sigma_iso: Vec<usize>,
    pub embeddings: Vec<SubgroupEmbedding>,
}

pub fn e_unitary_report(s: &FiniteInvSemigroup, greens: &GreensData) -> Result<EUnitaryReport> {
    let test = is_e_unitary(s)?;
    if let Some((e, a)) = test.witness {
        return Err(Error::Precondition(format!(
            "not E-unitary: {} and {}·{} are idempotent but {} is not",
            s.element(e),
            s.element(e),
            s.element(a),
            s.element(a)
        )));
    }
    let kernel_class = greens.kernel.ok_or_else(|| Error::Invariant("finite semigroup without a kernel".into()))?;
    let kernel = greens.d_classes[kernel_class].clone();
    let kernel_idempotents: Vec<usize> = kernel.iter().copied().filter(|&a| s.is_idempotent(a)).collect();
    ensure_invariant!(kernel_idempotents.len() == 1, "kernel of an E-unitary semigroup is not a group");
    let f = kernel_idempotents[0];
    let kernel_group = maximal_subgroup(s, f)?;
    ensure_invariant!(kernel_group.members == kernel, "kernel is not the maximal subgroup at its idempotent");

    let sigma = sigma_classes(s)?;
    let sigma_iso: Vec<usize> = kernel.iter().map(|&a| sigma.class_of[a]).collect();
    ensure_invariant!(
        sigma_iso.iter().collect::<BTreeSet<_>>().len() == sigma.quotient.order() && kernel.len() == sigma.quotient.order(),
        "kernel and S/σ have different orders or the natural map is not bijective"
    );
    for (i, &a) in kernel.iter().enumerate() {
        for (j, &b) in kernel.iter().enumerate() {
            let ab = kernel.binary_search(&s.mul(a, b)).expect("kernel group is closed");
            ensure_invariant!(
                sigma_iso[ab] == sigma.quotient.mul(sigma_iso[i], sigma_iso[j]),
                "natural map from the kernel to S/σ is not a homomorphism"
            );
        }
    }

    let mut embeddings = Vec::new();
    for e in s.idempotents() {
        let h = maximal_subgroup(s, e)?;
        let images: Vec<usize> = h.members.iter().map(|&a| s.mul(f, a)).collect();
        ensure_invariant!(images.iter().all(|a| kernel.binary_search(a).is_ok()), "f·H_e leaves the kernel");
        ensure_invariant!(
            images.iter().collect::<BTreeSet<_>>().len() == images.len(),
            "a ↦ f·a is not injective on H_{e}"
        );
        for (i, &a) in h.members.iter().enumerate() {
            for (j, &b) in h.members.iter().enumerate() {
                let ab = h.members.binary_search(&s.mul(a, b)).expect("H-class is closed");
                ensure_invariant!(images[ab] == s.mul(images[i], images[j]), "a ↦ f·a is not a homomorphism on H_{e}");
            }
        }
        embeddings.push(SubgroupEmbedding { idempotent: e, members: h.members, images });
    }
    Ok(EUnitaryReport { kernel_class, kernel_idempotent: f, kernel, sigma_iso, embeddings })
}
