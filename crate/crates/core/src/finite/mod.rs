//! Finite inverse semigroups represented by partial injections.

mod factor;
mod greens;
mod partial;
mod semigroup;
mod sigma;

pub use factor::{maximal_subgroup, principal_factor, CayleyTable, MaximalSubgroup, PrincipalFactor};
pub use greens::{greens, principal_ideal, GreensData};
pub(crate) use greens::Dsu;
pub use partial::PartialInjection;
pub use semigroup::{FiniteInvSemigroup, Letter, Word};
pub use sigma::{is_e_unitary, sigma_classes, EUnitary, SigmaData};

use crate::error::Result;

/// Natural partial order on partial injections: `a <= b` iff `a = (aa⁻¹)b`.
pub fn natural_order(a: &PartialInjection, b: &PartialInjection) -> Result<bool> {
    a.natural_le(b)
}
