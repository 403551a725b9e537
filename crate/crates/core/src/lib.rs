//! Exact computations in inverse semigroups.
//!
//! The crate covers finite inverse semigroups of partial injections
//! ([`finite`]), Brandt semigroups ([`brandt`]), generating sets for
//! intersections of finitely generated inverse subsemigroups ([`howson`]),
//! the bicyclic monoid ([`bicyclic`]) and monogenic inverse semigroups
//! ([`monogenic`]). [`cli`] holds the command-line front end and file formats.

pub mod bicyclic;
pub mod cli;
pub mod brandt;
pub mod error;
pub mod finite;
pub mod group;
pub mod howson;
pub mod monogenic;

pub use error::{Error, ErrorKind, Result};
