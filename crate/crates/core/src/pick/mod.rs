//! Interpolation feasibility and extremality oracles.
//!
//! For disc-valued data the Pick matrix decides everything: positive definite
//! data has interpolants with values compactly inside the disc, singular
//! positive semidefinite data is interpolated only by a Blaschke product of
//! degree equal to the rank, and indefinite data has no interpolant at all. In higher
//! dimension only the negative direction is computable, see
//! [`falsify_weak_extremality`].

mod falsify;
mod interpolant;
mod matrix;

pub use crate::mapspec::{Expr, MapSpec};
pub use falsify::{falsify_weak_extremality, FalsifierBudget, FalsifyOutcome};
pub use interpolant::{lagrange_polynomial, lemma28_interpolant, lemma28_with_radius, Lemma28Interpolant};
pub use matrix::{classify_pick, disc_weak_extremality, pick_matrix, PickClass, PickData, PickVerdict};
