//! Constructors for explicit extremal maps: ellipsoid extremal forms, the
//! divide/multiply operations on quasi-balanced domains, ball automorphisms
//! and normal forms, and the counterexample families.

mod ball;
mod edigarian;
mod family;
mod lemma10;
mod thm32;

pub use ball::{ball3_normal_form, chi, chi_eval, Ball3Params, BallAutomorphism};
pub use edigarian::{edigarian_check, edigarian_complete, edigarian_eval, normalize_amplitudes, EdigarianParams};
pub use family::{
    family_nc, family_prop1, family_prop40, family_propab, family_propmm, prop1_companion, Claims, MapFamily,
};
pub use lemma10::{lemma10_factor, lemma10_multiply, ImageClass};
pub use thm32::{thm32_forward, thm32_inverse, Thm32Params};
