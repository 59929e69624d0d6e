//! Construction, testing and certification of (weak) m-extremal maps and
//! m-geodesics of the unit disc, polydisc, Euclidean ball, complex ellipsoids
//! and quasi-balanced gauge domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`cplane`]: Möbius maps, Blaschke products, Schur reduction.
//! * [`domains`]: gauge models, k-Minkowski functions, the `S_n` exponent class.
//! * [`pick`]: Pick matrices, extremality of disc data, interpolant
//!   construction and a one-sided falsifier for weak extremality.
//! * [`maps`]: explicit map families (Edigarian forms, ball normal forms,
//!   counterexample families) and the 3-extremal parameter solver.
//! * [`certify`]: left-inverse certificates, slack inequalities and boundary
//!   diagnostics.

pub mod certify;
pub mod cplane;
pub mod domains;
mod error;
pub mod mapspec;
pub mod maps;
pub mod pick;
mod policy;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use policy::NumericPolicy;

pub use certify::{Certificate, MultiPolynomial, Verdict};
pub use cplane::{BlaschkeProduct, ComplexPolynomial, MoebiusMap};
pub use domains::{CustomGauge, DomainModel, DomainKind, EllipsoidSpec, QuasiBalancedWeights};
pub use mapspec::{Expr, MapSpec};
pub use maps::{EdigarianParams, MapFamily};
pub use pick::{PickData, PickVerdict};

/// Shorthand for building complex scalars.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
