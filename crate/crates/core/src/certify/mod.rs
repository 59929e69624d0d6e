//! Certificates and numerical checks.
//!
//! A map `f: 𝔻 → D` is an m-geodesic when some holomorphic `F: D → 𝔻` makes
//! `F ∘ f` a non-constant Blaschke product of degree at most `m − 1`.
//! [`verify_left_inverse`] checks such an `F` by sampling. The named left
//! inverses (ball, monomial, Lagrange-multiplier) have constructors here. The
//! slack functions reproduce the inequalities that rule out left inverses for
//! the counterexample families, and the boundary helpers profile radial
//! behaviour near the circle.

mod boundary;
mod certificate;
mod inverses;
mod multipoly;
mod slack;

pub use boundary::{
    compose_family_with_blaschke, compose_with_blaschke, derivative_count_check,
    derivative_count_report, profile_radii, properness_profile, DerivativeCount, Profile,
    ProfileRow, APPROACH_BAND, APPROACH_FRACTION, DERIVATIVE_STEP, DERIVATIVE_THRESHOLD,
};
pub use certificate::{
    replay, replays_exactly, verify_left_inverse, Certificate, SampleCounts, Verdict,
    CERTIFY_RESIDUAL, CERTIFY_SUP_SLACK, REFUTE_RESIDUAL, REFUTE_SUP_SLACK,
};
pub use inverses::{
    ball3_left_inverse, bl1_left_inverse, monomial_left_inverse, monomial_map,
    prop24_certificate, prop24_coefficients, RATIO_DENOMINATOR_CAP, RATIO_TOL,
};
pub use multipoly::{MultiPolynomial, Term};
pub use slack::{polydisc_test, product_rule, slack_prop1, slack_prop40, slack_propab};
