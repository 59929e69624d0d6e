use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::multipoly::MultiPolynomial;
use crate::cplane::{circle_grid, BlaschkeProduct};
use crate::domains::DomainModel;
use crate::error::{Error, Result};
use crate::mapspec::MapSpec;
use crate::policy::NumericPolicy;

/// Composition residual at or below which `F ∘ f = B` is accepted.
pub const CERTIFY_RESIDUAL: f64 = 1e-9;
/// Sampled sup of `|F|` at or below `1 +` this is accepted.
pub const CERTIFY_SUP_SLACK: f64 = 1e-9;
/// Composition residual above which the candidate is rejected.
pub const REFUTE_RESIDUAL: f64 = 1e-4;
/// A sampled `|F|` above `1 +` this rejects the candidate.
pub const REFUTE_SUP_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleCounts {
    pub circle: usize,
    pub boundary: usize,
}

/// Record that `F ∘ f = B` for a candidate m-left inverse `F`.
///
/// The sup of `|F|` over the domain is estimated from random boundary points,
/// which is necessary evidence only; `sampled_bound` is always set so that a
/// certified verdict for a custom `F` is not read as a proof.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub map: MapSpec,
    pub domain: DomainModel,
    pub left_inverse: MultiPolynomial,
    pub blaschke: BlaschkeProduct,
    pub m: usize,
    pub residual_composition: f64,
    pub boundary_sup_estimate: f64,
    pub sample_counts: SampleCounts,
    pub seed: u64,
    pub sampled_bound: bool,
    pub degree_ok: bool,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

// Negated comparisons so that NaN residuals or sups are refuted.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn decide(residual: f64, sup: f64, degree_ok: bool) -> Verdict {
    if !(residual <= REFUTE_RESIDUAL) || !(sup <= 1.0 + REFUTE_SUP_SLACK) {
        Verdict::Refuted
    } else if residual <= CERTIFY_RESIDUAL && sup <= 1.0 + CERTIFY_SUP_SLACK && degree_ok {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    }
}

/// Checks that `F` is an m-left inverse of `f` with `F ∘ f = B`.
///
/// Uses `policy.circle_samples` points on the unit circle for the composition
/// residual and `policy.boundary_samples` boundary points of `dom`, drawn from
/// `seed`, for the sup of `|F|`.
pub fn verify_left_inverse(
    f: &MapSpec,
    left_inverse: &MultiPolynomial,
    blaschke: &BlaschkeProduct,
    dom: &DomainModel,
    m: usize,
    policy: &NumericPolicy,
    seed: u64,
) -> Result<Certificate> {
    for got in [f.dim(), left_inverse.nvars()] {
        if got != dom.dim() {
            return Err(Error::DimensionMismatch {
                expected: dom.dim(),
                got,
            });
        }
    }
    if policy.circle_samples == 0 || policy.boundary_samples == 0 {
        return Err(Error::InvalidParameter("sample counts must be positive".into()));
    }
    let residual = circle_grid(policy.circle_samples, 1.0)
        .par_iter()
        .map(|&l| (left_inverse.eval_unchecked(&f.eval(l)) - blaschke.eval(l)).norm())
        .reduce(|| 0.0, nan_max);
    let sup = dom
        .sample_boundary(policy.boundary_samples, seed)?
        .par_iter()
        .map(|z| left_inverse.eval_unchecked(z).norm())
        .reduce(|| 0.0, nan_max);
    let degree_ok = blaschke.degree() >= 1 && blaschke.degree() < m;
    Ok(Certificate {
        map: f.clone(),
        domain: dom.clone(),
        left_inverse: left_inverse.clone(),
        blaschke: blaschke.clone(),
        m,
        residual_composition: residual,
        boundary_sup_estimate: sup,
        sample_counts: SampleCounts {
            circle: policy.circle_samples,
            boundary: policy.boundary_samples,
        },
        seed,
        sampled_bound: true,
        degree_ok,
        verdict: decide(residual, sup, degree_ok),
    })
}

/// Max that lets NaN win, so a non-finite evaluation cannot certify.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Recomputes a certificate from its own inputs, sample counts and seed.
pub fn replay(cert: &Certificate) -> Result<Certificate> {
    let policy = NumericPolicy {
        circle_samples: cert.sample_counts.circle,
        boundary_samples: cert.sample_counts.boundary,
        ..NumericPolicy::default()
    };
    verify_left_inverse(
        &cert.map,
        &cert.left_inverse,
        &cert.blaschke,
        &cert.domain,
        cert.m,
        &policy,
        cert.seed,
    )
}

/// Whether `replay` reproduces every residual bit and the verdict.
pub fn replays_exactly(cert: &Certificate) -> Result<bool> {
    let again = replay(cert)?;
    Ok(again.residual_composition.to_bits() == cert.residual_composition.to_bits()
        && again.boundary_sup_estimate.to_bits() == cert.boundary_sup_estimate.to_bits()
        && again.verdict == cert.verdict)
}

pub(crate) fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::CustomGauge;
    use crate::maps::{family_propab, prop1_companion};

    fn small_policy() -> NumericPolicy {
        NumericPolicy {
            boundary_samples: 20_000,
            ..NumericPolicy::default()
        }
    }

    #[test]
    fn half_ellipsoid_sum_certifies() {
        let fam = prop1_companion(4, 0.25).unwrap();
        let f = MultiPolynomial::linear(&[real(1.0), real(1.0)]);
        let cert = verify_left_inverse(
            &fam.map,
            &f,
            &BlaschkeProduct::monomial(3),
            &fam.domain,
            4,
            &small_policy(),
            7,
        )
        .unwrap();
        assert_eq!(cert.verdict, Verdict::Certified, "{cert:?}");
        assert!(cert.residual_composition < 1e-14);
        assert!(cert.sampled_bound);
    }

    #[test]
    fn l1_squared_examples() {
        let fam = family_propab(4, 0.3).unwrap();
        let good = MultiPolynomial::from_real(3, &[(4.0, &[1, 1, 0]), (1.0, &[0, 0, 1])]).unwrap();
        let bad = MultiPolynomial::linear(&[real(1.0); 3]);
        let b = BlaschkeProduct::monomial(3);
        let p = small_policy();
        let cert = verify_left_inverse(&fam.map, &good, &b, &fam.domain, 4, &p, 1).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        let cert = verify_left_inverse(&fam.map, &bad, &b, &fam.domain, 4, &p, 1).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert!(cert.residual_composition > 0.1);
    }

    #[test]
    fn degree_bound_makes_inconclusive() {
        let fam = prop1_companion(4, 0.5).unwrap();
        let f = MultiPolynomial::linear(&[real(1.0), real(1.0)]);
        let cert = verify_left_inverse(
            &fam.map,
            &f,
            &BlaschkeProduct::monomial(3),
            &fam.domain,
            3,
            &small_policy(),
            0,
        )
        .unwrap();
        assert!(!cert.degree_ok);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn oversized_inverse_is_refuted_by_sampling() {
        // 2z₁ composes correctly with (λ/2, 0) but exceeds 1 on the ball.
        let dom = DomainModel::ball(2).unwrap();
        let f = MapSpec::monomials(&[(0.5, 1), (0.0, 1)]);
        let big = MultiPolynomial::linear(&[real(2.0), real(0.0)]);
        let cert =
            verify_left_inverse(&f, &big, &BlaschkeProduct::monomial(1), &dom, 2, &small_policy(), 3)
                .unwrap();
        assert!(cert.residual_composition < 1e-15);
        assert!(cert.boundary_sup_estimate > 1.9);
        assert_eq!(cert.verdict, Verdict::Refuted);
    }

    #[test]
    fn dimension_mismatch() {
        let dom = DomainModel::custom(CustomGauge::L2SquaredPlusModulus);
        let f = MapSpec::monomials(&[(0.5, 1), (0.5, 1)]);
        let inv = MultiPolynomial::linear(&[real(1.0), real(1.0)]);
        let r = verify_left_inverse(
            &f,
            &inv,
            &BlaschkeProduct::monomial(1),
            &dom,
            2,
            &small_policy(),
            0,
        );
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip_replays_bit_for_bit() {
        let fam = family_propab(5, 0.2).unwrap();
        let inv = MultiPolynomial::from_real(3, &[(4.0, &[1, 1, 0]), (1.0, &[0, 0, 1])]).unwrap();
        let cert = verify_left_inverse(
            &fam.map,
            &inv,
            &BlaschkeProduct::monomial(4),
            &fam.domain,
            5,
            &small_policy(),
            11,
        )
        .unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(replays_exactly(&back).unwrap());
    }
}
