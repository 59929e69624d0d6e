//! Schur reduction of disc functions and the Schur recursion on
//! interpolation data.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::blaschke::BlaschkeProduct;
use super::moebius::moebius;
use crate::error::{Error, Result};
use crate::policy::NumericPolicy;

/// A function on the closed disc that can be evaluated pointwise.
pub trait DiscFunction {
    fn eval(&self, lam: Complex64) -> Complex64;
}

impl<F: Fn(Complex64) -> Complex64> DiscFunction for F {
    fn eval(&self, lam: Complex64) -> Complex64 {
        self(lam)
    }
}

impl DiscFunction for BlaschkeProduct {
    fn eval(&self, lam: Complex64) -> Complex64 {
        BlaschkeProduct::eval(self, lam)
    }
}

struct Boxed(Box<dyn DiscFunction>);

impl DiscFunction for Boxed {
    fn eval(&self, lam: Complex64) -> Complex64 {
        self.0.eval(lam)
    }
}

/// Point samples of a disc function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub points: Vec<Complex64>,
    pub values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn sample<F: DiscFunction + ?Sized>(f: &F, points: &[Complex64]) -> Self {
        Self {
            points: points.to_vec(),
            values: points.iter().map(|&z| f.eval(z)).collect(),
        }
    }

    pub fn max_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

// Below this modulus the quotient m_{f0}(f(λ))/λ is replaced by the
// Cauchy integral over a fixed inner circle.
const NEAR_ZERO: f64 = 1e-3;
const CAUCHY_RADIUS: f64 = 0.5;
const CAUCHY_NODES: usize = 64;

/// One Schur reduction `g(λ) = m_{f0}(f(λ)) / λ` of a disc function.
pub struct SchurReduced<F> {
    inner: F,
    f0: Complex64,
    circle: Vec<Complex64>,
}

impl<F: DiscFunction> SchurReduced<F> {
    pub fn f0(&self) -> Complex64 {
        self.f0
    }

    pub fn sample(&self, points: &[Complex64]) -> SampledFunction {
        SampledFunction::sample(self, points)
    }

    fn quotient(&self, lam: Complex64) -> Complex64 {
        moebius(self.f0, self.inner.eval(lam)) / lam
    }
}

impl<F: DiscFunction> DiscFunction for SchurReduced<F> {
    fn eval(&self, lam: Complex64) -> Complex64 {
        if lam.norm() >= NEAR_ZERO {
            return self.quotient(lam);
        }
        // Removable singularity at 0: trapezoidal Cauchy integral, which only
        // touches the inner function away from the origin.
        let sum: Complex64 = self
            .circle
            .iter()
            .map(|&z| self.quotient(z) * z / (z - lam))
            .sum();
        sum / self.circle.len() as f64
    }
}

/// Schur reduction of `f`, whose value at the origin is `f0`.
pub fn schur_step<F: DiscFunction>(f: F, f0: Complex64) -> Result<SchurReduced<F>> {
    let r = f0.norm();
    if r > 1.0 + 1e-10 {
        return Err(Error::OutsideClosedDisc(format!("{f0}")));
    }
    if r >= 1.0 - 1e-10 {
        return Err(Error::NotReducible);
    }
    Ok(SchurReduced {
        inner: f,
        f0,
        circle: super::circle_grid(CAUCHY_NODES, CAUCHY_RADIUS),
    })
}

/// Number of Schur reductions until the value at 0 becomes unimodular, i.e.
/// the Blaschke degree of a finite Blaschke product. `None` if `max_steps`
/// reductions do not reach a unimodular constant.
pub fn schur_degree(
    f: Box<dyn DiscFunction>,
    max_steps: usize,
    policy: &NumericPolicy,
) -> Result<Option<usize>> {
    let mut current = Boxed(f);
    for step in 0..=max_steps {
        let f0 = current.eval(Complex64::new(0.0, 0.0));
        if (f0.norm() - 1.0).abs() <= policy.unimodular_tol {
            return Ok(Some(step));
        }
        if step == max_steps {
            break;
        }
        current = Boxed(Box::new(schur_step(current, f0)?));
    }
    Ok(None)
}

/// Outcome of the Schur recursion on interpolation data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlaschkeDegree {
    /// The data is interpolated by exactly one function into the closed disc,
    /// a Blaschke product of this degree (`< m`).
    Extremal { degree: usize },
    /// The data has interpolants with values in the open disc; the least
    /// degree of a Blaschke interpolant is then the number of nodes.
    NotExtremal { min_degree: usize },
}

impl BlaschkeDegree {
    /// Least Blaschke degree consistent with the data.
    pub fn min_degree(&self) -> usize {
        match *self {
            Self::Extremal { degree } => degree,
            Self::NotExtremal { min_degree } => min_degree,
        }
    }

    pub fn extremal_degree(&self) -> Option<usize> {
        match *self {
            Self::Extremal { degree } => Some(degree),
            Self::NotExtremal { .. } => None,
        }
    }
}

/// Nevanlinna–Pick/Schur recursion on `(nodes, values)`.
///
/// Each step pivots on the value farthest from the circle and maps the
/// remaining data by `w ↦ m_{w₁}(w) / m_{λ₁}(λ)`. The degree does not depend
/// on the pivot order; this order keeps the Möbius steps well conditioned.
///
/// Every value carries a first-order amplification factor, the factor by
/// which a unit perturbation of the input data can have grown, and the
/// unimodular band is `policy.unimodular_tol` relative to it.
pub fn blaschke_degree_of_data(
    nodes: &[Complex64],
    values: &[Complex64],
    policy: &NumericPolicy,
) -> Result<BlaschkeDegree> {
    if nodes.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            got: values.len(),
        });
    }
    if nodes.is_empty() {
        return Err(Error::InvalidParameter("empty interpolation data".into()));
    }
    for (i, a) in nodes.iter().enumerate() {
        if a.norm() >= 1.0 {
            return Err(Error::OutsideDisc(format!("{a}")));
        }
        if nodes[..i].iter().any(|b| (a - b).norm() < 1e-8) {
            return Err(Error::InvalidParameter("nodes are not distinct".into()));
        }
    }
    let m = nodes.len();
    let tol = policy.unimodular_tol;
    let mut lam = nodes.to_vec();
    let mut w = values.to_vec();
    let mut amp = vec![1.0f64; m];
    let one = Complex64::new(1.0, 0.0);
    for step in 0..m {
        let pivot = (0..w.len()).min_by(|&i, &j| w[i].norm().total_cmp(&w[j].norm())).expect("nonempty");
        lam.swap(0, pivot);
        w.swap(0, pivot);
        amp.swap(0, pivot);
        let w1 = w[0];
        let r = w1.norm();
        if r > 1.0 + tol * amp[0] {
            return Err(Error::Infeasible(format!(
                "transformed value of modulus {r} at reduction step {step}"
            )));
        }
        if r >= 1.0 - tol * amp[0] {
            // Maximum principle: the rest of the data must be the same constant.
            let spread = w.iter().map(|v| (v - w1).norm()).fold(0.0, f64::max);
            let scale = amp.iter().copied().fold(1.0, f64::max);
            if spread > (tol * scale).sqrt() {
                return Err(Error::Infeasible(format!(
                    "unimodular value at step {step} but data spread {spread}"
                )));
            }
            return Ok(BlaschkeDegree::Extremal { degree: step });
        }
        let l1 = lam[0];
        let mut next = Vec::with_capacity(lam.len() - 1);
        for i in 1..lam.len() {
            let (l, v) = (lam[i], w[i]);
            let den = one - w1.conj() * v;
            let shrink = moebius(l1, l).norm();
            // |∂m_a(v)/∂v| and |∂m_a(v)/∂a| + |∂m_a(v)/∂ā| at a = w₁.
            let dv = (1.0 - r * r) / den.norm_sqr();
            let da = 1.0 / den.norm() + ((v - w1) * v).norm() / den.norm_sqr();
            let value = moebius(w1, v) / moebius(l1, l);
            if value.norm() > 1.0 + tol * amp[i] {
                return Err(Error::Infeasible(format!(
                    "transformed value of modulus {} at reduction step {}",
                    value.norm(),
                    step + 1
                )));
            }
            next.push((l, value, (amp[i] * dv + amp[0] * da) / shrink));
        }
        lam = next.iter().map(|p| p.0).collect();
        w = next.iter().map(|p| p.1).collect();
        amp = next.iter().map(|p| p.2).collect();
        if lam.is_empty() {
            break;
        }
    }
    Ok(BlaschkeDegree::NotExtremal { min_degree: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplane::circle_grid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> Vec<Complex64> {
        let mut pts = circle_grid(16, 0.7);
        pts.extend(circle_grid(8, 0.2));
        pts.push(c(0.0, 0.0));
        pts
    }

    #[test]
    fn squared_reduces_to_identity() {
        let f = |z: Complex64| z * z;
        let g = schur_step(f, c(0.0, 0.0)).unwrap();
        let want = SampledFunction::sample(&|z: Complex64| z, &grid());
        assert!(g.sample(&grid()).max_distance(&want) < 1e-10);
    }

    #[test]
    fn factor_removal() {
        let f = |z: Complex64| z * moebius(c(0.3, 0.0), z);
        let g = schur_step(f, c(0.0, 0.0)).unwrap();
        let want = SampledFunction::sample(&|z: Complex64| moebius(c(0.3, 0.0), z), &grid());
        assert!(g.sample(&grid()).max_distance(&want) < 1e-10);
    }

    #[test]
    fn constant_reduces_to_zero() {
        let f = |_: Complex64| c(0.4, 0.0);
        let g = schur_step(f, c(0.4, 0.0)).unwrap();
        assert!(g.sample(&grid()).values.iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn unimodular_constant_not_reducible() {
        let f = |_: Complex64| c(0.0, 1.0);
        assert_eq!(schur_step(f, c(0.0, 1.0)).err(), Some(Error::NotReducible));
    }

    #[test]
    fn degree_recovered_by_repeated_reduction() {
        let b = BlaschkeProduct::new(
            Complex64::from_polar(1.0, 0.7),
            vec![c(0.3, 0.2), c(-0.5, 0.1), c(0.0, 0.6), c(0.1, -0.4), c(0.6, 0.0)],
        )
        .unwrap();
        let d = schur_degree(Box::new(b), 8, &NumericPolicy::default()).unwrap();
        assert_eq!(d, Some(5));
    }

    #[test]
    fn data_examples() {
        let p = NumericPolicy::default();
        let id = [c(0.0, 0.0), c(0.3, 0.0), c(0.6, 0.0)];
        assert_eq!(
            blaschke_degree_of_data(&id, &id, &p).unwrap(),
            BlaschkeDegree::Extremal { degree: 1 }
        );
        let sq = blaschke_degree_of_data(&[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.25, 0.0)], &p)
            .unwrap();
        assert_eq!(sq.min_degree(), 2);
        assert_eq!(sq.extremal_degree(), None);
        let bad = blaschke_degree_of_data(&[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.9, 0.0)], &p);
        assert!(matches!(bad, Err(Error::Infeasible(_))));
    }

    #[test]
    fn unimodular_constant_data_has_degree_zero() {
        let p = NumericPolicy::default();
        let z = Complex64::from_polar(1.0, 0.3);
        let d = blaschke_degree_of_data(&[c(0.1, 0.0), c(0.2, 0.3)], &[z, z], &p).unwrap();
        assert_eq!(d, BlaschkeDegree::Extremal { degree: 0 });
    }

    #[test]
    fn degree_round_trips_through_json() {
        for d in [BlaschkeDegree::Extremal { degree: 2 }, BlaschkeDegree::NotExtremal { min_degree: 3 }] {
            let text = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<BlaschkeDegree>(&text).unwrap(), d);
        }
    }
}
