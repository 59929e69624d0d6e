use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Univariate complex polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexPolynomial {
    coefficients: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coefficients: Vec<Complex64>) -> Self {
        while coefficients.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `∏ (λ − r)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let one = Complex64::new(1.0, 0.0);
        roots.iter().fold(Self::constant(one), |acc, &r| {
            acc.mul(&Self::new(vec![-r, one]))
        })
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> Complex64 {
        self.coefficients.get(k).copied().unwrap_or_default()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn eval(&self, lam: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * lam + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        Self::new((0..n).map(|k| self.coefficient(k) + other.coefficient(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coefficients.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Largest coefficient mismatch `max_k |a_k − b_k|`.
    pub fn max_coefficient_distance(&self, other: &Self) -> f64 {
        let n = self.coefficients.len().max(other.coefficients.len());
        (0..n)
            .map(|k| (self.coefficient(k) - other.coefficient(k)).norm())
            .fold(0.0, f64::max)
    }

    /// All roots, with multiplicity.
    ///
    /// Eigenvalues of the companion matrix, each polished by a few Newton steps
    /// on the original polynomial.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::InvalidParameter("roots of the zero polynomial".into()))?;
        if deg == 0 {
            return Ok(Vec::new());
        }
        let lead = self.coefficients[deg];
        let mut companion = DMatrix::<Complex64>::zeros(deg, deg);
        for i in 1..deg {
            companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..deg {
            companion[(i, deg - 1)] = -self.coefficients[i] / lead;
        }
        let schur = companion
            .try_schur(1e-15, 10_000)
            .ok_or_else(|| Error::Numeric("companion Schur iteration did not converge".into()))?;
        let (_, t) = schur.unpack();
        let deriv = self.derivative();
        let roots = (0..deg)
            .map(|i| {
                let mut z = t[(i, i)];
                for _ in 0..3 {
                    let d = deriv.eval(z);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = self.eval(z) / d;
                    if !step.is_finite() || step.norm() > 1e-6 * (1.0 + z.norm()) {
                        break;
                    }
                    z -= step;
                }
                z
            })
            .collect();
        Ok(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(ComplexPolynomial::new(vec![c(0.0, 0.0)]).is_zero());
    }

    #[test]
    fn roots_recovered() {
        let rs = [c(0.3, 0.1), c(-0.5, 0.2), c(2.0, -1.0), c(0.0, 0.0)];
        let p = ComplexPolynomial::from_roots(&rs).scale(c(0.3, -2.0));
        let mut found = p.roots().unwrap();
        assert_eq!(found.len(), 4);
        for r in rs {
            let (i, _) = found
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - r).norm().total_cmp(&(b.1 - r).norm()))
                .unwrap();
            assert!((found[i] - r).norm() < 1e-12, "{r} vs {}", found[i]);
            found.remove(i);
        }
    }

    #[test]
    fn arithmetic() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0)]);
        let q = ComplexPolynomial::new(vec![c(0.0, 1.0), c(1.0, 0.0)]);
        let lam = c(0.3, 0.4);
        assert!((p.mul(&q).eval(lam) - p.eval(lam) * q.eval(lam)).norm() < 1e-15);
        assert!((p.sub(&q).eval(lam) - (p.eval(lam) - q.eval(lam))).norm() < 1e-15);
        assert_eq!(p.derivative().coefficients(), &[c(2.0, 0.0)]);
    }
}
