use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::moebius::moebius;
use super::poly::ComplexPolynomial;
use crate::error::{Error, Result};

/// Finite Blaschke product `ζ ∏ m_{α_j}`, stored by its zeros.
///
/// Repeated zeros encode multiplicity. Degree zero is the unimodular constant `ζ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBlaschke")]
pub struct BlaschkeProduct {
    unimodular_factor: Complex64,
    zeros: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawBlaschke {
    unimodular_factor: Complex64,
    zeros: Vec<Complex64>,
}

impl TryFrom<RawBlaschke> for BlaschkeProduct {
    type Error = Error;
    fn try_from(r: RawBlaschke) -> Result<Self> {
        Self::new(r.unimodular_factor, r.zeros)
    }
}

impl BlaschkeProduct {
    pub fn new(unimodular_factor: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if (unimodular_factor.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "unimodular factor {unimodular_factor} has modulus {}",
                unimodular_factor.norm()
            )));
        }
        if let Some(z) = zeros.iter().find(|z| z.norm() >= 1.0) {
            return Err(Error::OutsideDisc(format!("{z}")));
        }
        Ok(Self {
            unimodular_factor,
            zeros,
        })
    }

    /// `λ^k`.
    pub fn monomial(k: usize) -> Self {
        Self {
            unimodular_factor: Complex64::new(1.0, 0.0),
            zeros: vec![Complex64::new(0.0, 0.0); k],
        }
    }

    pub fn constant(zeta: Complex64) -> Result<Self> {
        Self::new(zeta, Vec::new())
    }

    pub fn unimodular_factor(&self) -> Complex64 {
        self.unimodular_factor
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, lam: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.unimodular_factor, |acc, &a| acc * moebius(a, lam))
    }

    /// Product of two Blaschke products (zeros concatenated).
    pub fn mul(&self, other: &Self) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        Self {
            unimodular_factor: self.unimodular_factor * other.unimodular_factor,
            zeros,
        }
    }

    /// Representative of the pair `{B, −B}` whose unimodular factor has
    /// nonnegative real part, ties broken by nonnegative imaginary part.
    pub fn sign_canonical(&self) -> Self {
        let z = self.unimodular_factor;
        let flip = z.re < 0.0 || (z.re == 0.0 && z.im < 0.0);
        Self {
            unimodular_factor: if flip { -z } else { z },
            zeros: self.zeros.clone(),
        }
    }

    /// Numerator and denominator polynomials `(N, D)` with `B = N / D`.
    pub fn expand(&self) -> (ComplexPolynomial, ComplexPolynomial) {
        let one = Complex64::new(1.0, 0.0);
        let mut num = ComplexPolynomial::constant(self.unimodular_factor);
        let mut den = ComplexPolynomial::constant(one);
        for &a in &self.zeros {
            num = num.mul(&ComplexPolynomial::new(vec![-a, one]));
            den = den.mul(&ComplexPolynomial::new(vec![one, -a.conj()]));
        }
        (num, den)
    }
}
