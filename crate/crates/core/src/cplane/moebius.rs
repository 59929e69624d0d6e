use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The disc automorphism `m_α(λ) = (λ − α)/(1 − conj(α)λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    alpha: Complex64,
}

impl MoebiusMap {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if alpha.norm() >= 1.0 - 1e-12 {
            return Err(Error::OutsideDisc(format!("{alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// The inverse automorphism `m_{−α}`.
    pub fn inverse(&self) -> Self {
        Self { alpha: -self.alpha }
    }

    #[inline]
    pub fn eval(&self, lam: Complex64) -> Complex64 {
        moebius(self.alpha, lam)
    }
}

/// Unchecked `m_α(λ)`; callers guarantee `|α| < 1` or `|α| = 1, λ ≠ α`.
#[inline]
pub fn moebius(alpha: Complex64, lam: Complex64) -> Complex64 {
    (lam - alpha) / (Complex64::new(1.0, 0.0) - alpha.conj() * lam)
}

/// Checked evaluation of a Möbius map on the closed disc.
pub fn moebius_eval(m: &MoebiusMap, lam: Complex64) -> Result<Complex64> {
    if lam.norm() > 1.0 + 1e-12 {
        return Err(Error::OutsideClosedDisc(format!("{lam}")));
    }
    let den = Complex64::new(1.0, 0.0) - m.alpha.conj() * lam;
    if den.norm() < 1e-15 {
        return Err(Error::Internal("Möbius denominator vanished".into()));
    }
    Ok((lam - m.alpha) / den)
}

/// Poincaré distance `artanh |m_a(b)|` between two points of the disc.
pub fn poincare_distance(a: Complex64, b: Complex64) -> Result<f64> {
    for z in [a, b] {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisc(format!("{z}")));
        }
    }
    Ok(moebius(a, b).norm().min(1.0).atanh())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_zero_and_circle() {
        let id = MoebiusMap::new(c(0.0, 0.0)).unwrap();
        assert_eq!(moebius_eval(&id, c(0.3, 0.0)).unwrap(), c(0.3, 0.0));
        let m = MoebiusMap::new(c(0.5, 0.0)).unwrap();
        assert!(moebius_eval(&m, c(0.5, 0.0)).unwrap().norm() < 1e-15);
        let v = moebius_eval(&m, c(1.0, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_alpha_on_circle() {
        assert!(MoebiusMap::new(c(1.0, 0.0)).is_err());
        assert!(MoebiusMap::new(c(0.0, -0.9999999999999)).is_err());
    }

    #[test]
    fn inverse_composition_is_identity() {
        let m = MoebiusMap::new(c(0.4, -0.35)).unwrap();
        let inv = m.inverse();
        for k in 0..100 {
            let t = k as f64 * 0.0628;
            let lam = Complex64::from_polar(0.05 + 0.009 * k as f64, 7.0 * t);
            assert!((inv.eval(m.eval(lam)) - lam).norm() < 1e-12);
        }
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_distance(c(0.2, 0.0), c(0.2, 0.0)).unwrap(), 0.0);
        let d = poincare_distance(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((d - 0.5f64.atanh()).abs() < 1e-15);
        assert!((d - 0.5493).abs() < 1e-4);
        let ab = poincare_distance(c(0.1, 0.0), c(0.7, 0.0)).unwrap();
        let ba = poincare_distance(c(0.7, 0.0), c(0.1, 0.0)).unwrap();
        assert!((ab - ba).abs() < 1e-14);
        assert!(poincare_distance(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }
}
