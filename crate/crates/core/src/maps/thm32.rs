use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::moebius;
use crate::error::{Error, Result};

const BRACKET_WIDTH: f64 = 1e-12;

/// Normal-form parameters `(α, β, γ)` of a ball 3-extremal, with
/// `α, β ≥ 0`, `α² + β² = 1` and `γ` in the disc.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm32Params {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: Complex64,
}

/// Normal form of the 3-geodesic `(a·m_c, b·m_c²)`, `a = √(1 − b²)`, of the
/// ball in ℂ².
pub fn thm32_forward(b: f64, c: Complex64) -> Result<Thm32Params> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::InvalidParameter(format!("b = {b} outside (0, 1)")));
    }
    let c2 = c.norm_sqr();
    if !(c2 > 0.0 && c2 < 1.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must lie in the punctured disc")));
    }
    let b2 = b * b;
    let den = 1.0 - b2 * b2 * c2;
    let gamma = c * (1.0 + b2) / (1.0 + b2 * c2);
    let beta2 = (b2 - b2 * c2) / den;
    let alpha2 = (1.0 - b2) * (1.0 + b2 * c2) / den;
    Ok(Thm32Params {
        alpha: alpha2.sqrt(),
        beta: beta2.sqrt(),
        gamma,
    })
}

fn m(a: f64, x: f64) -> f64 {
    moebius(Complex64::new(a, 0.0), Complex64::new(x, 0.0)).re
}

/// Real `(b, c)` with `β(b, c)² = p` and `γ(b, c) = q`.
///
/// `F(λ) = m_q(λ) − λ·m_p(λ·m_q(λ))` has `F(0) = −q < 0 < pq = F(q)`; its
/// root `c` in `(0, q)` determines `b² = −m_q(c)/c`.
pub fn thm32_inverse(p: f64, q: f64) -> Result<(f64, f64)> {
    if !(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("(p, q) = ({p}, {q}) outside (0, 1)²")));
    }
    let f = |x: f64| m(q, x) - x * m(p, x * m(q, x));
    let (mut lo, mut hi) = (0.0, q);
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::Numeric(format!("no sign change: F(0) = {flo}, F(q) = {fhi}")));
    }
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = 0.5 * (lo + hi);
    let b2 = -m(q, c) / c;
    if !(b2 > 0.0 && b2 < 1.0) {
        return Err(Error::Numeric(format!("recovered b² = {b2} outside (0, 1)")));
    }
    Ok((b2.sqrt(), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplane::{circle_grid, inner, norm};
    use crate::maps::ball::chi;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn forward_example() {
        let t = thm32_forward(0.5f64.sqrt(), c(0.5, 0.0)).unwrap();
        assert!((t.gamma - c(2.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((t.beta.powi(2) - 0.4).abs() < 1e-12);
        assert!((t.alpha.powi(2) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn forward_limits() {
        let b: f64 = 0.7;
        let t = thm32_forward(b, c(1e-6, 0.0)).unwrap();
        assert!(t.gamma.norm() < 1e-5);
        assert!((t.beta.powi(2) - b * b).abs() < 1e-10);
        assert!((t.alpha.powi(2) - (1.0 - b * b)).abs() < 1e-10);
        assert!(thm32_forward(1e-6, c(0.5, 0.2)).unwrap().beta < 1e-5);
        assert!(thm32_forward(0.0, c(0.5, 0.0)).is_err());
        assert!(thm32_forward(0.5, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn inverse_example() {
        let (b, cc) = thm32_inverse(0.4, 2.0 / 3.0).unwrap();
        assert!((b * b - 0.5).abs() < 1e-10);
        assert!((cc - 0.5).abs() < 1e-10);
    }

    #[test]
    fn inverse_degenerates_as_p_vanishes() {
        let bs: Vec<f64> = [0.1, 0.01, 0.001].iter().map(|&p| thm32_inverse(p, 0.5).unwrap().0).collect();
        assert!(bs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn grid_round_trip() {
        for i in 1..10 {
            for j in 1..10 {
                let (p, q) = (i as f64 / 10.0, j as f64 / 10.0);
                let (b, cc) = thm32_inverse(p, q).unwrap();
                let t = thm32_forward(b, c(cc, 0.0)).unwrap();
                assert!((t.beta.powi(2) - p).abs() < 1e-8, "{p} {q}");
                assert!((t.gamma - c(q, 0.0)).norm() < 1e-8);
                assert!((t.alpha.powi(2) + t.beta.powi(2) - 1.0).abs() < 1e-12);
            }
        }
    }

    /// The two maps are related by `χ_w` and a unitary, so their Gram
    /// matrices over any set of disc points agree.
    #[test]
    fn forward_matches_ball_equivalence() {
        for (b, cc) in [(0.3, c(0.4, 0.0)), (0.8, c(-0.2, 0.5)), (0.55, c(0.1, -0.7))] {
            let a = (1.0f64 - b * b).sqrt();
            let t = thm32_forward(b, cc).unwrap();
            let w = [-a * cc, b * cc * cc];
            let pts = circle_grid(11, 0.8);
            let lhs: Vec<Vec<Complex64>> = pts
                .iter()
                .map(|&l| {
                    let mc = moebius(cc, l);
                    chi(&w, &[a * mc, b * mc * mc]).unwrap()
                })
                .collect();
            let rhs: Vec<Vec<Complex64>> =
                pts.iter().map(|&l| vec![t.alpha * l, t.beta * l * moebius(t.gamma, l)]).collect();
            for i in 0..pts.len() {
                assert!((norm(&lhs[i]) - norm(&rhs[i])).abs() < 1e-12);
                for j in 0..pts.len() {
                    let d = inner(&lhs[i], &lhs[j]) - inner(&rhs[i], &rhs[j]);
                    assert!(d.norm() < 1e-12);
                }
            }
        }
    }
}
