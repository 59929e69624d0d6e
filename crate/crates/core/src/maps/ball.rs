use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::{inner, norm};
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};

/// `z ↦ U·χ_w(z)`, an automorphism of the unit ball in ℂⁿ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAutomorphism")]
pub struct BallAutomorphism {
    /// Rows of `U`.
    unitary: Vec<Vec<Complex64>>,
    w: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawAutomorphism {
    unitary: Vec<Vec<Complex64>>,
    w: Vec<Complex64>,
}

impl TryFrom<RawAutomorphism> for BallAutomorphism {
    type Error = Error;
    fn try_from(r: RawAutomorphism) -> Result<Self> {
        Self::new(r.unitary, r.w)
    }
}

impl BallAutomorphism {
    pub fn new(unitary: Vec<Vec<Complex64>>, w: Vec<Complex64>) -> Result<Self> {
        let n = w.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty ball point".into()));
        }
        if unitary.len() != n || unitary.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: unitary.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let g = inner(&unitary[i], &unitary[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                if (g - want).norm() > 1e-12 {
                    return Err(Error::InvalidParameter("matrix is not unitary".into()));
                }
            }
        }
        if norm(&w) >= 1.0 {
            return Err(Error::OutsideDisc(format!("|w| = {} ≥ 1", norm(&w))));
        }
        Ok(Self { unitary, w })
    }

    /// `χ_w` alone.
    pub fn from_point(w: Vec<Complex64>) -> Result<Self> {
        let n = w.len();
        let id = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Self::new(id, w)
    }

    pub fn w(&self) -> &[Complex64] {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }
}

/// The automorphism of the ball sending `w` to `0` and `0` to `−w`.
pub fn chi(w: &[Complex64], z: &[Complex64]) -> Result<Vec<Complex64>> {
    if w.len() != z.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: z.len(),
        });
    }
    let w2 = w.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if w2 == 0.0 {
        return Ok(z.to_vec());
    }
    let zw = inner(z, w);
    let den = Complex64::new(1.0, 0.0) - zw;
    if den.norm() < 1e-15 {
        return Err(Error::Internal("1 − ⟨z, w⟩ vanishes".into()));
    }
    let s = (1.0 - w2).sqrt();
    Ok(z.iter()
        .zip(w)
        .map(|(zj, wj)| (s * (w2 * zj - zw * wj) - w2 * wj + zw * wj) / (w2 * den))
        .collect())
}

pub fn chi_eval(aut: &BallAutomorphism, z: &[Complex64]) -> Result<Vec<Complex64>> {
    let x = chi(&aut.w, z)?;
    Ok(aut.unitary.iter().map(|row| row.iter().zip(&x).map(|(u, v)| u * v).sum()).collect())
}

/// `(a, α)` of the normal form `λ ↦ (aλ, √(1 − a²)·λ·m_α(λ), 0, …, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball3Params {
    pub a: f64,
    pub alpha: Complex64,
}

impl Ball3Params {
    pub fn new(a: f64, alpha: Complex64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidParameter(format!("a = {a} outside [0, 1]")));
        }
        if alpha.norm() >= 1.0 {
            return Err(Error::OutsideDisc(format!("{alpha}")));
        }
        Ok(Self { a, alpha })
    }
}

pub fn ball3_normal_form(params: Ball3Params, n: usize) -> Result<MapSpec> {
    if n < 2 {
        return Err(Error::InvalidParameter("normal form needs n ≥ 2".into()));
    }
    let Ball3Params { a, alpha } = Ball3Params::new(params.a, params.alpha)?;
    let mut comps = vec![
        Expr::monomial(Complex64::new(a, 0.0), 1),
        Expr::mul(vec![
            Expr::real((1.0 - a * a).sqrt()),
            Expr::Var,
            Expr::moebius(alpha),
        ]),
    ];
    comps.resize(n, Expr::zero());
    Ok(MapSpec::new(comps))
}
