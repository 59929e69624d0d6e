use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::ComplexPolynomial;
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};

const PAIRING_TOL: f64 = 1e-8;
const IDENTITY_TOL: f64 = 1e-8;

/// Parameters of the ellipsoid extremal form
/// `f_j = a_j ∏_k m_{α_kj}^{r_kj} ((1 − conj(α_kj)λ)/(1 − conj(α_k0)λ))^{1/p_j}`.
///
/// `alpha` and `r` are indexed `[k][j]` with `k < m − 1`, `j < n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct EdigarianParams {
    p: Vec<f64>,
    a: Vec<Complex64>,
    alpha: Vec<Vec<Complex64>>,
    alpha0: Vec<Complex64>,
    r: Vec<Vec<u8>>,
}

#[derive(Deserialize)]
struct RawParams {
    p: Vec<f64>,
    a: Vec<Complex64>,
    alpha: Vec<Vec<Complex64>>,
    alpha0: Vec<Complex64>,
    r: Vec<Vec<u8>>,
}

impl TryFrom<RawParams> for EdigarianParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        Self::new(r.p, r.a, r.alpha, r.alpha0, r.r)
    }
}

fn check_shapes(p: &[f64], a: &[Complex64], alpha: &[Vec<Complex64>], r: &[Vec<u8>]) -> Result<()> {
    let n = p.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty exponent vector".into()));
    }
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.len() });
    }
    if r.len() != alpha.len() {
        return Err(Error::DimensionMismatch {
            expected: alpha.len(),
            got: r.len(),
        });
    }
    for row in alpha {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
    }
    for row in r {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        if row.iter().any(|&v| v > 1) {
            return Err(Error::InvalidParameter("r entries must be 0 or 1".into()));
        }
    }
    if let Some(x) = p.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::InvalidParameter(format!("exponent {x} must be positive")));
    }
    if let Some(x) = a.iter().find(|x| x.norm() == 0.0 || !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("amplitude {x} must be nonzero")));
    }
    if let Some(x) = alpha.iter().flatten().find(|x| x.norm() > 1.0 + 1e-12) {
        return Err(Error::OutsideClosedDisc(format!("{x}")));
    }
    Ok(())
}

impl EdigarianParams {
    pub fn new(
        p: Vec<f64>,
        a: Vec<Complex64>,
        alpha: Vec<Vec<Complex64>>,
        alpha0: Vec<Complex64>,
        r: Vec<Vec<u8>>,
    ) -> Result<Self> {
        check_shapes(&p, &a, &alpha, &r)?;
        if alpha0.len() != alpha.len() {
            return Err(Error::DimensionMismatch {
                expected: alpha.len(),
                got: alpha0.len(),
            });
        }
        if let Some(x) = alpha0.iter().find(|x| x.norm() >= 1.0) {
            return Err(Error::OutsideDisc(format!("{x}")));
        }
        Ok(Self { p, a, alpha, alpha0, r })
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn m(&self) -> usize {
        self.alpha0.len() + 1
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn alpha(&self) -> &[Vec<Complex64>] {
        &self.alpha
    }

    pub fn alpha0(&self) -> &[Complex64] {
        &self.alpha0
    }

    pub fn r(&self) -> &[Vec<u8>] {
        &self.r
    }

    /// The map as an expression tree.
    pub fn to_map(&self) -> MapSpec {
        MapSpec::new(
            (0..self.n())
                .map(|j| {
                    let mut factors = vec![Expr::constant(self.a[j])];
                    for k in 0..self.alpha0.len() {
                        let akj = self.alpha[k][j];
                        if self.r[k][j] == 1 {
                            factors.push(Expr::moebius(akj));
                        }
                        if akj != self.alpha0[k] {
                            factors.push(Expr::RealPower {
                                alpha: akj,
                                alpha0: self.alpha0[k],
                                s: 1.0 / self.p[j],
                                arg: Box::new(Expr::Var),
                            });
                        }
                    }
                    Expr::mul(factors)
                })
                .collect(),
        )
    }
}

pub fn edigarian_eval(params: &EdigarianParams, lam: Complex64) -> Vec<Complex64> {
    params.to_map().eval(lam)
}

/// `(λ − α)(1 − conj(α)λ)`.
fn self_reciprocal_factor(alpha: Complex64) -> ComplexPolynomial {
    ComplexPolynomial::new(vec![-alpha, Complex64::new(1.0 + alpha.norm_sqr(), 0.0), -alpha.conj()])
}

/// `Σ_j |a_j|^{2p_j} ∏_k (λ − α_kj)(1 − conj(α_kj)λ)`.
fn weighted_sum(p: &[f64], a: &[Complex64], alpha: &[Vec<Complex64>]) -> ComplexPolynomial {
    let mut q = ComplexPolynomial::zero();
    for j in 0..p.len() {
        let mut term = ComplexPolynomial::constant(Complex64::new(a[j].norm().powf(2.0 * p[j]), 0.0));
        for row in alpha {
            term = term.mul(&self_reciprocal_factor(row[j]));
        }
        q = q.add(&term);
    }
    q
}

fn target_product(alpha0: &[Complex64]) -> ComplexPolynomial {
    alpha0
        .iter()
        .fold(ComplexPolynomial::constant(Complex64::new(1.0, 0.0)), |acc, &a| {
            acc.mul(&self_reciprocal_factor(a))
        })
}

/// Largest coefficient mismatch in the identity tying amplitudes and zeros
/// together; zero for a genuine instance.
pub fn edigarian_check(params: &EdigarianParams) -> f64 {
    weighted_sum(&params.p, &params.a, &params.alpha)
        .max_coefficient_distance(&target_product(&params.alpha0))
}

/// Rescales the amplitudes so that the weighted sum has the same value at
/// `λ = 1` as the target product, the only scale compatible with the identity.
pub fn normalize_amplitudes(p: &[f64], a: &[Complex64], alpha: &[Vec<Complex64>]) -> Result<Vec<Complex64>> {
    let r = vec![vec![0u8; p.len()]; alpha.len()];
    check_shapes(p, a, alpha, &r)?;
    // On the circle Q(λ)/λ^{m−1} = Σ_j |a_j|^{2p_j} ∏_k |λ − α_kj|² > 0, and
    // every root pair contributes |1 − α_k0|² at λ = 1.
    let q1 = weighted_sum(p, a, alpha).eval(Complex64::new(1.0, 0.0)).re;
    let roots = solve_alpha0(p, a, alpha)?;
    let r1 = target_product(&roots).eval(Complex64::new(1.0, 0.0)).re;
    let kappa = q1 / r1;
    Ok(a.iter()
        .zip(p)
        .map(|(aj, pj)| aj * kappa.powf(-1.0 / (2.0 * pj)))
        .collect())
}

/// Roots of the weighted sum inside the disc, with roots at 0 standing for
/// the pairs lost to degree deficiency.
fn solve_alpha0(p: &[f64], a: &[Complex64], alpha: &[Vec<Complex64>]) -> Result<Vec<Complex64>> {
    let m1 = alpha.len();
    let q = weighted_sum(p, a, alpha);
    let scale = q.coefficients().iter().fold(0.0f64, |s, c| s.max(c.norm()));
    if scale == 0.0 {
        return Err(Error::Degenerate("weighted sum vanishes identically".into()));
    }
    let tiny = 1e-14 * scale;
    let coeffs = q.coefficients();
    let low = coeffs.iter().take_while(|c| c.norm() <= tiny).count();
    let high = coeffs.iter().rev().take_while(|c| c.norm() <= tiny).count();
    let top = 2 * m1 + 1 - coeffs.len().min(2 * m1 + 1) + high;
    if low != top {
        return Err(Error::Infeasible(format!(
            "root at 0 of multiplicity {low} but degree deficiency {top}"
        )));
    }
    let trimmed = ComplexPolynomial::new(coeffs[low..coeffs.len() - high].to_vec());
    let roots = trimmed.roots()?;
    let mut inside = vec![Complex64::new(0.0, 0.0); low];
    let mut outside = Vec::new();
    for r in roots {
        if (r.norm() - 1.0).abs() < PAIRING_TOL {
            return Err(Error::Degenerate(format!("root {r} on the unit circle")));
        }
        if r.norm() < 1.0 {
            inside.push(r);
        } else {
            outside.push(r);
        }
    }
    if inside.len() != m1 {
        return Err(Error::Infeasible(format!(
            "{} roots inside the disc, expected {m1}",
            inside.len()
        )));
    }
    for r in &inside[low..] {
        let mirror = Complex64::new(1.0, 0.0) / r.conj();
        let pos = outside
            .iter()
            .position(|o| (o - mirror).norm() <= PAIRING_TOL * mirror.norm().max(1.0))
            .ok_or_else(|| Error::Infeasible(format!("root {r} has no reflected partner")))?;
        outside.swap_remove(pos);
    }
    Ok(inside)
}

/// Completes amplitudes, zeros and multiplicities to a full parameter set by
/// solving for the `α_k0` and checking the identity.
pub fn edigarian_complete(
    a: Vec<Complex64>,
    p: Vec<f64>,
    alpha: Vec<Vec<Complex64>>,
    r: Vec<Vec<u8>>,
) -> Result<EdigarianParams> {
    check_shapes(&p, &a, &alpha, &r)?;
    let alpha0 = solve_alpha0(&p, &a, &alpha)?;
    let params = EdigarianParams::new(p, a, alpha, alpha0, r)?;
    let residual = edigarian_check(&params);
    if residual > IDENTITY_TOL {
        return Err(Error::Infeasible(format!(
            "identity residual {residual:e} after completion; amplitudes are off scale"
        )));
    }
    Ok(params)
}
