//! Evaluable expression trees for holomorphic maps `𝔻 → ℂⁿ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::{circle_grid, moebius, BlaschkeProduct, ComplexPolynomial};
use crate::error::{Error, Result};

const REMOVABLE_RADIUS: f64 = 1e-3;
const CAUCHY_NODES: usize = 64;

/// Scalar holomorphic expression in the disc variable `λ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Expr {
    Const {
        value: Complex64,
    },
    Var,
    /// `m_α(arg)`; for `|α| = 1` the unimodular constant `−α`.
    Moebius {
        alpha: Complex64,
        arg: Box<Expr>,
    },
    Pow {
        base: Box<Expr>,
        exp: i32,
    },
    /// `((1 − conj(α)·arg)/(1 − conj(α₀)·arg))^s` on principal logarithms.
    RealPower {
        alpha: Complex64,
        alpha0: Complex64,
        s: f64,
        arg: Box<Expr>,
    },
    Poly {
        poly: ComplexPolynomial,
        arg: Box<Expr>,
    },
    Blaschke {
        product: BlaschkeProduct,
        arg: Box<Expr>,
    },
    Mul {
        factors: Vec<Expr>,
    },
    Add {
        terms: Vec<Expr>,
    },
    /// `num / m_α^power`, with the removable singularity at `α` filled in.
    DivMoebius {
        num: Box<Expr>,
        alpha: Complex64,
        power: u32,
    },
    /// `outer(inner(λ))`.
    Compose {
        outer: Box<Expr>,
        inner: Box<Expr>,
    },
}

impl Expr {
    pub fn constant(value: Complex64) -> Self {
        Self::Const { value }
    }

    pub fn real(value: f64) -> Self {
        Self::constant(Complex64::new(value, 0.0))
    }

    pub fn zero() -> Self {
        Self::real(0.0)
    }

    /// `m_α(λ)`.
    pub fn moebius(alpha: Complex64) -> Self {
        Self::Moebius {
            alpha,
            arg: Box::new(Self::Var),
        }
    }

    /// `λ^k`.
    pub fn var_pow(k: i32) -> Self {
        match k {
            1 => Self::Var,
            _ => Self::Pow {
                base: Box::new(Self::Var),
                exp: k,
            },
        }
    }

    /// `c·λ^k`.
    pub fn monomial(c: Complex64, k: i32) -> Self {
        Self::mul(vec![Self::constant(c), Self::var_pow(k)])
    }

    pub fn pow(self, exp: i32) -> Self {
        match exp {
            1 => self,
            _ => Self::Pow {
                base: Box::new(self),
                exp,
            },
        }
    }

    pub fn mul(factors: Vec<Expr>) -> Self {
        Self::Mul { factors }
    }

    pub fn add(terms: Vec<Expr>) -> Self {
        Self::Add { terms }
    }

    pub fn poly(poly: ComplexPolynomial) -> Self {
        Self::Poly {
            poly,
            arg: Box::new(Self::Var),
        }
    }

    pub fn blaschke(product: BlaschkeProduct) -> Self {
        Self::Blaschke {
            product,
            arg: Box::new(Self::Var),
        }
    }

    pub fn eval(&self, lam: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Self::Const { value } => *value,
            Self::Var => lam,
            Self::Moebius { alpha, arg } => {
                if alpha.norm() >= 1.0 - 1e-15 {
                    -*alpha
                } else {
                    moebius(*alpha, arg.eval(lam))
                }
            }
            Self::Pow { base, exp } => base.eval(lam).powi(*exp),
            Self::RealPower {
                alpha,
                alpha0,
                s,
                arg,
            } => {
                let x = arg.eval(lam);
                let num = one - alpha.conj() * x;
                let den = one - alpha0.conj() * x;
                if num == Complex64::new(0.0, 0.0) {
                    // Radial limit at a boundary zero.
                    return if *s > 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(f64::INFINITY, 0.0)
                    };
                }
                ((num.ln() - den.ln()) * *s).exp()
            }
            Self::Poly { poly, arg } => poly.eval(arg.eval(lam)),
            Self::Blaschke { product, arg } => product.eval(arg.eval(lam)),
            Self::Mul { factors } => factors.iter().map(|f| f.eval(lam)).product(),
            Self::Add { terms } => terms.iter().map(|t| t.eval(lam)).sum(),
            Self::DivMoebius { num, alpha, power } => {
                let quotient =
                    |z: Complex64| num.eval(z) / moebius(*alpha, z).powu(*power);
                if (lam - alpha).norm() >= REMOVABLE_RADIUS {
                    return quotient(lam);
                }
                let rho = removable_radius(*alpha);
                let sum: Complex64 = circle_grid(CAUCHY_NODES, rho)
                    .into_iter()
                    .map(|w| quotient(alpha + w) * w / (alpha + w - lam))
                    .sum();
                sum / CAUCHY_NODES as f64
            }
            Self::Compose { outer, inner } => outer.eval(inner.eval(lam)),
        }
    }

    /// Replace the variable by `inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        let sub = |e: &Expr| Box::new(e.substitute(inner));
        match self {
            Self::Const { .. } => self.clone(),
            Self::Var => inner.clone(),
            Self::Moebius { alpha, arg } => Self::Moebius {
                alpha: *alpha,
                arg: sub(arg),
            },
            Self::Pow { base, exp } => Self::Pow {
                base: sub(base),
                exp: *exp,
            },
            Self::RealPower {
                alpha,
                alpha0,
                s,
                arg,
            } => Self::RealPower {
                alpha: *alpha,
                alpha0: *alpha0,
                s: *s,
                arg: sub(arg),
            },
            Self::Poly { poly, arg } => Self::Poly {
                poly: poly.clone(),
                arg: sub(arg),
            },
            Self::Blaschke { product, arg } => Self::Blaschke {
                product: product.clone(),
                arg: sub(arg),
            },
            Self::Mul { factors } => Self::Mul {
                factors: factors.iter().map(|f| f.substitute(inner)).collect(),
            },
            Self::Add { terms } => Self::Add {
                terms: terms.iter().map(|t| t.substitute(inner)).collect(),
            },
            // The removable-singularity evaluation needs the variable itself.
            Self::DivMoebius { .. } | Self::Compose { .. } => Self::Compose {
                outer: Box::new(self.clone()),
                inner: Box::new(inner.clone()),
            },
        }
    }

    /// True for the factor `m_α(λ)` (or `λ` when `α = 0`).
    fn is_moebius_factor(&self, alpha: Complex64) -> bool {
        match self {
            Self::Var => alpha.norm() == 0.0,
            Self::Moebius { alpha: a, arg } => *a == alpha && **arg == Self::Var,
            _ => false,
        }
    }

    /// Power of `m_α` that can be cancelled symbolically.
    fn moebius_multiplicity(&self, alpha: Complex64) -> u32 {
        match self {
            e if e.is_moebius_factor(alpha) => 1,
            Self::Pow { base, exp } if *exp > 0 && base.is_moebius_factor(alpha) => *exp as u32,
            Self::Blaschke { product, arg } if **arg == Self::Var => {
                product.zeros().iter().filter(|z| **z == alpha).count() as u32
            }
            Self::Mul { factors } => factors.iter().map(|f| f.moebius_multiplicity(alpha)).sum(),
            _ => 0,
        }
    }

    fn cancel_moebius(&self, alpha: Complex64, mut k: u32) -> Expr {
        match self {
            e if e.is_moebius_factor(alpha) => {
                debug_assert_eq!(k, 1);
                Self::real(1.0)
            }
            Self::Pow { base, exp } => Self::Pow {
                base: base.clone(),
                exp: exp - k as i32,
            },
            Self::Blaschke { product, arg } => {
                let mut zeros = product.zeros().to_vec();
                for _ in 0..k {
                    let i = zeros.iter().position(|z| *z == alpha).expect("multiplicity");
                    zeros.remove(i);
                }
                Self::Blaschke {
                    product: BlaschkeProduct::new(product.unimodular_factor(), zeros)
                        .expect("subset of valid zeros"),
                    arg: arg.clone(),
                }
            }
            Self::Mul { factors } => {
                let mut out = Vec::with_capacity(factors.len());
                for f in factors {
                    let take = f.moebius_multiplicity(alpha).min(k);
                    if take > 0 {
                        out.push(f.cancel_moebius(alpha, take));
                        k -= take;
                    } else {
                        out.push(f.clone());
                    }
                }
                Self::Mul { factors: out }
            }
            _ => unreachable!("cancel_moebius called without multiplicity"),
        }
    }

    /// `self / m_α^k`, cancelled symbolically when the factor is explicit and
    /// otherwise evaluated with a removable singularity at `α`.
    pub fn divide_by_moebius(&self, alpha: Complex64, k: u32) -> Expr {
        if k == 0 {
            return self.clone();
        }
        if let Self::Const { value } = self {
            if *value == Complex64::new(0.0, 0.0) {
                return self.clone();
            }
        }
        if self.moebius_multiplicity(alpha) >= k {
            return self.cancel_moebius(alpha, k);
        }
        Self::DivMoebius {
            num: Box::new(self.clone()),
            alpha,
            power: k,
        }
    }

    /// Taylor coefficients `c_0 … c_{count−1}` at `center` (Cauchy integrals).
    pub fn taylor_coefficients(&self, center: Complex64, count: usize) -> Vec<Complex64> {
        let rho = removable_radius(center);
        let nodes = 64.max(4 * count);
        let samples: Vec<(Complex64, Complex64)> = circle_grid(nodes, 1.0)
            .into_iter()
            .map(|w| (w, self.eval(center + w * rho)))
            .collect();
        (0..count)
            .map(|n| {
                let s: Complex64 = samples.iter().map(|(w, v)| v * w.powi(-(n as i32))).sum();
                s / (nodes as f64 * rho.powi(n as i32))
            })
            .collect()
    }
}

fn removable_radius(alpha: Complex64) -> f64 {
    (0.5 * (1.0 - alpha.norm())).clamp(1e-4, 0.25)
}

/// A holomorphic map `𝔻 → ℂⁿ` given coordinate-wise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    pub components: Vec<Expr>,
}

impl MapSpec {
    pub fn new(components: Vec<Expr>) -> Self {
        Self { components }
    }

    /// `λ ↦ (c_1 λ^{k_1}, …, c_n λ^{k_n})`.
    pub fn monomials(terms: &[(f64, i32)]) -> Self {
        Self::new(
            terms
                .iter()
                .map(|&(c, k)| {
                    if c == 0.0 {
                        Expr::zero()
                    } else {
                        Expr::monomial(Complex64::new(c, 0.0), k)
                    }
                })
                .collect(),
        )
    }

    pub fn constant(values: &[Complex64]) -> Self {
        Self::new(values.iter().map(|&v| Expr::constant(v)).collect())
    }

    /// The identity of the disc as a map into ℂ.
    pub fn identity() -> Self {
        Self::new(vec![Expr::Var])
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, lam: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(lam)).collect()
    }

    pub fn eval_into(&self, lam: Complex64, out: &mut Vec<Complex64>) {
        out.clear();
        out.extend(self.components.iter().map(|c| c.eval(lam)));
    }

    /// `f ∘ inner`.
    pub fn substitute(&self, inner: &Expr) -> Self {
        Self::new(self.components.iter().map(|c| c.substitute(inner)).collect())
    }

    /// Componentwise `f_j · g_j`.
    pub fn multiply_components(&self, factors: &[Expr]) -> Result<Self> {
        if factors.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: factors.len(),
            });
        }
        Ok(Self::new(
            self.components
                .iter()
                .zip(factors)
                .map(|(c, f)| Expr::mul(vec![f.clone(), c.clone()]))
                .collect(),
        ))
    }

    /// Derivative by central differences with step `h` and one Richardson
    /// extrapolation.
    pub fn derivative(&self, lam: Complex64, h: f64) -> Vec<Complex64> {
        let d = |step: f64| -> Vec<Complex64> {
            let hp = self.eval(lam + step);
            let hm = self.eval(lam - step);
            hp.iter().zip(&hm).map(|(a, b)| (a - b) / (2.0 * step)).collect()
        };
        let d1 = d(h);
        let d2 = d(2.0 * h);
        d1.iter().zip(&d2).map(|(a, b)| (4.0 * a - b) / 3.0).collect()
    }
}
