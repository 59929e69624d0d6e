use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `coeff · ∏ z_j^{powers_j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Complex64,
    pub powers: Vec<u32>,
}

/// A polynomial in `nvars` complex variables, as a sparse list of monomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMulti")]
pub struct MultiPolynomial {
    nvars: usize,
    terms: Vec<Term>,
}

#[derive(Deserialize)]
struct RawMulti {
    nvars: usize,
    terms: Vec<Term>,
}

impl TryFrom<RawMulti> for MultiPolynomial {
    type Error = Error;
    fn try_from(r: RawMulti) -> Result<Self> {
        Self::new(r.nvars, r.terms)
    }
}

impl MultiPolynomial {
    pub fn new(nvars: usize, terms: Vec<Term>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.powers.len() != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: t.powers.len(),
            });
        }
        Ok(Self { nvars, terms })
    }

    /// Builds from `(coeff, powers)` pairs with real coefficients.
    pub fn from_real(nvars: usize, terms: &[(f64, &[u32])]) -> Result<Self> {
        Self::new(
            nvars,
            terms
                .iter()
                .map(|(c, p)| Term {
                    coeff: Complex64::new(*c, 0.0),
                    powers: p.to_vec(),
                })
                .collect(),
        )
    }

    /// `Σ c_j z_j`.
    pub fn linear(coeffs: &[Complex64]) -> Self {
        let n = coeffs.len();
        Self {
            nvars: n,
            terms: coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| {
                    let mut powers = vec![0; n];
                    powers[j] = 1;
                    Term { coeff: c, powers }
                })
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: z.len(),
            });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                t.powers
                    .iter()
                    .zip(z)
                    .fold(t.coeff, |acc, (&k, &zj)| if k == 0 { acc } else { acc * zj.powu(k) })
            })
            .sum()
    }
}

impl std::fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.coeff.im == 0.0 {
                write!(f, "{}", t.coeff.re)?;
            } else {
                write!(f, "({})", t.coeff)?;
            }
            for (j, &k) in t.powers.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·z{}", j + 1)?,
                    _ => write!(f, "·z{}^{}", j + 1, k)?,
                }
            }
        }
        Ok(())
    }
}
