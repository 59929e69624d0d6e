use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::NumericPolicy;

/// Interpolation nodes in the open disc with targets in the closed disc.
///
/// JSON: `{"nodes": [[re, im], ...], "values": [[re, im], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPickData")]
pub struct PickData {
    nodes: Vec<Complex64>,
    values: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawPickData {
    nodes: Vec<Complex64>,
    values: Vec<Complex64>,
}

impl TryFrom<RawPickData> for PickData {
    type Error = Error;
    fn try_from(r: RawPickData) -> Result<Self> {
        Self::new(r.nodes, r.values)
    }
}

impl PickData {
    pub fn new(nodes: Vec<Complex64>, values: Vec<Complex64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                got: values.len(),
            });
        }
        if nodes.is_empty() {
            return Err(Error::InvalidParameter("no interpolation nodes".into()));
        }
        for (i, a) in nodes.iter().enumerate() {
            if a.norm() >= 1.0 {
                return Err(Error::OutsideDisc(format!("{a}")));
            }
            if nodes[..i].iter().any(|b| (a - b).norm() < 1e-8) {
                return Err(Error::InvalidParameter(format!(
                    "node {a} repeats an earlier node"
                )));
            }
        }
        if let Some(w) = values.iter().find(|w| w.norm() > 1.0 + 1e-12) {
            return Err(Error::OutsideClosedDisc(format!("{w}")));
        }
        Ok(Self { nodes, values })
    }

    /// Samples `f` at `nodes`.
    pub fn sample(nodes: &[Complex64], f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::new(nodes.to_vec(), nodes.iter().map(|&z| f(z)).collect())
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `((1 − w_i conj(w_j)) / (1 − λ_i conj(λ_j)))_{i,j}`.
pub fn pick_matrix(data: &PickData) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let (l, w) = (&data.nodes, &data.values);
    DMatrix::from_fn(data.len(), data.len(), |i, j| {
        (one - w[i] * w[j].conj()) / (one - l[i] * l[j].conj())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum PickClass {
    PositiveDefinite,
    SingularPsd { rank: usize },
    Indefinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PickVerdict {
    pub class: PickClass,
    pub smallest_eigenvalue: f64,
    pub matrix_norm: f64,
}

impl PickVerdict {
    /// Degree of the unique Blaschke interpolant, for singular data. The
    /// Pick matrix of a degree-d product at more than d nodes has rank d.
    pub fn blaschke_degree(&self) -> Option<usize> {
        match self.class {
            PickClass::SingularPsd { rank } => Some(rank),
            _ => None,
        }
    }
}

/// Eigenvalue trichotomy of the Pick matrix, with band
/// `policy.singular_tol · ‖M‖`.
pub fn classify_pick(data: &PickData, policy: &NumericPolicy) -> Result<PickVerdict> {
    let m = pick_matrix(data);
    let eig = SymmetricEigen::try_new(m, 1e-15, 10_000)
        .ok_or_else(|| Error::Numeric("Hermitian eigen-solver did not converge".into()))?;
    let values = eig.eigenvalues;
    let norm = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let smallest = values.iter().copied().fold(f64::INFINITY, f64::min);
    let band = policy.singular_tol * norm;
    let class = if smallest < -band {
        PickClass::Indefinite
    } else if smallest <= band {
        PickClass::SingularPsd {
            rank: values.iter().filter(|&&v| v > band).count(),
        }
    } else {
        PickClass::PositiveDefinite
    };
    Ok(PickVerdict {
        class,
        smallest_eigenvalue: smallest,
        matrix_norm: norm,
    })
}

/// Weak m-extremality of a disc function from its values at the m nodes.
pub fn disc_weak_extremality(data: &PickData, policy: &NumericPolicy) -> Result<bool> {
    match classify_pick(data, policy)?.class {
        PickClass::SingularPsd { .. } => Ok(true),
        PickClass::PositiveDefinite => Ok(false),
        PickClass::Indefinite => Err(Error::Infeasible(
            "indefinite Pick matrix: data does not come from a disc map".into(),
        )),
    }
}
