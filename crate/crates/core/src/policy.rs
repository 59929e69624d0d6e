use serde::{Deserialize, Serialize};

/// Tolerances shared by every classification in the crate.
///
/// Reports produced by the command-line front end embed the record that was
/// actually used, so any run can be replayed under the same thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NumericPolicy {
    /// Relative band for "modulus one" decisions.
    pub unimodular_tol: f64,
    /// Relative eigenvalue band (times the matrix norm) for singular Pick matrices.
    pub singular_tol: f64,
    /// Absolute band on the defect function for boundary classification.
    pub boundary_band: f64,
    /// Maximal number of bisection steps for gauge evaluation.
    pub bisection_steps: usize,
    /// Circle grid used when checking compositions with a left inverse.
    pub circle_samples: usize,
    /// Quasi-random boundary samples used for sup estimates of left inverses.
    pub boundary_samples: usize,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            unimodular_tol: 1e-10,
            singular_tol: 1e-10,
            boundary_band: 1e-10,
            bisection_steps: 200,
            circle_samples: 1024,
            boundary_samples: 100_000,
        }
    }
}
