use num_complex::Complex64;

use crate::cplane::blaschke_degree_of_data;
use crate::error::{Error, Result};
use crate::policy::NumericPolicy;

fn check_open(name: &str, x: f64, lo: f64, hi: f64) -> Result<()> {
    if !(x > lo && x < hi) {
        return Err(Error::InvalidParameter(format!("{name} = {x} outside ({lo}, {hi})")));
    }
    Ok(())
}

fn check_closed_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

/// `a² − a`: the bound `a² + 1 − a` minus the required value 1 for the
/// half-ellipsoid family. Negative on `(0, 1)`, so no left inverse exists.
pub fn slack_prop1(a: f64) -> Result<f64> {
    check_open("a", a, 0.0, 1.0)?;
    Ok(a * a - a)
}

/// `a²/(1−a)² + (1−4a²)/(1−a²) − 1` for the l1-squared family. Negative on
/// `(0, 1/2)`, so `f/λ` is not an (m−1)-geodesic.
pub fn slack_propab(a: f64) -> Result<f64> {
    check_open("a", a, 0.0, 0.5)?;
    let a2 = a * a;
    Ok(a2 / ((1.0 - a) * (1.0 - a)) + (1.0 - 4.0 * a2) / (1.0 - a2) - 1.0)
}

/// `β(1−c²) + α²c² − 1` for `|α|, |β| ≤ 1`. Zero only at `α = β = 1`.
pub fn slack_prop40(alpha_mod: f64, beta_mod: f64, c: f64) -> Result<f64> {
    check_closed_unit("|α|", alpha_mod)?;
    check_closed_unit("|β|", beta_mod)?;
    check_open("c", c, 0.0, 1.0)?;
    Ok(beta_mod * (1.0 - c * c) + alpha_mod * alpha_mod * c * c - 1.0)
}

/// Weak extremality of a product map from the verdicts of its factors: the
/// product is weak m-extremal iff some factor is. Three-valued OR, with
/// `None` for an undecided factor.
pub fn product_rule(verdicts: &[Option<bool>]) -> Option<bool> {
    if verdicts.contains(&Some(true)) {
        Some(true)
    } else if verdicts.iter().all(|v| *v == Some(false)) {
        Some(false)
    } else {
        None
    }
}

/// Weak m-extremality of a polydisc map sampled at `nodes`: true iff some
/// component's data is interpolated only by a Blaschke product of degree in
/// `1..=m−1`.
pub fn polydisc_test(
    nodes: &[Complex64],
    components: &[Vec<Complex64>],
    m: usize,
    policy: &NumericPolicy,
) -> Result<bool> {
    if nodes.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: nodes.len(),
        });
    }
    for values in components {
        let d = blaschke_degree_of_data(nodes, values, policy)?;
        if matches!(d.extremal_degree(), Some(k) if (1..m).contains(&k)) {
            return Ok(true);
        }
    }
    Ok(false)
}
