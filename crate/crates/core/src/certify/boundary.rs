use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::BlaschkeProduct;
use crate::domains::DomainModel;
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};
use crate::maps::{Claims, MapFamily};

/// `f ∘ B`.
pub fn compose_with_blaschke(f: &MapSpec, b: &BlaschkeProduct) -> Result<MapSpec> {
    if b.degree() == 0 {
        return Err(Error::InvalidParameter("B must be non-constant".into()));
    }
    Ok(f.substitute(&Expr::blaschke(b.clone())))
}

/// `f ∘ B` for a family, with claims carried over: an m-extremal into a
/// convex domain composes to a weak (m·deg B)-extremal. Nothing is claimed
/// otherwise.
pub fn compose_family_with_blaschke(fam: &MapFamily, b: &BlaschkeProduct) -> Result<MapFamily> {
    let map = compose_with_blaschke(&fam.map, b)?;
    let k = b.degree();
    let holds = fam.claims.extremal == Some(true) && fam.domain.is_convex();
    Ok(MapFamily {
        name: format!("{} ∘ B", fam.name),
        map,
        domain: fam.domain.clone(),
        claims: Claims {
            m: fam.claims.m * k,
            weak_extremal: holds.then_some(true),
            extremal: None,
            geodesic: None,
            note: Some(format!("composed with a Blaschke product of degree {k}")),
        },
    })
}

/// One radial sample `1 − h(f(rζ))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub zeta: Complex64,
    pub r: f64,
    pub defect: f64,
}

/// Radial boundary-defect profile of a map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub rows: Vec<ProfileRow>,
    /// `min defect / (1 − r)` over all samples.
    pub hopf_constant: f64,
    pub final_radius: f64,
    /// Largest defect over rays at `final_radius`.
    pub max_final_defect: f64,
    /// Fraction of rays that approach the boundary.
    pub approaching_fraction: f64,
    pub almost_proper: bool,
}

/// A ray approaches the boundary when its last defect is at most this.
pub const APPROACH_BAND: f64 = 0.05;
/// Minimal fraction of approaching rays for `almost_proper`.
pub const APPROACH_FRACTION: f64 = 0.95;

impl Profile {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("zeta_re,zeta_im,r,defect\n");
        for row in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", row.zeta.re, row.zeta.im, row.r, row.defect);
        }
        s
    }
}

/// Radii `1 − 10^{−1 − 2j/(n−1)}`, from 0.9 to 0.999.
pub fn profile_radii(n_radii: usize) -> Vec<f64> {
    if n_radii == 1 {
        return vec![0.999];
    }
    (0..n_radii)
        .map(|j| 1.0 - 10f64.powf(-1.0 - 2.0 * j as f64 / (n_radii - 1) as f64))
        .collect()
}

/// `1 − h(f(rζ))` on `n_rays` equally spaced directions and
/// [`profile_radii`]`(n_radii)`.
///
/// A ray approaches the boundary if its last defect is within
/// [`APPROACH_BAND`] and, with several radii, at most half its first defect.
/// The map is flagged almost proper when [`APPROACH_FRACTION`] of rays do.
pub fn properness_profile(f: &MapSpec, dom: &DomainModel, n_rays: usize, n_radii: usize) -> Result<Profile> {
    if n_rays == 0 || n_radii == 0 {
        return Err(Error::InvalidParameter("need at least one ray and one radius".into()));
    }
    if f.dim() != dom.dim() {
        return Err(Error::DimensionMismatch {
            expected: dom.dim(),
            got: f.dim(),
        });
    }
    let radii = profile_radii(n_radii);
    let mut rows = Vec::with_capacity(n_rays * n_radii);
    let mut hopf = f64::INFINITY;
    let mut max_final: f64 = 0.0;
    let mut approaching = 0usize;
    for i in 0..n_rays {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / n_rays as f64);
        let mut first = f64::NAN;
        let mut last = f64::NAN;
        for (j, &r) in radii.iter().enumerate() {
            let z = f.eval(zeta * r);
            if z.iter().any(|c| !c.is_finite()) {
                return Err(Error::Numeric(format!("non-finite value at {}", zeta * r)));
            }
            let defect = 1.0 - dom.minkowski_value(&z)?;
            hopf = hopf.min(defect / (1.0 - r));
            if j == 0 {
                first = defect;
            }
            last = defect;
            rows.push(ProfileRow { zeta, r, defect });
        }
        max_final = max_final.max(last);
        if last <= APPROACH_BAND && (n_radii == 1 || last <= 0.5 * first) {
            approaching += 1;
        }
    }
    let fraction = approaching as f64 / n_rays as f64;
    Ok(Profile {
        rows,
        hopf_constant: hopf,
        final_radius: radii[n_radii - 1],
        max_final_defect: max_final,
        approaching_fraction: fraction,
        almost_proper: fraction >= APPROACH_FRACTION,
    })
}

/// Finite-difference step for derivative checks.
pub const DERIVATIVE_STEP: f64 = 1e-6;
/// `|f′(λ)|` above this counts as non-vanishing.
pub const DERIVATIVE_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeCount {
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Number of nodes with `|f′(λ_j)| > 1e-8`.
pub fn derivative_count_check(f: &MapSpec, nodes: &[Complex64]) -> usize {
    nodes
        .iter()
        .filter(|&&l| crate::cplane::norm(&f.derivative(l, DERIVATIVE_STEP)) > DERIVATIVE_THRESHOLD)
        .count()
}

/// [`derivative_count_check`] with a warning when a weak extremal whose
/// boundary defect obeys a Hopf bound `γ(1 − |λ|)`, `γ > 0`, has fewer than
/// two nodes with non-vanishing derivative, which cannot happen.
pub fn derivative_count_report(
    f: &MapSpec,
    nodes: &[Complex64],
    claims: Option<&Claims>,
    hopf_constant: Option<f64>,
) -> DerivativeCount {
    let count = derivative_count_check(f, nodes);
    let weak = claims.is_some_and(|c| c.weak_extremal == Some(true));
    let hopf = hopf_constant.is_some_and(|g| g > 0.0);
    let warning = (count < 2 && weak && hopf).then(|| {
        format!("only {count} node(s) with f′ ≠ 0 for a weak extremal with a Hopf bound")
    });
    DerivativeCount { count, warning }
}
