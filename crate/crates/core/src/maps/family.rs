use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::lemma10::lemma10_multiply;
use crate::domains::{CustomGauge, DomainKind, DomainModel, EllipsoidSpec, QuasiBalancedWeights};
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};

/// Known extremality properties of a constructed map, at order `m`.
/// `None` means nothing is asserted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Claims {
    pub m: usize,
    pub weak_extremal: Option<bool>,
    pub extremal: Option<bool>,
    pub geodesic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Claims {
    fn geodesic(m: usize) -> Self {
        Self {
            m,
            weak_extremal: Some(true),
            extremal: Some(true),
            geodesic: Some(true),
            note: None,
        }
    }

    fn extremal_not_geodesic(m: usize) -> Self {
        Self {
            m,
            weak_extremal: Some(true),
            extremal: Some(true),
            geodesic: Some(false),
            note: None,
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// A named map together with its target domain and claims.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFamily {
    pub name: String,
    pub map: MapSpec,
    pub domain: DomainModel,
    pub claims: Claims,
}

fn real_monomial(c: f64, k: usize) -> Expr {
    Expr::monomial(Complex64::new(c, 0.0), k as i32)
}

/// `kind` weighted by the exponents of a monomial map, so that the map is
/// `λ ↦ λ^k · a` for a single boundary point `a` and its k-Minkowski value on
/// `|λ| = r` is exactly `r`.
fn weighted(kind: DomainKind, degrees: &[usize]) -> Result<DomainModel> {
    let k = QuasiBalancedWeights::new(degrees.iter().map(|&d| d as u32).collect())?;
    DomainModel::with_weights(kind, k)
}

fn half_ellipsoid() -> Result<DomainKind> {
    Ok(DomainKind::Ellipsoid {
        p: EllipsoidSpec::new(vec![0.5, 0.5])?,
    })
}

fn check_open_unit(name: &str, a: f64, upper: f64) -> Result<()> {
    if !(a > 0.0 && a < upper) {
        return Err(Error::InvalidParameter(format!("{name} = {a} outside (0, {upper})")));
    }
    Ok(())
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::InvalidParameter(format!("m = {m} must be at least {min}")));
    }
    Ok(())
}

/// `(aλ^{m−2}, (1−a)λ^{m−1})` in `E(1/2, 1/2)`: m-extremal, not an m-geodesic.
pub fn family_prop1(m: usize, a: f64) -> Result<MapFamily> {
    check_m(m, 3)?;
    check_open_unit("a", a, 1.0)?;
    Ok(MapFamily {
        name: "half-ellipsoid extremal".into(),
        map: MapSpec::new(vec![real_monomial(a, m - 2), real_monomial(1.0 - a, m - 1)]),
        domain: weighted(half_ellipsoid()?, &[m - 2, m - 1])?,
        claims: Claims::extremal_not_geodesic(m),
    })
}

/// `(aλ^{m−1}, (1−a)λ^{m−1})` in `E(1/2, 1/2)`, an m-geodesic with left
/// inverse `z₁ + z₂`.
pub fn prop1_companion(m: usize, a: f64) -> Result<MapFamily> {
    check_m(m, 2)?;
    check_open_unit("a", a, 1.0)?;
    Ok(MapFamily {
        name: "half-ellipsoid geodesic".into(),
        map: MapSpec::new(vec![real_monomial(a, m - 1), real_monomial(1.0 - a, m - 1)]),
        domain: weighted(half_ellipsoid()?, &[m - 1, m - 1])?,
        claims: Claims::geodesic(m),
    })
}

/// `(aλ, aλ^{m−2}, bλ^{m−1})` with `4a² + b = 1` in
/// `{(|z₁| + |z₂|)² + |z₃| < 1}`.
pub fn family_propab(m: usize, a: f64) -> Result<MapFamily> {
    check_m(m, 4)?;
    check_open_unit("a", a, 0.5)?;
    let b = 1.0 - 4.0 * a * a;
    Ok(MapFamily {
        name: "l1-squared geodesic".into(),
        map: MapSpec::new(vec![real_monomial(a, 1), real_monomial(a, m - 2), real_monomial(b, m - 1)]),
        domain: weighted(
            DomainKind::CustomGauge {
                gauge: CustomGauge::L1SquaredPlusModulus,
            },
            &[1, m - 2, m - 1],
        )?,
        claims: Claims::geodesic(m).with_note("f/λ is not an (m−1)-geodesic"),
    })
}

/// `(aλ, aλ^{m−2}, bλ^{m−1})` with `2a² + b = 1` in
/// `{|z₁|² + |z₂|² + |z₃| < 1}`.
pub fn family_prop40(m: usize, a: f64) -> Result<MapFamily> {
    check_m(m, 5)?;
    check_open_unit("a", a, std::f64::consts::FRAC_1_SQRT_2)?;
    let b = 1.0 - 2.0 * a * a;
    Ok(MapFamily {
        name: "l2-squared geodesic".into(),
        map: MapSpec::new(vec![real_monomial(a, 1), real_monomial(a, m - 2), real_monomial(b, m - 1)]),
        domain: weighted(
            DomainKind::CustomGauge {
                gauge: CustomGauge::L2SquaredPlusModulus,
            },
            &[1, m - 2, m - 1],
        )?,
        claims: Claims::geodesic(m).with_note("f/λ is not an (m−1)-geodesic"),
    })
}

/// `(aλ^{m−2}, √(1−a²)λ^{m−1})` in the ball: m-extremal, not an m-geodesic.
pub fn family_propmm(m: usize, a: f64) -> Result<MapFamily> {
    check_m(m, 4)?;
    check_open_unit("a", a, 1.0)?;
    Ok(MapFamily {
        name: "ball extremal".into(),
        map: MapSpec::new(vec![real_monomial(a, m - 2), real_monomial((1.0 - a * a).sqrt(), m - 1)]),
        domain: weighted(DomainKind::Ball { n: 2 }, &[m - 2, m - 1])?,
        claims: Claims::extremal_not_geodesic(m),
    })
}

/// `B·a` for `a` on the boundary of `E(p)` and `B` with the given distinct
/// zeros, built by multiplying the constant `a` by one Möbius factor at a time.
///
/// Always a weak m-extremal with `m = deg B + 1`. In a non-convex ellipsoid
/// some boundary points make it fail to be m-extremal; which ones is not
/// computed, so `extremal` stays unasserted.
pub fn family_nc(p: Vec<f64>, a: &[Complex64], zeros: &[Complex64]) -> Result<MapFamily> {
    let domain = DomainModel::ellipsoid(p)?;
    let defect = domain.membership_defect(a)?;
    if defect.abs() > 1e-10 {
        return Err(Error::Domain(format!("a is not on the boundary (defect {defect:e})")));
    }
    if zeros.is_empty() {
        return Err(Error::InvalidParameter("need at least one zero".into()));
    }
    for (i, z) in zeros.iter().enumerate() {
        if zeros[..i].iter().any(|w| (w - z).norm() < 1e-8) {
            return Err(Error::InvalidParameter("zeros must be distinct".into()));
        }
    }
    let k = domain.weights().clone();
    let mut map = MapSpec::constant(a);
    for &z in zeros {
        map = lemma10_multiply(&map, z, 1, &k)?;
    }
    let convex = domain.is_convex();
    Ok(MapFamily {
        name: "blaschke ray".into(),
        map,
        domain,
        claims: Claims {
            m: zeros.len() + 1,
            weak_extremal: Some(true),
            extremal: None,
            geodesic: None,
            note: (!convex).then(|| "non-convex target: not m-extremal for suitable boundary points".into()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplane::{circle_grid, moebius};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coeffs(f: &MapFamily, l: Complex64) -> Vec<Complex64> {
        f.map.eval(l)
    }

    #[test]
    fn spelled_out_examples() {
        let l = c(0.3, 0.4);
        let v = coeffs(&family_prop1(3, 0.5).unwrap(), l);
        assert!((v[0] - 0.5 * l).norm() < 1e-15 && (v[1] - 0.5 * l * l).norm() < 1e-15);
        let v = coeffs(&family_propab(4, 0.3).unwrap(), l);
        assert!((v[0] - 0.3 * l).norm() < 1e-15);
        assert!((v[1] - 0.3 * l * l).norm() < 1e-15);
        assert!((v[2] - 0.64 * l.powi(3)).norm() < 1e-15);
        let v = coeffs(&family_prop40(5, 0.5).unwrap(), l);
        assert!((v[1] - 0.5 * l.powi(3)).norm() < 1e-15 && (v[2] - 0.5 * l.powi(4)).norm() < 1e-15);
        let v = coeffs(&family_propmm(4, 0.6).unwrap(), l);
        assert!((v[0] - 0.6 * l * l).norm() < 1e-15 && (v[1] - 0.8 * l.powi(3)).norm() < 1e-15);
    }

    #[test]
    fn ranges_enforced() {
        assert!(family_prop1(2, 0.5).is_err());
        assert!(family_prop1(3, 1.0).is_err());
        assert!(family_propab(4, 0.5).is_err());
        assert!(family_prop40(4, 0.5).is_err());
        assert!(family_prop40(5, 0.71).is_err());
        assert!(family_propmm(3, 0.5).is_err());
    }

    #[test]
    fn families_are_proper() {
        for fam in [
            family_prop1(3, 0.5).unwrap(),
            family_prop1(5, 0.2).unwrap(),
            family_propab(4, 0.3).unwrap(),
            family_prop40(6, 0.4).unwrap(),
            family_propmm(4, 0.6).unwrap(),
        ] {
            for l in circle_grid(256, 1.0) {
                let d = fam.domain.membership_defect(&fam.map.eval(l)).unwrap();
                assert!(d.abs() < 1e-12, "{}: {d}", fam.name);
            }
        }
    }

    #[test]
    fn companion_composes_to_power() {
        for m in 3..=6 {
            let f = prop1_companion(m, 0.25).unwrap();
            for l in circle_grid(16, 0.9) {
                let v = f.map.eval(l);
                assert!((v[0] + v[1] - l.powi(m as i32 - 1)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn blaschke_ray() {
        let p = vec![0.25, 0.25];
        let t = 0.5f64.powi(2);
        let a = [c(t, 0.0), c(0.0, t)];
        let zeros = [c(0.0, 0.0), c(0.5, 0.1), c(-0.3, 0.2)];
        let f = family_nc(p, &a, &zeros).unwrap();
        assert_eq!(f.claims.m, 4);
        assert!(f.claims.note.is_some());
        let l = c(0.1, -0.6);
        let b: Complex64 = zeros.iter().map(|&z| moebius(z, l)).product();
        assert!(f.map.eval(l).iter().zip(&a).all(|(x, y)| (x - b * y).norm() < 1e-14));
        assert!(family_nc(vec![0.25, 0.25], &[c(0.5, 0.0), c(0.0, 0.0)], &zeros).is_err());
        assert!(family_nc(vec![1.0, 1.0], &[c(0.6, 0.0), c(0.8, 0.0)], &[c(0.1, 0.0), c(0.1, 0.0)]).is_err());
    }
}
