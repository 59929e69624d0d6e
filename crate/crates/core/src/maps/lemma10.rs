use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::circle_grid;
use crate::domains::{DomainModel, QuasiBalancedWeights};
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};

const DIVISIBILITY_TOL: f64 = 1e-9;
const GAUGE_BAND: f64 = 1e-8;
/// Consistency samples may sit further from the boundary than `φ(0)` because
/// the quotient is evaluated through a removable singularity.
const SAMPLE_BAND: f64 = 1e-6;

/// Where the quotient map lives: a holomorphic image of the disc in a
/// quasi-balanced pseudoconvex domain lies either inside or on the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageClass {
    Interior,
    Boundary,
}

/// Divides `f_j` by `m_α^{k_j}` and classifies the quotient by its gauge.
pub fn lemma10_factor(
    f: &MapSpec,
    alpha: Complex64,
    k: &QuasiBalancedWeights,
    dom: &DomainModel,
) -> Result<(MapSpec, ImageClass)> {
    if f.dim() != k.dim() || f.dim() != dom.dim() {
        return Err(Error::DimensionMismatch {
            expected: dom.dim(),
            got: f.dim(),
        });
    }
    if alpha.norm() >= 1.0 {
        return Err(Error::OutsideDisc(format!("{alpha}")));
    }
    let mut components = Vec::with_capacity(f.dim());
    for (fj, &kj) in f.components.iter().zip(k.k()) {
        if kj > 0 {
            let taylor = fj.taylor_coefficients(alpha, kj as usize);
            if let Some((order, c)) = taylor.iter().enumerate().find(|(_, c)| c.norm() > DIVISIBILITY_TOL) {
                return Err(Error::InvalidParameter(format!(
                    "component not divisible by m_α^{kj}: coefficient {order} at α is {c}"
                )));
            }
        }
        components.push(fj.divide_by_moebius(alpha, kj));
    }
    let phi = MapSpec::new(components);
    // Membership does not depend on the weights, so any positive ones give a
    // gauge with the same unit sublevel set.
    let gauge_dom = if dom.weights().all_positive() {
        dom.clone()
    } else {
        dom.reweighted(QuasiBalancedWeights::balanced(dom.dim()))?
    };
    let h0 = gauge_dom.minkowski_value(&phi.eval(Complex64::new(0.0, 0.0)))?;
    let class = if h0 < 1.0 - GAUGE_BAND {
        ImageClass::Interior
    } else if (h0 - 1.0).abs() <= GAUGE_BAND {
        ImageClass::Boundary
    } else {
        return Err(Error::Domain(format!(
            "quotient leaves the closed domain: gauge {h0} at the origin"
        )));
    };
    for l in circle_grid(8, 0.5) {
        let h = gauge_dom.minkowski_value(&phi.eval(l))?;
        let consistent = match class {
            ImageClass::Interior => h < 1.0,
            ImageClass::Boundary => (h - 1.0).abs() <= SAMPLE_BAND,
        };
        if !consistent {
            return Err(Error::Domain(format!(
                "ambiguous image: gauge {h0} at the origin but {h} at {l}"
            )));
        }
    }
    Ok((phi, class))
}

/// `ψ_j = m_μ^{l·k_j} f_j`; raises weak extremality order by `l`.
pub fn lemma10_multiply(f: &MapSpec, mu: Complex64, l: u32, k: &QuasiBalancedWeights) -> Result<MapSpec> {
    if f.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: k.dim(),
        });
    }
    if k.k().iter().any(|&kj| kj > 1) {
        return Err(Error::InvalidParameter("multiplication needs all weights ≤ 1".into()));
    }
    if mu.norm() >= 1.0 {
        return Err(Error::OutsideDisc(format!("{mu}")));
    }
    let factors: Vec<Expr> = k
        .k()
        .iter()
        .map(|&kj| Expr::moebius(mu).pow((l * kj) as i32))
        .collect();
    f.multiply_components(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplane::moebius;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn boundary_ray_divides_to_constant() {
        let a = [c(0.6, 0.0), c(0.0, 0.8)];
        let f = MapSpec::new(a.iter().map(|&x| Expr::monomial(x, 1)).collect());
        let (phi, class) = lemma10_factor(&f, c(0.0, 0.0), &QuasiBalancedWeights::balanced(2), &DomainModel::ball(2).unwrap()).unwrap();
        assert_eq!(class, ImageClass::Boundary);
        for l in circle_grid(8, 0.9) {
            assert!(phi.eval(l).iter().zip(&a).all(|(x, y)| (x - y).norm() < 1e-15));
        }
    }

    #[test]
    fn ellipsoid_example_is_interior() {
        let f = MapSpec::monomials(&[(0.5, 1), (0.5, 2)]);
        let dom = DomainModel::ellipsoid(vec![0.5, 0.5]).unwrap();
        let (phi, class) = lemma10_factor(&f, c(0.0, 0.0), &QuasiBalancedWeights::balanced(2), &dom).unwrap();
        assert_eq!(class, ImageClass::Interior);
        let v = phi.eval(c(0.4, 0.0));
        assert!((v[0] - c(0.5, 0.0)).norm() < 1e-15 && (v[1] - c(0.2, 0.0)).norm() < 1e-15);
        assert!((dom.minkowski_value(&phi.eval(c(0.0, 0.0))).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn moebius_factor_is_cancelled() {
        let f = MapSpec::new(vec![Expr::mul(vec![Expr::Var, Expr::moebius(c(0.3, 0.0))]), Expr::zero()]);
        let (phi, class) = lemma10_factor(&f, c(0.3, 0.0), &QuasiBalancedWeights::balanced(2), &DomainModel::ball(2).unwrap()).unwrap();
        assert_eq!(class, ImageClass::Interior);
        let l = c(0.1, 0.7);
        assert!((phi.eval(l)[0] - l).norm() < 1e-15);
        assert_eq!(phi.eval(l)[1], c(0.0, 0.0));
    }

    #[test]
    fn implicit_factor_uses_removable_singularity() {
        // λ² − 0.09 = (λ − 0.3)(λ + 0.3), so dividing by m_{0.3} leaves
        // (λ + 0.3)(1 − 0.3λ).
        let f = MapSpec::new(vec![Expr::add(vec![Expr::var_pow(2), Expr::real(-0.09)]).pow(1)]);
        let k = QuasiBalancedWeights::balanced(1);
        let (phi, _) = lemma10_factor(&f, c(0.3, 0.0), &k, &DomainModel::unit_disc()).unwrap();
        for l in [c(0.3, 0.0), c(0.3005, 0.0), c(-0.5, 0.2)] {
            let want = (l + 0.3) * (c(1.0, 0.0) - 0.3 * l);
            assert!((phi.eval(l)[0] - want).norm() < 1e-11);
        }
        let back = lemma10_multiply(&phi, c(0.3, 0.0), 1, &k).unwrap();
        for l in circle_grid(64, 0.9) {
            assert!((back.eval(l)[0] - f.eval(l)[0]).norm() < 1e-11);
        }
    }

    #[test]
    fn non_divisible_rejected() {
        let f = MapSpec::monomials(&[(0.5, 1), (0.5, 0)]);
        let r = lemma10_factor(&f, c(0.0, 0.0), &QuasiBalancedWeights::balanced(2), &DomainModel::ball(2).unwrap());
        assert!(r.is_err());
    }

    #[test]
    fn multiply_examples() {
        let a = [c(0.6, 0.0), c(0.8, 0.0)];
        let k = QuasiBalancedWeights::balanced(2);
        let f = MapSpec::constant(&a);
        let g = lemma10_multiply(&f, c(0.0, 0.0), 1, &k).unwrap();
        let l = c(0.2, 0.3);
        assert!(g.eval(l).iter().zip(&a).all(|(x, y)| (x - y * l).norm() < 1e-15));

        let lin = MapSpec::new(a.iter().map(|&x| Expr::monomial(x, 1)).collect());
        let h = lemma10_multiply(&lin, c(0.5, 0.0), 2, &k).unwrap();
        let m2 = moebius(c(0.5, 0.0), l).powi(2);
        assert!(h.eval(l).iter().zip(&a).all(|(x, y)| (x - m2 * l * y).norm() < 1e-15));

        let heavy = QuasiBalancedWeights::new(vec![1, 2]).unwrap();
        assert!(lemma10_multiply(&f, c(0.0, 0.0), 1, &heavy).is_err());
    }
}
