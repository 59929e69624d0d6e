use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::{circle_grid, ComplexPolynomial};
use crate::domains::DomainModel;
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};

const CONSTRUCTION_GRID: usize = 512;
const MAX_HALVINGS: usize = 50;

/// The polynomial of degree `< m` through `(λ_j, w_j)`.
pub fn lagrange_polynomial(nodes: &[Complex64], values: &[Complex64]) -> Result<ComplexPolynomial> {
    if nodes.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            got: values.len(),
        });
    }
    let mut out = ComplexPolynomial::zero();
    for (j, (&lj, &wj)) in nodes.iter().zip(values).enumerate() {
        if wj == Complex64::new(0.0, 0.0) {
            continue;
        }
        let others: Vec<Complex64> = nodes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &l)| l)
            .collect();
        let denom: Complex64 = others.iter().map(|&l| lj - l).product();
        if denom.norm() < 1e-300 {
            return Err(Error::Degenerate("coincident interpolation nodes".into()));
        }
        out = out.add(&ComplexPolynomial::from_roots(&others).scale(wj / denom));
    }
    Ok(out)
}

/// A map on the closed disc interpolating `g` at the nodes, with the dilation
/// radius used and the interior margin `δ` of `g`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma28Interpolant {
    pub map: MapSpec,
    pub r: f64,
    pub delta: f64,
    pub boundary_defect: f64,
}

/// `h = g(·/r) + P_w` with `w_j = g(λ_j) − g(λ_j/r)`.
pub fn lemma28_with_radius(g: &MapSpec, nodes: &[Complex64], r: f64) -> Result<MapSpec> {
    if r <= 1.0 {
        return Err(Error::InvalidParameter(format!("dilation radius {r} must exceed 1")));
    }
    let scale = Expr::poly(ComplexPolynomial::new(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0 / r, 0.0),
    ]));
    let gr = g.substitute(&scale);
    let components = g
        .components
        .iter()
        .zip(&gr.components)
        .map(|(gj, grj)| {
            let w: Vec<Complex64> = nodes.iter().map(|&l| gj.eval(l) - grj.eval(l)).collect();
            let p = lagrange_polynomial(nodes, &w)?;
            Ok(if p.is_zero() {
                grj.clone()
            } else {
                Expr::add(vec![grj.clone(), Expr::poly(p)])
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MapSpec::new(components))
}

fn disc_grid() -> Vec<Complex64> {
    (1..=16)
        .flat_map(|i| circle_grid(CONSTRUCTION_GRID / 16, i as f64 / 16.0))
        .collect()
}

fn max_defect(h: &MapSpec, dom: &DomainModel, points: &[Complex64]) -> Result<f64> {
    let mut buf = Vec::with_capacity(h.dim());
    let mut worst = f64::NEG_INFINITY;
    for &l in points {
        h.eval_into(l, &mut buf);
        let d = dom.membership_defect(&buf)?;
        if !d.is_finite() {
            return Err(Error::Numeric(format!("non-finite defect at {l}")));
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Extends `g`, whose image is compactly inside `dom`, to a map on the closed
/// disc that agrees with `g` at the nodes and still lands in `dom`.
pub fn lemma28_interpolant(g: &MapSpec, dom: &DomainModel, nodes: &[Complex64]) -> Result<Lemma28Interpolant> {
    if g.dim() != dom.dim() {
        return Err(Error::DimensionMismatch {
            expected: dom.dim(),
            got: g.dim(),
        });
    }
    if let Some(l) = nodes.iter().find(|l| l.norm() >= 1.0) {
        return Err(Error::OutsideDisc(format!("{l}")));
    }
    let delta = -max_defect(g, dom, &disc_grid())?;
    if delta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "image not compactly inside the domain: sup defect {}",
            -delta
        )));
    }
    let boundary = circle_grid(CONSTRUCTION_GRID, 1.0);
    let mut step = 0.5;
    for _ in 0..=MAX_HALVINGS {
        let r = 1.0 + step;
        let h = lemma28_with_radius(g, nodes, r)?;
        let d = max_defect(&h, dom, &boundary)?;
        if d <= -delta / 2.0 {
            return Ok(Lemma28Interpolant {
                map: h,
                r,
                delta,
                boundary_defect: d,
            });
        }
        step /= 2.0;
    }
    Err(Error::Infeasible(format!(
        "image not compact enough: no admissible dilation after {MAX_HALVINGS} halvings"
    )))
}
