use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::interpolant::lagrange_polynomial;
use crate::cplane::{circle_grid, BlaschkeProduct, ComplexPolynomial};
use crate::domains::DomainModel;
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};

/// Target margin: a restart stops early once its grid defect is this negative.
const EARLY_STOP: f64 = -1e-3;
/// Accepted witnesses must have fine-grid defect below this.
const WITNESS_MARGIN: f64 = -1e-6;
const MAX_COEFFICIENT: f64 = 8.0;
const TEMPERATURES: [f64; 4] = [0.05, 0.01, 0.002, 0.0];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FalsifierBudget {
    pub restarts: usize,
    /// Coordinate sweeps per restart, split across the smoothing schedule.
    pub sweeps: usize,
    /// Degree cap of the correction is `m + degree_headroom`.
    pub degree_headroom: usize,
    pub grid: usize,
    pub verify_grid: usize,
    pub seed: u64,
}

impl Default for FalsifierBudget {
    fn default() -> Self {
        Self {
            restarts: 6,
            sweeps: 80,
            degree_headroom: 4,
            grid: 256,
            verify_grid: 8192,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FalsifyOutcome {
    /// A map on the closed disc with the same node values and image compactly
    /// inside the domain: the input is not weakly extremal for these nodes.
    Falsified {
        witness: MapSpec,
        boundary_defect: f64,
        restart: usize,
    },
    /// Search exhausted. Says nothing about extremality.
    Unknown { best_defect: f64 },
}

impl FalsifyOutcome {
    pub fn is_falsified(&self) -> bool {
        matches!(self, Self::Falsified { .. })
    }
}

struct Problem<'a> {
    dom: &'a DomainModel,
    n: usize,
    degree: usize,
    /// `L(ζ_g)` per grid point, flattened `g·n + i`.
    base: Vec<Complex64>,
    /// `B(ζ_g)·ζ_g^k`, flattened `g·(degree+1) + k`.
    basis: Vec<Complex64>,
    grid: usize,
}

impl Problem<'_> {
    fn values(&self, q: &[Complex64]) -> Vec<Complex64> {
        let d1 = self.degree + 1;
        let mut h = self.base.clone();
        for g in 0..self.grid {
            for i in 0..self.n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..d1 {
                    s += q[i * d1 + k] * self.basis[g * d1 + k];
                }
                h[g * self.n + i] += s;
            }
        }
        h
    }

    fn objective(&self, h: &[Complex64], tau: f64) -> f64 {
        let defects: Vec<f64> = h.chunks(self.n).map(|z| self.dom.defect_unchecked(z)).collect();
        soft_max(&defects, tau)
    }

    /// Objective after adding `delta·basis_k` to coordinate `i`, without
    /// mutating `h`.
    fn trial(&self, h: &[Complex64], i: usize, k: usize, delta: Complex64, tau: f64, buf: &mut Vec<f64>) -> f64 {
        let d1 = self.degree + 1;
        buf.clear();
        let mut z = vec![Complex64::new(0.0, 0.0); self.n];
        for g in 0..self.grid {
            z.copy_from_slice(&h[g * self.n..(g + 1) * self.n]);
            z[i] += delta * self.basis[g * d1 + k];
            buf.push(self.dom.defect_unchecked(&z));
        }
        soft_max(buf, tau)
    }

    fn apply(&self, h: &mut [Complex64], i: usize, k: usize, delta: Complex64) {
        let d1 = self.degree + 1;
        for g in 0..self.grid {
            h[g * self.n + i] += delta * self.basis[g * d1 + k];
        }
    }
}

fn soft_max(values: &[f64], tau: f64) -> f64 {
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if tau == 0.0 || !top.is_finite() {
        return top;
    }
    top + tau * values.iter().map(|v| ((v - top) / tau).exp()).sum::<f64>().ln()
}

fn descend(p: &Problem, q: &mut [Complex64], budget: &FalsifierBudget) -> f64 {
    let d1 = p.degree + 1;
    let mut h = p.values(q);
    let mut buf = Vec::with_capacity(p.grid);
    let per_stage = (budget.sweeps / TEMPERATURES.len()).max(1);
    for &tau in &TEMPERATURES {
        let mut step = 0.1;
        let mut best = p.objective(&h, tau);
        for _ in 0..per_stage {
            let mut improved = false;
            for i in 0..p.n {
                for k in 0..d1 {
                    for dir in [
                        Complex64::new(1.0, 0.0),
                        Complex64::new(-1.0, 0.0),
                        Complex64::new(0.0, 1.0),
                        Complex64::new(0.0, -1.0),
                    ] {
                        let delta = dir * step;
                        if (q[i * d1 + k] + delta).norm() > MAX_COEFFICIENT {
                            continue;
                        }
                        let v = p.trial(&h, i, k, delta, tau, &mut buf);
                        if v < best {
                            best = v;
                            q[i * d1 + k] += delta;
                            p.apply(&mut h, i, k, delta);
                            improved = true;
                        }
                    }
                }
            }
            if p.objective(&h, 0.0) < EARLY_STOP {
                return p.objective(&h, 0.0);
            }
            if !improved {
                step /= 2.0;
                if step < 1e-7 {
                    break;
                }
            }
        }
    }
    p.objective(&p.values(q), 0.0)
}

fn witness_map(lagrange: &[ComplexPolynomial], b: &BlaschkeProduct, q: &[Complex64], degree: usize) -> MapSpec {
    let d1 = degree + 1;
    MapSpec::new(
        lagrange
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let qi = ComplexPolynomial::new(q[i * d1..(i + 1) * d1].to_vec());
                let mut terms = Vec::new();
                if !l.is_zero() {
                    terms.push(Expr::poly(l.clone()));
                }
                if !qi.is_zero() {
                    terms.push(Expr::mul(vec![Expr::blaschke(b.clone()), Expr::poly(qi)]));
                }
                match terms.len() {
                    0 => Expr::zero(),
                    1 => terms.pop().unwrap(),
                    _ => Expr::add(terms),
                }
            })
            .collect(),
    )
}

/// One-sided search for a witness that `f` is not weakly extremal at `nodes`.
///
/// Candidates are `L + B·Q` where `L` interpolates the node values, `B`
/// vanishes exactly at the nodes and `Q` is a polynomial map. A witness is
/// reported only after its boundary defect is confirmed below `−1e-6` on the
/// verification grid.
pub fn falsify_weak_extremality(
    f: &MapSpec,
    dom: &DomainModel,
    nodes: &[Complex64],
    budget: &FalsifierBudget,
) -> Result<FalsifyOutcome> {
    if f.dim() != dom.dim() {
        return Err(Error::DimensionMismatch {
            expected: dom.dim(),
            got: f.dim(),
        });
    }
    if nodes.is_empty() {
        return Err(Error::InvalidParameter("no interpolation nodes".into()));
    }
    for (i, a) in nodes.iter().enumerate() {
        if nodes[..i].iter().any(|b| (a - b).norm() < 1e-8) {
            return Err(Error::InvalidParameter(format!("node {a} repeats an earlier node")));
        }
    }
    let b = BlaschkeProduct::new(Complex64::new(1.0, 0.0), nodes.to_vec())?;
    let n = f.dim();
    let values: Vec<Vec<Complex64>> = nodes.iter().map(|&l| f.eval(l)).collect();
    if values.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("map not finite at the nodes".into()));
    }
    let lagrange = (0..n)
        .map(|i| {
            let w: Vec<Complex64> = values.iter().map(|v| v[i]).collect();
            lagrange_polynomial(nodes, &w)
        })
        .collect::<Result<Vec<_>>>()?;

    let degree = nodes.len() + budget.degree_headroom;
    let d1 = degree + 1;
    let grid = circle_grid(budget.grid, 1.0);
    let mut base = Vec::with_capacity(grid.len() * n);
    let mut basis = Vec::with_capacity(grid.len() * d1);
    for &z in &grid {
        base.extend(lagrange.iter().map(|l| l.eval(z)));
        let bz = b.eval(z);
        let mut zk = Complex64::new(1.0, 0.0);
        for _ in 0..d1 {
            basis.push(bz * zk);
            zk *= z;
        }
    }
    let problem = Problem {
        dom,
        n,
        degree,
        base,
        basis,
        grid: grid.len(),
    };
    let verify = circle_grid(budget.verify_grid, 1.0);

    let results: Vec<(f64, Option<(MapSpec, f64)>)> = (0..budget.restarts.max(1))
        .into_par_iter()
        .map(|restart| {
            let mut q = vec![Complex64::new(0.0, 0.0); n * d1];
            if restart > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
                rng.set_stream(restart as u64);
                for c in q.iter_mut() {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    *c = Complex64::new(re, im) * 0.1;
                }
            }
            let found = descend(&problem, &mut q, budget);
            if found >= WITNESS_MARGIN {
                return (found, None);
            }
            let witness = witness_map(&lagrange, &b, &q, degree);
            let mut buf = Vec::with_capacity(n);
            let mut worst = f64::NEG_INFINITY;
            for &z in &verify {
                witness.eval_into(z, &mut buf);
                worst = worst.max(dom.defect_unchecked(&buf));
            }
            let interpolates = nodes
                .iter()
                .zip(&values)
                .all(|(&l, v)| witness.eval(l).iter().zip(v).all(|(a, b)| (a - b).norm() < 1e-9));
            if worst < WITNESS_MARGIN && interpolates {
                (worst, Some((witness, worst)))
            } else {
                (found.max(worst), None)
            }
        })
        .collect();

    for (restart, (_, hit)) in results.iter().enumerate() {
        if let Some((witness, d)) = hit {
            return Ok(FalsifyOutcome::Falsified {
                witness: witness.clone(),
                boundary_defect: *d,
                restart,
            });
        }
    }
    let best = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    Ok(FalsifyOutcome::Unknown { best_defect: best })
}
