//! Gauge models of the disc, polydisc, ball, complex ellipsoids and two
//! custom quasi-balanced domains, with the k-Minkowski function, membership
//! tests and the `S_n` exponent classifier.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::NumericPolicy;

/// Exponents `p` of the complex ellipsoid `{Σ |z_j|^{2p_j} < 1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EllipsoidSpec {
    p: Vec<f64>,
}

impl EllipsoidSpec {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidParameter("ellipsoid needs n ≥ 1 exponents".into()));
        }
        if let Some(x) = p.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::InvalidParameter(format!("ellipsoid exponent {x} is not positive")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    /// `Σ |z_j|^{2p_j}`.
    pub fn gauge_sum(&self, z: &[Complex64]) -> f64 {
        self.p
            .iter()
            .zip(z)
            .map(|(p, z)| z.norm().powf(2.0 * p))
            .sum()
    }
}

impl TryFrom<Vec<f64>> for EllipsoidSpec {
    type Error = Error;
    fn try_from(p: Vec<f64>) -> Result<Self> {
        Self::new(p)
    }
}

impl From<EllipsoidSpec> for Vec<f64> {
    fn from(e: EllipsoidSpec) -> Self {
        e.p
    }
}

/// `E(p)` is convex iff every exponent is at least 1/2 (any `p` when n = 1).
pub fn convexity_check(spec: &EllipsoidSpec) -> bool {
    spec.dim() == 1 || spec.p.iter().all(|&p| p >= 0.5)
}

/// Weights `k` of a quasi-balanced domain: invariance under
/// `(λ^{k_1} z_1, …, λ^{k_n} z_n)`, `|λ| ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct QuasiBalancedWeights {
    k: Vec<u32>,
}

impl QuasiBalancedWeights {
    pub fn new(k: Vec<u32>) -> Result<Self> {
        if k.is_empty() || k.iter().all(|&x| x == 0) {
            return Err(Error::InvalidParameter("weights must not all vanish".into()));
        }
        Ok(Self { k })
    }

    pub fn balanced(n: usize) -> Self {
        Self { k: vec![1; n] }
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.k.len()
    }

    pub fn all_positive(&self) -> bool {
        self.k.iter().all(|&x| x > 0)
    }

    /// `(λ^{k_1} z_1, …, λ^{k_n} z_n)`.
    pub fn act(&self, lam: Complex64, z: &[Complex64]) -> Vec<Complex64> {
        self.k
            .iter()
            .zip(z)
            .map(|(&k, &z)| lam.powu(k) * z)
            .collect()
    }
}

impl TryFrom<Vec<u32>> for QuasiBalancedWeights {
    type Error = Error;
    fn try_from(k: Vec<u32>) -> Result<Self> {
        Self::new(k)
    }
}

impl From<QuasiBalancedWeights> for Vec<u32> {
    fn from(w: QuasiBalancedWeights) -> Self {
        w.k
    }
}

/// Custom three-dimensional gauge domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CustomGauge {
    /// `(|z₁| + |z₂|)² + |z₃| < 1`.
    L1SquaredPlusModulus,
    /// `|z₁|² + |z₂|² + |z₃| < 1`.
    L2SquaredPlusModulus,
}

impl CustomGauge {
    fn defect(self, z: &[Complex64]) -> f64 {
        let (a, b, c) = (z[0].norm(), z[1].norm(), z[2].norm());
        match self {
            Self::L1SquaredPlusModulus => (a + b) * (a + b) + c - 1.0,
            Self::L2SquaredPlusModulus => a * a + b * b + c - 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DomainKind {
    UnitDisc,
    Polydisc { n: usize },
    Ball { n: usize },
    Ellipsoid { p: EllipsoidSpec },
    CustomGauge { gauge: CustomGauge },
}

impl DomainKind {
    pub fn dim(&self) -> usize {
        match self {
            Self::UnitDisc => 1,
            Self::Polydisc { n } | Self::Ball { n } => *n,
            Self::Ellipsoid { p } => p.dim(),
            Self::CustomGauge { .. } => 3,
        }
    }

    fn default_weights(&self) -> QuasiBalancedWeights {
        match self {
            Self::CustomGauge { .. } => QuasiBalancedWeights { k: vec![1, 1, 2] },
            other => QuasiBalancedWeights::balanced(other.dim()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DomainRepr {
    #[serde(flatten)]
    kind: DomainKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<QuasiBalancedWeights>,
}

/// A gauge-defined domain together with its quasi-balanced weights.
///
/// Serialized as e.g. `{"type": "ellipsoid", "p": [0.5, 0.5], "k": [1, 1]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DomainRepr", into = "DomainRepr")]
pub struct DomainModel {
    kind: DomainKind,
    weights: QuasiBalancedWeights,
}

impl TryFrom<DomainRepr> for DomainModel {
    type Error = Error;
    fn try_from(r: DomainRepr) -> Result<Self> {
        match r.k {
            Some(k) => Self::with_weights(r.kind, k),
            None => Self::new(r.kind),
        }
    }
}

impl From<DomainModel> for DomainRepr {
    fn from(d: DomainModel) -> Self {
        DomainRepr {
            kind: d.kind,
            k: Some(d.weights),
        }
    }
}

impl DomainModel {
    pub fn new(kind: DomainKind) -> Result<Self> {
        let weights = kind.default_weights();
        Self::with_weights(kind, weights)
    }

    pub fn with_weights(kind: DomainKind, weights: QuasiBalancedWeights) -> Result<Self> {
        if kind.dim() == 0 {
            return Err(Error::InvalidParameter("domain of dimension 0".into()));
        }
        if weights.dim() != kind.dim() {
            return Err(Error::DimensionMismatch {
                expected: kind.dim(),
                got: weights.dim(),
            });
        }
        Ok(Self { kind, weights })
    }

    pub fn unit_disc() -> Self {
        Self::new(DomainKind::UnitDisc).expect("valid")
    }

    pub fn ball(n: usize) -> Result<Self> {
        Self::new(DomainKind::Ball { n })
    }

    pub fn polydisc(n: usize) -> Result<Self> {
        Self::new(DomainKind::Polydisc { n })
    }

    pub fn ellipsoid(p: Vec<f64>) -> Result<Self> {
        Self::new(DomainKind::Ellipsoid {
            p: EllipsoidSpec::new(p)?,
        })
    }

    pub fn custom(gauge: CustomGauge) -> Self {
        Self::new(DomainKind::CustomGauge { gauge }).expect("valid")
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn weights(&self) -> &QuasiBalancedWeights {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    /// Same domain, other weights.
    pub fn reweighted(&self, weights: QuasiBalancedWeights) -> Result<Self> {
        Self::with_weights(self.kind.clone(), weights)
    }

    /// Whether the domain is convex. The two custom gauges are sublevel sets
    /// of convex functions.
    pub fn is_convex(&self) -> bool {
        match &self.kind {
            DomainKind::Ellipsoid { p } => convexity_check(p),
            _ => true,
        }
    }

    fn check_dim(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: z.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn defect_unchecked(&self, z: &[Complex64]) -> f64 {
        match &self.kind {
            DomainKind::UnitDisc => z[0].norm() - 1.0,
            DomainKind::Polydisc { .. } => z.iter().map(|c| c.norm()).fold(0.0, f64::max) - 1.0,
            DomainKind::Ball { .. } => z.iter().map(|c| c.norm_sqr()).sum::<f64>() - 1.0,
            DomainKind::Ellipsoid { p } => p.gauge_sum(z) - 1.0,
            DomainKind::CustomGauge { gauge } => gauge.defect(z),
        }
    }

    /// Defect function: negative inside, zero on the boundary, positive outside.
    pub fn membership_defect(&self, z: &[Complex64]) -> Result<f64> {
        self.check_dim(z)?;
        Ok(self.defect_unchecked(z))
    }

    /// Three-way classification using the boundary band of `policy`.
    pub fn classify(&self, z: &[Complex64], policy: &NumericPolicy) -> Result<Membership> {
        let d = self.membership_defect(z)?;
        Ok(if d.abs() <= policy.boundary_band {
            Membership::Boundary
        } else if d < 0.0 {
            Membership::Interior
        } else {
            Membership::Exterior
        })
    }

    /// The k-Minkowski function `h(z) = inf{t > 0 : (z_j / t^{k_j}) ∈ D}`.
    ///
    /// Restricted to all-positive weights.
    pub fn minkowski_value(&self, z: &[Complex64]) -> Result<f64> {
        self.check_dim(z)?;
        let k = self.weights.k();
        if !self.weights.all_positive() {
            return Err(Error::Domain(
                "k-Minkowski function is only evaluated for all-positive weights".into(),
            ));
        }
        if z.iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
            return Ok(0.0);
        }
        if k.iter().all(|&x| x == 1) {
            match &self.kind {
                DomainKind::UnitDisc | DomainKind::Polydisc { .. } => {
                    return Ok(z.iter().map(|c| c.norm()).fold(0.0, f64::max))
                }
                DomainKind::Ball { .. } => return Ok(crate::cplane::norm(z)),
                _ => {}
            }
        }
        let mut scaled = vec![Complex64::new(0.0, 0.0); z.len()];
        let mut defect_at = |t: f64| {
            for ((s, &zj), &kj) in scaled.iter_mut().zip(z).zip(k) {
                *s = zj / t.powi(kj as i32);
            }
            self.defect_unchecked(&scaled)
        };
        bisect_gauge(&mut defect_at, 200)
    }

    /// Random points on the boundary: Gaussian vectors normalized by the gauge.
    ///
    /// Chunks of 4096 samples use independent ChaCha streams derived from
    /// `seed`, so the output does not depend on thread scheduling.
    pub fn sample_boundary(&self, count: usize, seed: u64) -> Result<Vec<Vec<Complex64>>> {
        const CHUNK: usize = 4096;
        let n = self.dim();
        let chunks = count.div_ceil(CHUNK);
        let out: Result<Vec<Vec<Vec<Complex64>>>> = (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk as u64);
                let len = CHUNK.min(count - chunk * CHUNK);
                (0..len)
                    .map(|_| {
                        let z: Vec<Complex64> = (0..n)
                            .map(|_| {
                                Complex64::new(
                                    rng.sample::<f64, _>(StandardNormal),
                                    rng.sample::<f64, _>(StandardNormal),
                                )
                            })
                            .collect();
                        self.normalize_to_boundary(&z)
                    })
                    .collect()
            })
            .collect();
        Ok(out?.into_iter().flatten().collect())
    }

    /// `(z_j / h(z)^{k_j})`, a boundary point on the orbit of `z`.
    pub fn normalize_to_boundary(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        let t = self.minkowski_value(z)?;
        if t == 0.0 {
            return Err(Error::Domain("cannot normalize the origin".into()));
        }
        Ok(z.iter()
            .zip(self.weights.k())
            .map(|(&zj, &kj)| zj / t.powi(kj as i32))
            .collect())
    }
}

/// Bisection on `t ↦ defect(z / t^k)`, which is decreasing in `t`.
fn bisect_gauge(defect_at: &mut impl FnMut(f64) -> f64, max_steps: usize) -> Result<f64> {
    let mut hi = 1.0f64;
    while defect_at(hi) >= 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Numeric("gauge bracket overflow".into()));
        }
    }
    let mut lo = hi / 2.0;
    while defect_at(lo) < 0.0 {
        lo /= 2.0;
        if lo < 1e-300 {
            return Ok(0.0);
        }
    }
    for _ in 0..max_steps {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if defect_at(mid) < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if hi - lo <= 4.0 * f64::EPSILON * hi {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::Numeric(format!(
            "gauge bisection did not converge in {max_steps} steps"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

/// Decision on `p ∈ S_n`, with a witness `(b_1, …, b_k)` such that every
/// coordinate of `p` lies in `{b_1, …, b_{k−1}, b_k/2}` and
/// `1 ≤ b_1, …, b_{k−1} ≤ b_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnDecision {
    pub member: bool,
    pub witness: Option<Vec<f64>>,
    pub explanation: String,
}

impl SnDecision {
    /// `{b_1, …, b_{k−1}, b_k/2}` for the witness.
    pub fn value_set(&self) -> Option<Vec<f64>> {
        self.witness.as_ref().map(|b| {
            let (last, rest) = b.split_last().expect("witness is nonempty");
            let mut v = rest.to_vec();
            v.push(last / 2.0);
            v
        })
    }
}

const SN_EQ_TOL: f64 = 1e-12;

/// Membership of `p` in the exponent class `S_n`.
///
/// Closed-form rule: `min p ≥ 1/2`, and either `min p ≥ 1`, or all
/// coordinates below 1 share a common value `v` with `2v ≥ max p`.
pub fn sn_membership(p: &[f64]) -> Result<SnDecision> {
    if p.is_empty() {
        return Err(Error::InvalidParameter("empty exponent vector".into()));
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("non-finite exponent".into()));
    }
    let min = p.iter().copied().fold(f64::INFINITY, f64::min);
    let max = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let reject = |explanation: String| SnDecision {
        member: false,
        witness: None,
        explanation,
    };
    if min < 0.5 - SN_EQ_TOL {
        return Ok(reject(format!("min p = {min} < 1/2")));
    }
    let mut big: Vec<f64> = p.iter().copied().filter(|&x| x >= 1.0 - SN_EQ_TOL).collect();
    big.sort_by(f64::total_cmp);
    big.dedup_by(|a, b| (*a - *b).abs() <= SN_EQ_TOL);
    let small: Vec<f64> = p.iter().copied().filter(|&x| x < 1.0 - SN_EQ_TOL).collect();
    let b_last = if small.is_empty() {
        max
    } else {
        let v = small[0];
        if small.iter().any(|x| (x - v).abs() > SN_EQ_TOL) {
            return Ok(reject("coordinates below 1 are not all equal".into()));
        }
        if 2.0 * v < max - SN_EQ_TOL {
            return Ok(reject(format!("2·min < max ({} < {max})", 2.0 * v)));
        }
        2.0 * v
    };
    let mut witness = if big.is_empty() { vec![1.0] } else { big };
    witness.push(b_last);
    Ok(SnDecision {
        member: true,
        witness: Some(witness),
        explanation: if small.is_empty() {
            "all exponents ≥ 1".into()
        } else {
            "common exponent below 1 with 2v ≥ max".into()
        },
    })
}
