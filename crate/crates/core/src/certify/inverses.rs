use num_complex::Complex64;

use super::certificate::{real, verify_left_inverse, Certificate};
use super::multipoly::{MultiPolynomial, Term};
use crate::cplane::{circle_grid, BlaschkeProduct};
use crate::domains::{DomainModel, EllipsoidSpec};
use crate::error::{Error, Result};
use crate::mapspec::{Expr, MapSpec};
use crate::policy::NumericPolicy;

/// Largest denominator tried when reading exponent ratios as fractions.
pub const RATIO_DENOMINATOR_CAP: u64 = 64;
/// Tolerance for accepting a fraction as the value of a ratio.
pub const RATIO_TOL: f64 = 1e-9;

/// `F(z) = (z₁² + 2√(1−a²)·z₂) / (2 − a²)`, with `F(aλ, √(1−a²)λ²) = λ²`.
pub fn ball3_left_inverse(a: f64) -> Result<MultiPolynomial> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidParameter(format!("a = {a} outside [0, 1)")));
    }
    let s = 2.0 - a * a;
    MultiPolynomial::from_real(
        2,
        &[(1.0 / s, &[2, 0]), (2.0 * (1.0 - a * a).sqrt() / s, &[0, 1])],
    )
}

/// `λ ↦ (a₁λ^{m₁}, …, a_nλ^{m_n})`.
pub fn monomial_map(a: &[Complex64], degrees: &[u32]) -> Result<MapSpec> {
    if a.len() != degrees.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: degrees.len(),
        });
    }
    Ok(MapSpec::new(
        a.iter()
            .zip(degrees)
            .map(|(&c, &k)| Expr::monomial(c, k as i32))
            .collect(),
    ))
}

fn check_boundary(p: &EllipsoidSpec, a: &[Complex64]) -> Result<()> {
    if a.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: a.len(),
        });
    }
    let defect = p.gauge_sum(a) - 1.0;
    if defect.abs() > 1e-10 {
        return Err(Error::Domain(format!("a is not on the boundary (defect {defect:e})")));
    }
    if a.iter().any(|c| c.norm() == 0.0) {
        return Err(Error::InvalidParameter("all coordinates of a must be non-zero".into()));
    }
    Ok(())
}

/// Best continued-fraction convergent of `x > 0` with denominator at most `cap`,
/// if one lies within `tol`.
fn rational_approx(x: f64, cap: u64, tol: f64) -> Option<(u64, u64)> {
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut y = x;
    for _ in 0..64 {
        let q = y.floor();
        if q > 1e12 {
            return None;
        }
        let q = q as u64;
        let (h2, k2) = (q * h1 + h0, q * k1 + k0);
        if k2 > cap {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() <= tol * x.max(1.0) {
            return Some((h1, k1));
        }
        let frac = y - q as f64;
        if frac <= 0.0 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The monomial left inverse `F(z) = ∏ (z_j / a_j)^{m_j}` at a boundary point
/// `a` of `E(p)`, where `m` is the primitive integer vector proportional to
/// `v_j = p_j |a_j|^{2p_j}`.
///
/// `sup_{E(p)} |F| = 1`: in logarithmic coordinates `v` is the normal of the
/// supporting hyperplane at `a`. `F(a₁B₁, …, a_nB_n) = ∏ B_j^{m_j}`; for
/// `λ ↦ λa` this is `λ^{Σ m_j}`.
pub fn monomial_left_inverse(p: &EllipsoidSpec, a: &[Complex64]) -> Result<(MultiPolynomial, Vec<u32>)> {
    check_boundary(p, a)?;
    let v: Vec<f64> = p.p().iter().zip(a).map(|(&pj, aj)| pj * aj.norm().powf(2.0 * pj)).collect();
    let mut fracs = Vec::with_capacity(v.len());
    for &vj in &v {
        let ratio = vj / v[0];
        let frac = rational_approx(ratio, RATIO_DENOMINATOR_CAP, RATIO_TOL).ok_or_else(|| {
            Error::NotCommensurable(format!(
                "ratio {ratio} has no fraction with denominator ≤ {RATIO_DENOMINATOR_CAP}"
            ))
        })?;
        fracs.push(frac);
    }
    let den = fracs.iter().fold(1, |acc, &(_, d)| lcm(acc, d));
    let ints: Vec<u64> = fracs.iter().map(|&(n, d)| n * (den / d)).collect();
    let g = ints.iter().fold(0, |acc, &x| gcd(acc, x));
    let ms: Vec<u32> = ints
        .iter()
        .map(|&x| u32::try_from(x / g).map_err(|_| Error::NotCommensurable("exponent overflow".into())))
        .collect::<Result<_>>()?;
    let denom: Complex64 = a.iter().zip(&ms).map(|(aj, &mj)| aj.powu(mj)).product();
    let f = MultiPolynomial::new(
        a.len(),
        vec![Term {
            coeff: denom.inv(),
            powers: ms.clone(),
        }],
    )?;
    Ok((f, ms))
}

/// Left inverse of `(a₁λ^{m₁}, …, a_nλ^{m_n})` with `F ∘ f = λ^m`,
/// `m = lcm(m_j)`:
/// `F(z) = Σ p_j m_j b_j^{2p_j m_j/m − 1} z_j^{m/m_j} / Σ p_j m_j b_j^{2p_j m_j/m}`,
/// `b_j = a_j^{m/m_j}`.
///
/// Requires `2p_j m_j ≥ m` for every `j`.
pub fn bl1_left_inverse(p: &EllipsoidSpec, a: &[f64], m_js: &[u32]) -> Result<MultiPolynomial> {
    if m_js.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: m_js.len(),
        });
    }
    if a.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
        return Err(Error::InvalidParameter("a must have coordinates in (0, 1]".into()));
    }
    let ac: Vec<Complex64> = a.iter().map(|&x| real(x)).collect();
    check_boundary(p, &ac)?;
    if m_js.contains(&0) {
        return Err(Error::InvalidParameter("exponents must be positive".into()));
    }
    let m = m_js.iter().fold(1u64, |acc, &x| lcm(acc, x as u64)) as f64;
    for (&pj, &mj) in p.p().iter().zip(m_js) {
        if 2.0 * pj * (mj as f64) < m - 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "2·p·m_j = {} is below m = {m}",
                2.0 * pj * mj as f64
            )));
        }
    }
    let n = a.len();
    let mut terms = Vec::with_capacity(n);
    let mut total = 0.0;
    for j in 0..n {
        let (pj, mj) = (p.p()[j], m_js[j] as f64);
        let e = m / mj;
        let bj = a[j].powf(e);
        let s = 2.0 * pj * mj / m;
        total += pj * mj * bj.powf(s);
        let mut powers = vec![0; n];
        powers[j] = e.round() as u32;
        terms.push(Term {
            coeff: real(pj * mj * bj.powf(s - 1.0)),
            powers,
        });
    }
    for t in &mut terms {
        t.coeff /= total;
    }
    MultiPolynomial::new(n, terms)
}

/// Coefficients `(c, d)` of `F(z) = c·z₁^m + d·z₂`, the left inverse of
/// `(aλ, bλ^m)` in the ball with `a = √(1 − b²)`. No range check.
pub fn prop24_coefficients(m: usize, b: f64) -> (f64, f64) {
    let a2 = 1.0 - b * b;
    let mf = m as f64;
    let denom = a2 + mf * b * b;
    (1.0 / (denom * a2.sqrt().powi(m as i32 - 2)), mf * b / denom)
}

/// Certificate that `(aλ, bλ^m)`, `a = √(1 − b²)`, is an (m+1)-geodesic of
/// the ball with left inverse `c·z₁^m + d·z₂`.
///
/// `|F| ≤ 1` on the sphere holds exactly when `d ≤ 1`, i.e. `b ≤ 1/(m − 1)`.
pub fn prop24_certificate(m: usize, b: f64, policy: &NumericPolicy, seed: u64) -> Result<Certificate> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("m = {m} must be at least 3")));
    }
    let bmax = 1.0 / (m as f64 - 1.0);
    if !(b > 0.0 && b <= bmax) {
        return Err(Error::InvalidParameter(format!("b = {b} outside (0, {bmax}]")));
    }
    let a = (1.0 - b * b).sqrt();
    let (c, d) = prop24_coefficients(m, b);
    if c > 1.0 + 1e-12 || d > 1.0 + 1e-12 {
        return Err(Error::Internal(format!("coefficients c = {c}, d = {d} exceed 1")));
    }
    let mut p1 = vec![0, 0];
    p1[0] = m as u32;
    let f_inv = MultiPolynomial::from_real(2, &[(c, &p1), (d, &[0, 1])])?;
    let map = MapSpec::monomials(&[(a, 1), (b, m as i32)]);
    let lm = BlaschkeProduct::monomial(m);
    let residual = circle_grid(policy.circle_samples.max(1), 1.0)
        .iter()
        .map(|&l| (f_inv.eval_unchecked(&map.eval(l)) - lm.eval(l)).norm())
        .fold(0.0, f64::max);
    if residual > 1e-12 {
        return Err(Error::Numeric(format!("composition residual {residual:e} above 1e-12")));
    }
    verify_left_inverse(&map, &f_inv, &lm, &DomainModel::ball(2)?, m + 1, policy, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Verdict;
    use crate::maps::{ball3_normal_form, Ball3Params};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn policy(n: usize) -> NumericPolicy {
        NumericPolicy {
            boundary_samples: n,
            ..NumericPolicy::default()
        }
    }

    fn coeff(f: &MultiPolynomial, powers: &[u32]) -> Complex64 {
        f.terms().iter().filter(|t| t.powers == powers).map(|t| t.coeff).sum()
    }

    #[test]
    fn ball3_examples() {
        let f = ball3_left_inverse(0.0).unwrap();
        assert_eq!(coeff(&f, &[2, 0]), real(0.5));
        assert_eq!(coeff(&f, &[0, 1]), real(1.0));
        let f = ball3_left_inverse(0.6).unwrap();
        let l = Complex64::new(0.3, -0.4);
        let v = f.eval(&[0.6 * l, 0.8 * l * l]).unwrap();
        assert!((v - l * l).norm() < 1e-15);
        assert!(ball3_left_inverse(1.0).is_err());
    }

    #[test]
    fn ball3_composes_to_square_for_random_a() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a: f64 = rng.random_range(0.0..1.0);
            let g = ball3_normal_form(Ball3Params::new(a, real(0.0)).unwrap(), 2).unwrap();
            let f = ball3_left_inverse(a).unwrap();
            let r = circle_grid(1024, 1.0)
                .iter()
                .map(|&l| (f.eval(&g.eval(l)).unwrap() - l * l).norm())
                .fold(0.0, f64::max);
            assert!(r <= 1e-12, "a = {a}: {r:e}");
        }
    }

    #[test]
    fn monomial_inverse_examples() {
        let p = EllipsoidSpec::new(vec![0.5, 0.5]).unwrap();
        let (f, ms) = monomial_left_inverse(&p, &[real(0.5), real(0.5)]).unwrap();
        assert_eq!(ms, vec![1, 1]);
        assert!((coeff(&f, &[1, 1]) - real(4.0)).norm() < 1e-12);

        let p = EllipsoidSpec::new(vec![1.0, 1.0]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (f, ms) = monomial_left_inverse(&p, &[real(h), real(h)]).unwrap();
        assert_eq!(ms, vec![1, 1]);
        assert!((coeff(&f, &[1, 1]) - real(2.0)).norm() < 1e-12);

        let (a1, a2) = ((1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt());
        let (f, ms) = monomial_left_inverse(&p, &[real(a1), real(a2)]).unwrap();
        assert_eq!(ms, vec![1, 2]);
        assert!((coeff(&f, &[1, 2]) - real(1.0 / (a1 * a2 * a2))).norm() < 1e-12);
    }

    #[test]
    fn monomial_inverse_errors() {
        let p = EllipsoidSpec::new(vec![1.0, 1.0]).unwrap();
        // v ratio 2/(π²) is not a fraction with small denominator.
        let t = 1.0 / (1.0 + 2.0 / (std::f64::consts::PI * std::f64::consts::PI));
        let r = monomial_left_inverse(&p, &[real((1.0 - t).sqrt()), real(t.sqrt())]);
        assert!(matches!(r, Err(Error::NotCommensurable(_))), "{r:?}");
        assert!(matches!(
            monomial_left_inverse(&p, &[real(0.5), real(0.5)]),
            Err(Error::Domain(_))
        ));
        assert!(monomial_left_inverse(&EllipsoidSpec::new(vec![1.0]).unwrap(), &[real(1.0), real(0.0)]).is_err());
    }

    #[test]
    fn monomial_inverse_bounded_on_boundary() {
        let p = EllipsoidSpec::new(vec![1.0, 2.0]).unwrap();
        // v = (|a₁|², 2|a₂|⁴) with |a₁|² = 1/2, |a₂|⁴ = 1/2: ratio 1:2.
        let a = [Complex64::from_polar(0.5f64.sqrt(), 0.7), Complex64::from_polar(0.5f64.powf(0.25), -1.1)];
        let (f, ms) = monomial_left_inverse(&p, &a).unwrap();
        assert_eq!(ms, vec![1, 2]);
        let dom = DomainModel::ellipsoid(vec![1.0, 2.0]).unwrap();
        let map = monomial_map(&a, &[1, 1]).unwrap();
        let cert = verify_left_inverse(&map, &f, &BlaschkeProduct::monomial(3), &dom, 4, &policy(100_000), 9).unwrap();
        assert!(cert.residual_composition < 1e-14);
        assert!(cert.boundary_sup_estimate <= 1.0 + 1e-9, "{}", cert.boundary_sup_estimate);
        assert_eq!(cert.verdict, Verdict::Certified);
    }

    #[test]
    fn rational_approx_cases() {
        assert_eq!(rational_approx(0.5, 64, 1e-9), Some((1, 2)));
        assert_eq!(rational_approx(3.0, 64, 1e-9), Some((3, 1)));
        assert_eq!(rational_approx(22.0 / 7.0, 64, 1e-9), Some((22, 7)));
        assert_eq!(rational_approx(1.0 / 65.0, 64, 1e-9), None);
        assert_eq!(rational_approx(std::f64::consts::E, 64, 1e-9), None);
    }

    #[test]
    fn bl1_examples() {
        let p = EllipsoidSpec::new(vec![1.0]).unwrap();
        let f = bl1_left_inverse(&p, &[1.0], &[1]).unwrap();
        assert!((coeff(&f, &[1]) - real(1.0)).norm() < 1e-15);

        let p = EllipsoidSpec::new(vec![1.0, 1.0]).unwrap();
        let a = [0.6, 0.8];
        let f = bl1_left_inverse(&p, &a, &[1, 2]).unwrap();
        let g = monomial_map(&[real(0.6), real(0.8)], &[1, 2]).unwrap();
        for l in circle_grid(64, 0.9) {
            assert!((f.eval(&g.eval(l)).unwrap() - l * l).norm() < 1e-14);
        }

        let p = EllipsoidSpec::new(vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            bl1_left_inverse(&p, &[0.5, 0.5], &[1, 3]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn prop24_examples() {
        let (c, d) = prop24_coefficients(3, 0.5);
        assert!((d - 1.0).abs() < 1e-15);
        assert!((c - 4.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
        let (c, d) = prop24_coefficients(4, 0.2);
        let a = (1.0f64 - 0.04).sqrt();
        assert!((c * a.powi(4) + d * 0.2 - 1.0).abs() < 1e-15);
        assert!(prop24_certificate(3, 0.6, &policy(1000), 0).is_err());
        assert!(prop24_certificate(2, 0.5, &policy(1000), 0).is_err());
        let cert = prop24_certificate(4, 1.0 / 3.0, &policy(20_000), 0).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert_eq!(cert.m, 5);
    }

    proptest! {
        #[test]
        fn prop24_identity_and_sharpness(m in 3usize..9, t in 0.001f64..1.0) {
            let bmax = 1.0 / (m as f64 - 1.0);
            let b = t * bmax;
            let (c, d) = prop24_coefficients(m, b);
            let a = (1.0 - b * b).sqrt();
            prop_assert!((c * a.powi(m as i32) + d * b - 1.0).abs() <= 1e-14);
            prop_assert!(d <= 1.0 + 1e-15 && c <= 1.0 + 1e-15);
            let above = bmax * (1.0 + t);
            if above < 1.0 {
                prop_assert!(prop24_coefficients(m, above).1 > 1.0);
            }
        }

        #[test]
        fn bl1_composes_to_power(theta in 0.05f64..1.5, p1 in 1.0f64..3.0, p2 in 2.0f64..4.0) {
            // a = (cos θ^{1/p₁}, sin θ^{1/p₂}) lies on the boundary of E(p₁, p₂).
            let p = EllipsoidSpec::new(vec![p1, p2]).unwrap();
            let a = [theta.cos().powf(1.0 / p1), theta.sin().powf(1.0 / p2)];
            let f = bl1_left_inverse(&p, &a, &[1, 2]).unwrap();
            let g = monomial_map(&[real(a[0]), real(a[1])], &[1, 2]).unwrap();
            for l in circle_grid(16, 1.0) {
                prop_assert!((f.eval(&g.eval(l)).unwrap() - l * l).norm() < 1e-13);
            }
        }
    }
}
