//! Complex-scalar building blocks: Möbius maps, finite Blaschke products,
//! polynomials, Schur reduction and the Poincaré distance.

mod blaschke;
mod moebius;
mod poly;
mod schur;

pub use blaschke::BlaschkeProduct;
pub use moebius::{moebius, moebius_eval, poincare_distance, MoebiusMap};
pub use poly::ComplexPolynomial;
pub use schur::{
    blaschke_degree_of_data, schur_degree, schur_step, BlaschkeDegree, DiscFunction,
    SampledFunction, SchurReduced,
};

use num_complex::Complex64;

/// Complex conjugate inner product `<z, w> = Σ z_j conj(w_j)`.
pub fn inner(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

/// Euclidean norm of a complex vector.
pub fn norm(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `n` equally spaced points on the circle of radius `r`.
pub fn circle_grid(n: usize, r: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64))
        .collect()
}
