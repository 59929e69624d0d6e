//! Deterministic fixtures shared by the kernel benchmarks.

use mextremal_core::{c64, BlaschkeProduct, Complex64, PickData};

/// `n` distinct nodes on the circle of radius 0.8, rotated so none is real.
pub fn nodes(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(0.8, 0.3 + std::f64::consts::TAU * j as f64 / n as f64))
        .collect()
}

/// A degree-`d` Blaschke product with zeros spread inside radius 0.6.
pub fn blaschke(d: usize) -> BlaschkeProduct {
    let zeros = (0..d)
        .map(|j| Complex64::from_polar(0.6 * (j + 1) as f64 / (d + 1) as f64, 1.1 * j as f64))
        .collect();
    BlaschkeProduct::new(c64(1.0, 0.0), zeros).expect("zeros inside the disc")
}

/// Values of a degree-`d` Blaschke product at `n` nodes: singular Pick data
/// when `d < n`.
pub fn extremal_data(n: usize, d: usize) -> PickData {
    let b = blaschke(d);
    let ns = nodes(n);
    let vs = ns.iter().map(|&z| b.eval(z)).collect();
    PickData::new(ns, vs).expect("valid data")
}

/// Values of `0.9·B` for a degree-`n` product: positive definite Pick data.
pub fn interior_data(n: usize) -> PickData {
    let b = blaschke(n);
    let ns = nodes(n);
    let vs = ns.iter().map(|&z| b.eval(z) * 0.9).collect();
    PickData::new(ns, vs).expect("valid data")
}
