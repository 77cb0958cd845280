use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CoefficientVector;
use crate::GaussianParam;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: Complex64,
    /// Upper bound on the contribution of the skipped terms.
    pub tail_bound: f64,
    /// Terms with `|x - n| <= radius` were summed.
    pub radius: f64,
}

/// `sqrt(Σ_{|x-n|>R} e^{-2a(x-n)²})` bounded by `sqrt(2 e^{-2aR²} / (1 - e^{-4aR}))`.
pub(crate) fn gaussian_tail(a: f64, radius: f64) -> f64 {
    let num = 2.0 * (-2.0 * a * radius * radius).exp();
    let den = -(-4.0 * a * radius).exp_m1();
    (num / den).sqrt()
}

/// Smallest radius (in steps of 1/2) whose Gaussian tail is below `tol`.
pub(crate) fn radius_for(a: f64, tol: f64) -> f64 {
    let mut r = 0.5;
    while gaussian_tail(a, r) >= tol {
        r += 0.5;
    }
    r
}

/// `f(x) = Σ c_n e^{-c(x-n)²}`.
///
/// Only terms with `|x - n| <= R` are summed, `R` chosen so that by
/// Cauchy–Schwarz the remainder is below `tol·‖c‖₂`; the bound is returned.
///
/// # Panics
///
/// If `tol <= 0`.
pub fn evaluate(param: GaussianParam, coeffs: &CoefficientVector, x: f64, tol: f64) -> Evaluation {
    assert!(tol > 0.0, "tolerance must be positive");
    let a = param.a();
    let radius = radius_for(a, tol);
    let lo = (x - radius).ceil() as i64;
    let hi = (x + radius).floor() as i64;
    let r = coeffs.range().intersect(crate::lattice::IndexRange::new(lo, hi));
    let value = r.iter().map(|n| coeffs.get(n) * param.atom(x - n as f64)).sum();
    Evaluation { value, tail_bound: coeffs.norm() * gaussian_tail(a, radius), radius }
}
