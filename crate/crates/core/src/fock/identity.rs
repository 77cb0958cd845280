use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{node_transform, phi, to_fock};
use crate::gauss_space::CoefficientVector;
use crate::lattice::IndexRange;
use crate::GaussianParam;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    /// `f₊(λ)` summed on the line.
    pub lhs: Complex64,
    /// `e^{-φ(w)} e^{-ibλ²} w F₊(w)` with `w = e^{2cλ}`.
    pub rhs: Complex64,
    pub relative_gap: f64,
}

/// Evaluates `f₊(λ)` two ways: directly as a sum of Gaussians, and through the
/// Fock series `F₊` at `w = e^{2cλ}`. Only the `n ≥ 1` part of `coeffs` is used.
pub fn consistency_identity(param: GaussianParam, coeffs: &CoefficientVector, lambda: f64) -> IdentityCheck {
    let plus = coeffs.restrict(IndexRange::new(1, i64::MAX));
    // full finite sum; an absolute cutoff is not relative to a tiny f₊(λ)
    let lhs: Complex64 = plus.iter().map(|(n, z)| z * param.atom(lambda - n as f64)).sum();

    let w = node_transform(param, lambda);
    let f_plus = to_fock(param, &plus).plus;
    let log_f = f_plus.log_eval(w);
    let rhs = if log_f.re == f64::NEG_INFINITY {
        Complex64::default()
    } else {
        let log_rhs =
            log_f + w.log() + Complex64::new(-phi(param.a(), w), -param.b() * lambda * lambda);
        log_rhs.exp()
    };
    let scale = lhs.norm().max(rhs.norm());
    let relative_gap = if scale == 0.0 { 0.0 } else { (lhs - rhs).norm() / scale };
    IdentityCheck { lhs, rhs, relative_gap }
}
