use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FockSeries, LogPolarPoint};
use crate::numeric::log_sum_exp;
use crate::{Error, Result};

/// Trapezoid nodes in `t = log r` and equispaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
    pub angles: usize,
}

impl RadialGrid {
    /// Covers the Gaussian bump `e^{2(n+1)t - t²/2a}` of every degree up to
    /// `degree` with ten standard deviations to spare.
    pub fn auto(a: f64, degree: usize) -> Self {
        let s = a.sqrt();
        RadialGrid {
            t_min: 2.0 * a - 10.0 * s,
            t_max: 2.0 * a * (degree + 1) as f64 + 10.0 * s,
            step: s / 4.0,
            angles: 2 * degree + 2,
        }
    }

    fn nodes(&self, step: f64) -> Vec<(f64, f64)> {
        let n = ((self.t_max - self.t_min) / step).ceil() as usize;
        let h = (self.t_max - self.t_min) / n as f64;
        (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 0.5 * h } else { h };
                (self.t_min + i as f64 * h, w)
            })
            .collect()
    }
}

/// Result of an area quadrature, carried as a logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureEstimate {
    pub log_value: f64,
    /// Relative change against the same rule at twice the step.
    pub error_estimate: f64,
}

impl QuadratureEstimate {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// Normalisation of `(1/π) dm₂` against the weight `e^{-(log|w|)²/2a}` so that
/// monomials have norm² `e^{2a(n+1)²}`.
fn log_prefactor(a: f64) -> f64 {
    -(2.0 * (2.0 * PI * a).sqrt()).ln() - PI.ln()
}

/// In `w = e^{t+iθ}`, `dm₂ = e^{2t} dt dθ`, so the integrand becomes
/// `|F|² e^{2t - t²/2a}`.
fn log_area_integral(a: f64, grid: &RadialGrid, step: f64, log_integrand: &dyn Fn(LogPolarPoint) -> f64) -> f64 {
    let k = grid.angles.max(1);
    let dtheta = 2.0 * PI / k as f64;
    let terms = grid.nodes(step).into_iter().flat_map(|(t, w)| {
        (0..k).map(move |j| {
            let p = LogPolarPoint { log_modulus: t, argument: j as f64 * dtheta - PI };
            (p, w)
        })
    });
    let logs: Vec<f64> = terms
        .map(|(p, w)| log_integrand(p) + 2.0 * p.log_modulus - p.log_modulus.powi(2) / (2.0 * a) + (w * dtheta).ln())
        .collect();
    log_prefactor(a) + log_sum_exp(logs)
}

/// Estimates `‖F‖²` by the area integral.
///
/// Fails with `GridTooCoarse` when halving the resolution moves the value
/// by more than `rel_tol`, or when the integrand at the ends of the grid is
/// not negligible against the total.
pub fn fock_norm_quadrature(
    series: &FockSeries,
    a: f64,
    grid: &RadialGrid,
    rel_tol: f64,
) -> Result<QuadratureEstimate> {
    if series.is_zero() {
        return Ok(QuadratureEstimate { log_value: f64::NEG_INFINITY, error_estimate: 0.0 });
    }
    let integrand = |p: LogPolarPoint| 2.0 * series.log_eval(p).re;
    let fine = log_area_integral(a, grid, grid.step, &integrand);
    let coarse = log_area_integral(a, grid, 2.0 * grid.step, &integrand);
    let err = (coarse - fine).exp_m1().abs();

    // the radial profile at the ends, angle-averaged, against the total
    let edge = |t: f64| {
        let k = grid.angles.max(1);
        let prof: Vec<f64> = (0..k)
            .map(|j| {
                let p = LogPolarPoint { log_modulus: t, argument: 2.0 * PI * j as f64 / k as f64 - PI };
                integrand(p)
            })
            .collect();
        log_sum_exp(prof) - (k as f64).ln() + 2.0 * t - t * t / (2.0 * a) + (2.0 * PI).ln() + log_prefactor(a)
    };
    let spill = (edge(grid.t_min).max(edge(grid.t_max)) + grid.step.ln() - fine).exp();
    let err = err.max(spill);
    if !(err <= rel_tol) {
        return Err(Error::GridTooCoarse(err));
    }
    Ok(QuadratureEstimate { log_value: fine, error_estimate: err })
}

/// `⟨F, G⟩` by the same area rule; values must fit in double precision.
pub fn fock_inner_quadrature(f: &FockSeries, g: &FockSeries, a: f64, grid: &RadialGrid) -> Complex64 {
    let k = grid.angles.max(1);
    let dtheta = 2.0 * PI / k as f64;
    let pref = log_prefactor(a);
    let mut acc = Complex64::default();
    for (t, w) in grid.nodes(grid.step) {
        let weight = (pref + 2.0 * t - t * t / (2.0 * a)).exp() * w * dtheta;
        for j in 0..k {
            let p = LogPolarPoint { log_modulus: t, argument: j as f64 * dtheta - PI };
            let fv = f.log_eval(p);
            let gv = g.log_eval(p);
            if fv.re == f64::NEG_INFINITY || gv.re == f64::NEG_INFINITY {
                continue;
            }
            acc += (fv + gv.conj()).exp() * weight;
        }
    }
    acc
}
