use serde::{Deserialize, Serialize};

use super::{node_transform, LogPolarPoint};
use crate::lattice::{AveragingWindow, Enumeration};
use crate::numeric::log_abs_diff;
use crate::{Error, GaussianParam, Result};

/// Lattice-scale `δ` to Fock-scale: `log|w_n| = 2an + 2aδ_n`.
pub fn lattice_to_fock_delta(a: f64, delta: f64) -> f64 {
    2.0 * a * delta
}

pub fn fock_to_lattice_delta(a: f64, delta: f64) -> f64 {
    delta / (2.0 * a)
}

/// `w_n = e^{2cλ_n}` for the enumerated nodes with `n ≥ 1`.
pub fn fock_points_from_enumeration(param: GaussianParam, e: &Enumeration) -> Vec<LogPolarPoint> {
    e.iter().filter(|(n, _)| *n >= 1).map(|(n, d)| node_transform(param, n as f64 + d)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockCisOptions {
    pub n_max: usize,
    pub margin: f64,
}

impl Default for FockCisOptions {
    fn default() -> Self {
        FockCisOptions { n_max: 8, margin: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockCisVerdict {
    /// `min_{m≠n} |w_m - w_n| / |w_n|`
    pub gamma: f64,
    pub separated: bool,
    pub delta_sup: f64,
    pub best_window: Option<AveragingWindow>,
    pub threshold: f64,
    pub passes: bool,
    /// Arguments of the points play no part in the verdict.
    pub modulus_only: bool,
}

/// Checks separation, bounded `δ_n = log|w_n| - 2an` and
/// `min_{N ≤ n_max} sup_{n≥1} |(δ_{n+1} + … + δ_{n+N}) / N| < a - margin`
/// on points `w_1, w_2, …` given in order of modulus.
pub fn fock_cis_verdict(a: f64, points: &[LogPolarPoint], opts: &FockCisOptions) -> Result<FockCisVerdict> {
    if !(a > 0.0) {
        return Err(Error::BadParameter(format!("a must be > 0, got {a}")));
    }
    if let Some(i) = points.windows(2).position(|w| w[1].log_modulus < w[0].log_modulus) {
        return Err(Error::UnsortedInput(i + 1));
    }
    let deltas: Vec<f64> =
        points.iter().enumerate().map(|(i, p)| p.log_modulus - 2.0 * a * (i + 1) as f64).collect();
    let delta_sup = deltas.iter().fold(0.0f64, |m, d| m.max(d.abs()));

    let mut gamma = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j {
                gamma = gamma.min((log_abs_diff(p.log(), q.log()) - q.log_modulus).exp());
            }
        }
    }
    let separated = gamma > 0.0;

    // windows δ_{n+1..n+N} with n ≥ 1, i.e. starting at the second point
    let tail = deltas.get(1..).unwrap_or(&[]);
    let mut prefix = vec![0.0];
    for d in tail {
        prefix.push(prefix.last().unwrap() + d);
    }
    let tol = 64.0 * f64::EPSILON * delta_sup.max(1.0);
    let mut best: Option<AveragingWindow> = None;
    for n in 1..=opts.n_max.min(tail.len()) {
        let sup = (0..=tail.len() - n)
            .map(|s| (prefix[s + n] - prefix[s]).abs() / n as f64)
            .fold(0.0, f64::max);
        if best.is_none_or(|b| sup < b.delta_star - tol) {
            best = Some(AveragingWindow { n, delta_star: sup });
        }
    }
    let threshold = a - opts.margin;
    let passes = separated && best.is_some_and(|w| w.delta_star < threshold);
    Ok(FockCisVerdict { gamma, separated, delta_sup, best_window: best, threshold, passes, modulus_only: true })
}
