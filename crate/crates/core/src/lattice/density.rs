use serde::{Deserialize, Serialize};

use super::{NodeSequence, SequenceKind};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum DensityMethod {
    ExactFormula,
    WindowSweep { r_values: Vec<f64> },
}

/// Count densities at one window length `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleDensity {
    pub r: f64,
    pub d_plus: f64,
    pub d_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub d_plus: f64,
    pub d_minus: f64,
    pub method: DensityMethod,
    /// Per-`r` values for a sweep, ordered as given; empty for exact formulas.
    pub sweep: Vec<ScaleDensity>,
}

impl DensityEstimate {
    /// True when `d_plus` is non-increasing and `d_minus` non-decreasing along
    /// the sweep, the pattern expected as `r` grows.
    pub fn is_monotone(&self) -> bool {
        self.sweep.windows(2).all(|w| w[1].d_plus <= w[0].d_plus && w[1].d_minus >= w[0].d_minus)
    }
}

/// Upper and lower Beurling densities.
///
/// Affine grids and periodic perturbations use the exact values `1/α` and `1`.
/// For explicit windows, every `r` is swept over all windows `[x, x+r]` that
/// fit inside the data. The count is piecewise constant in `x` and only
/// changes at `x = λ_i` and `x = λ_i - r`, so evaluating at those events and
/// between them is exact.
pub fn beurling_densities(seq: &NodeSequence, r_values: &[f64]) -> Result<DensityEstimate> {
    match seq.kind() {
        SequenceKind::Affine { alpha, .. } => Ok(exact(1.0 / alpha)),
        SequenceKind::Periodic { .. } => Ok(exact(1.0)),
        SequenceKind::Explicit { nodes, .. } => {
            if r_values.is_empty() {
                return Err(Error::WindowTooSmall("no window lengths given".into()));
            }
            let span = nodes.last().unwrap() - nodes[0];
            let mut sweep = Vec::with_capacity(r_values.len());
            for &r in r_values {
                if !(r > 0.0) || r > 0.5 * span {
                    return Err(Error::WindowTooSmall(format!(
                        "r = {r} must lie in (0, {}] (half the data span)",
                        0.5 * span
                    )));
                }
                let (max, min) = extreme_counts(nodes, r);
                sweep.push(ScaleDensity { r, d_plus: max as f64 / r, d_minus: min as f64 / r });
            }
            let last_idx = r_values
                .iter()
                .enumerate()
                .fold(0, |best, (i, &r)| if r > r_values[best] { i } else { best });
            let last = sweep[last_idx];
            Ok(DensityEstimate {
                d_plus: last.d_plus,
                d_minus: last.d_minus,
                method: DensityMethod::WindowSweep { r_values: r_values.to_vec() },
                sweep,
            })
        }
    }
}

fn exact(d: f64) -> DensityEstimate {
    DensityEstimate { d_plus: d, d_minus: d, method: DensityMethod::ExactFormula, sweep: Vec::new() }
}

/// Number of sorted `nodes` in the closed interval `[x, x + r]`.
fn count_in(nodes: &[f64], x: f64, r: f64) -> usize {
    let hi = nodes.partition_point(|&v| v <= x + r);
    let lo = nodes.partition_point(|&v| v < x);
    hi - lo
}

/// (max, min) of `count_in` over `x ∈ [λ_first, λ_last - r]`.
fn extreme_counts(nodes: &[f64], r: f64) -> (usize, usize) {
    let x_lo = nodes[0];
    let x_hi = nodes.last().unwrap() - r;
    let mut events: Vec<f64> = nodes
        .iter()
        .flat_map(|&v| [v, v - r])
        .filter(|&x| x >= x_lo && x <= x_hi)
        .chain([x_lo, x_hi])
        .collect();
    events.sort_by(f64::total_cmp);
    events.dedup();

    let mut max = 0;
    let mut min = usize::MAX;
    for &x in &events {
        let c = count_in(nodes, x, r);
        max = max.max(c);
        min = min.min(c);
    }
    for w in events.windows(2) {
        let c = count_in(nodes, 0.5 * (w[0] + w[1]), r);
        max = max.max(c);
        min = min.min(c);
    }
    (max, min)
}
