use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::collocation::collocation_matrix;
use super::CoefficientVector;
use crate::lattice::{IndexRange, NodeSequence};
use crate::{Error, GaussianParam, Result};

/// Relative floor below which the smallest singular value counts as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interpolation {
    pub coeffs: CoefficientVector,
    /// `‖A c - s‖₂ / ‖s‖₂`
    pub residual: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    /// `‖c‖₂ / ‖s‖₂`
    pub gain: f64,
}

/// Minimum-norm least-squares solve of `A c = samples` on `node_range`.
pub fn interpolate(
    param: GaussianParam,
    seq: &NodeSequence,
    node_range: IndexRange,
    samples: &[Complex64],
    tol: f64,
) -> Result<Interpolation> {
    let a = collocation_matrix(param, seq, node_range, tol)?;
    if samples.len() != a.rows() {
        return Err(Error::BadParameter(format!(
            "{} samples for {} nodes",
            samples.len(),
            a.rows()
        )));
    }
    let svd = a.matrix.clone().svd(true, true);
    let (sigma_min, sigma_max) = extremes(&svd.singular_values);
    let threshold = SINGULAR_THRESHOLD * sigma_max;
    if sigma_min < threshold {
        return Err(Error::SingularSystem { sigma_min, threshold });
    }
    let s = DVector::from_column_slice(samples);
    let c = svd.solve(&s, 0.0).map_err(|e| Error::BadParameter(e.to_string()))?;
    let snorm = s.norm();
    let residual = if snorm == 0.0 { (&a.matrix * &c).norm() } else { (&a.matrix * &c - &s).norm() / snorm };
    let gain = if snorm == 0.0 { 0.0 } else { c.norm() / snorm };
    Ok(Interpolation {
        coeffs: CoefficientVector::new(a.coeff_first, c.iter().copied().collect())?,
        residual,
        sigma_min,
        sigma_max,
        gain,
    })
}

fn extremes(sv: &DVector<f64>) -> (f64, f64) {
    sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)))
}

/// Which side of the finite section is cut back to its interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// All nodes, interior coefficients: a tall matrix whose smallest singular
    /// value approximates the lower sampling (frame) bound.
    #[default]
    Frame,
    /// Interior nodes, all coefficients: a wide matrix whose smallest singular
    /// value approximates the lower Riesz-sequence bound.
    Riesz,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameOptions {
    pub orientation: Orientation,
    /// Fraction of the node half-span kept on the restricted side.
    pub interior_fraction: f64,
    pub tol: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions { orientation: Orientation::Frame, interior_fraction: 2.0 / 3.0, tol: 1e-16 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub size: i64,
    pub rows: usize,
    pub cols: usize,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameBoundReport {
    pub orientation: Orientation,
    pub interior_fraction: f64,
    pub records: Vec<FrameRecord>,
    /// `σ_min` of each size over that of the previous one.
    pub ratios: Vec<f64>,
}

impl FrameBoundReport {
    /// Largest relative change of `σ_min` between consecutive sizes.
    pub fn max_variation(&self) -> f64 {
        self.ratios.iter().fold(0.0, |m, r| m.max((r - 1.0).abs()))
    }
}

/// Extremal singular values of the interior-restricted collocation matrix on
/// nodes `[-M, M]` for every `M` in `sizes`.
///
/// The interior is `|x - center| <= fraction · half_span`, measured on the
/// node positions.
pub fn frame_bounds(
    param: GaussianParam,
    seq: &NodeSequence,
    sizes: &[i64],
    opts: &FrameOptions,
) -> Result<FrameBoundReport> {
    if sizes.is_empty() || sizes[0] < 1 || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::BadParameter("sizes must be positive and strictly increasing".into()));
    }
    if !(opts.interior_fraction > 0.0 && opts.interior_fraction <= 1.0) {
        return Err(Error::BadParameter("interior fraction must lie in (0, 1]".into()));
    }
    let records = sizes
        .par_iter()
        .map(|&m| frame_record(param, seq, m, opts))
        .collect::<Result<Vec<_>>>()?;
    let ratios = records.windows(2).map(|w| w[1].sigma_min / w[0].sigma_min).collect();
    Ok(FrameBoundReport {
        orientation: opts.orientation,
        interior_fraction: opts.interior_fraction,
        records,
        ratios,
    })
}

fn frame_record(param: GaussianParam, seq: &NodeSequence, m: i64, opts: &FrameOptions) -> Result<FrameRecord> {
    let a = collocation_matrix(param, seq, IndexRange::symmetric(m), opts.tol)?;
    let lo = a.nodes[0];
    let hi = *a.nodes.last().unwrap();
    let center = 0.5 * (lo + hi);
    let reach = opts.interior_fraction * 0.5 * (hi - lo);
    let inside = |x: f64| (x - center).abs() <= reach;
    let sub: DMatrix<Complex64> = match opts.orientation {
        Orientation::Frame => {
            let keep: Vec<usize> =
                (0..a.cols()).filter(|&j| inside((a.coeff_first + j as i64) as f64)).collect();
            a.matrix.select_columns(&keep)
        }
        Orientation::Riesz => {
            let keep: Vec<usize> = (0..a.rows()).filter(|&i| inside(a.nodes[i])).collect();
            a.matrix.select_rows(&keep)
        }
    };
    if sub.nrows() == 0 || sub.ncols() == 0 {
        return Err(Error::WindowTooSmall(format!("size {m} leaves an empty interior")));
    }
    let (sigma_min, sigma_max) = extremes(&sub.singular_values());
    Ok(FrameRecord { size: m, rows: sub.nrows(), cols: sub.ncols(), sigma_min, sigma_max })
}
