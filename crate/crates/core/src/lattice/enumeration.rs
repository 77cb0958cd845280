use serde::{Deserialize, Serialize};

use super::{IndexRange, NodeSequence};

/// An order-respecting enumeration `λ_m = n + δ_n` with `n = m + offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    /// Shift applied to the original indices.
    pub offset: i64,
    /// New index of the first node in the window.
    pub first_index: i64,
    pub deltas: Vec<f64>,
}

impl Enumeration {
    pub fn range(&self) -> IndexRange {
        IndexRange::new(self.first_index, self.first_index + self.deltas.len() as i64 - 1)
    }

    pub fn delta_sup(&self) -> f64 {
        self.deltas.iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    pub fn delta(&self, n: i64) -> Option<f64> {
        let i = usize::try_from(n - self.first_index).ok()?;
        self.deltas.get(i).copied()
    }

    /// `λ` at new index `n`.
    pub fn position(&self, n: i64) -> Option<f64> {
        self.delta(n).map(|d| n as f64 + d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.deltas.iter().enumerate().map(|(i, &d)| (self.first_index + i as i64, d))
    }
}

/// Integer shift `k` minimising `max |d - k|` over `d ∈ [lo, hi]`, restricted to
/// `|k| <= limit`. Ties go to the smaller `|k|`.
pub(crate) fn best_offset(lo: f64, hi: f64, limit: i64) -> (i64, f64) {
    let mid = 0.5 * (lo + hi);
    let mut best: Option<(i64, f64)> = None;
    for k in [mid.floor() as i64, mid.ceil() as i64, 0] {
        let k = k.clamp(-limit, limit);
        let sup = (hi - k as f64).abs().max((lo - k as f64).abs());
        best = match best {
            None => Some((k, sup)),
            Some((bk, bs)) if sup < bs || (sup == bs && k.abs() < bk.abs()) => Some((k, sup)),
            b => b,
        };
    }
    best.expect("candidates")
}

/// Finds the re-indexing of `seq` over `window` that minimises `sup |δ_n|`.
///
/// Returns `None` when even the best shift leaves `sup |δ_n| > bound`, i.e. the
/// sequence does not look like a bounded perturbation of `ℤ` on this window.
/// The offset search is limited to `|k| <= span / 2` where `span` is the
/// extent of the window's nodes.
pub fn canonical_enumeration(
    seq: &NodeSequence,
    window: IndexRange,
    bound: f64,
) -> Option<Enumeration> {
    let w = seq.window(window).ok()?;
    let (lo, hi) = w
        .iter()
        .map(|(m, x)| x - m as f64)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(d), hi.max(d)));
    let span = w.positions.last().unwrap() - w.positions[0];
    let limit = (span / 2.0).floor().max(0.0) as i64;
    let (k, sup) = best_offset(lo, hi, limit);
    if !(sup <= bound) {
        return None;
    }
    let deltas = w.iter().map(|(m, x)| x - (m + k) as f64).collect();
    Some(Enumeration { offset: k, first_index: w.first_index + k, deltas })
}
