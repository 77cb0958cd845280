use serde::{Deserialize, Serialize};

use super::enumeration::best_offset;
use super::{
    canonical_enumeration, check_separation, IndexRange, NodeSequence, SequenceKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AvdoninOptions {
    /// Largest averaging length tried for explicit windows.
    pub n_max: usize,
    /// Strictness margin: pass requires `delta_star < 1/2 - margin`.
    pub margin: f64,
    /// Largest `sup |δ_n|` accepted as "bounded" on a finite window.
    pub enumeration_bound: f64,
    /// Index window for explicit data; defaults to all of it.
    pub window: Option<IndexRange>,
}

impl Default for AvdoninOptions {
    fn default() -> Self {
        AvdoninOptions { n_max: 8, margin: 1e-9, enumeration_bound: 10.0, window: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Caveat {
    Exact,
    FiniteWindowHeuristic,
}

/// Averaging length `n` and the resulting `sup |mean of n consecutive δ|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AveragingWindow {
    pub n: usize,
    pub delta_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AvdoninVerdict {
    pub separated: bool,
    pub min_gap: f64,
    /// A bounded enumeration `λ_n = n + δ_n` exists.
    pub enumerable: bool,
    pub offset: Option<i64>,
    pub delta_sup: f64,
    pub best_window: Option<AveragingWindow>,
    pub passes: bool,
    pub caveat: Caveat,
}

/// Decides whether `seq` is a complete interpolating sequence for `V²_c`:
/// separated, `λ_n = n + δ_n` with bounded `δ`, and some averaging length `N`
/// with `sup_n |(δ_{n+1} + … + δ_{n+N}) / N| < 1/2`.
///
/// The verdict is exact for periodic perturbations and affine grids. For an
/// explicit window the sup is taken over full windows inside the data only,
/// and the verdict carries [`Caveat::FiniteWindowHeuristic`].
pub fn avdonin_verdict(seq: &NodeSequence, opts: &AvdoninOptions) -> AvdoninVerdict {
    let threshold = 0.5 - opts.margin;
    match seq.kind() {
        SequenceKind::Affine { alpha, beta } => {
            if *alpha != 1.0 {
                return AvdoninVerdict {
                    separated: true,
                    min_gap: *alpha,
                    enumerable: false,
                    offset: None,
                    delta_sup: f64::INFINITY,
                    best_window: None,
                    passes: false,
                    caveat: Caveat::Exact,
                };
            }
            let (k, sup) = best_offset(*beta, *beta, i64::MAX);
            AvdoninVerdict {
                separated: true,
                min_gap: 1.0,
                enumerable: true,
                offset: Some(k),
                delta_sup: sup,
                best_window: Some(AveragingWindow { n: 1, delta_star: sup }),
                passes: sup < threshold,
                caveat: Caveat::Exact,
            }
        }
        SequenceKind::Periodic { offsets } => {
            let sep = check_separation(seq, IndexRange::new(0, 0)).expect("nonempty");
            let lo = offsets.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = offsets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let (k, sup) = best_offset(lo, hi, i64::MAX);
            let deltas: Vec<f64> = offsets.iter().map(|d| d - k as f64).collect();
            let window = periodic_window(&deltas);
            AvdoninVerdict {
                separated: sep.separated,
                min_gap: sep.min_gap,
                enumerable: true,
                offset: Some(k),
                delta_sup: sup,
                best_window: Some(window),
                passes: sep.separated && window.delta_star < threshold,
                caveat: Caveat::Exact,
            }
        }
        SequenceKind::Explicit { .. } => {
            let window = opts.window.or(seq.data_range()).expect("explicit data");
            let sep = check_separation(seq, window);
            let (separated, min_gap) = match sep {
                Ok(s) => (s.separated, s.min_gap),
                Err(_) => (false, 0.0),
            };
            let heuristic = |enumerable, offset, delta_sup, best_window: Option<AveragingWindow>| {
                let passes = separated
                    && enumerable
                    && best_window.is_some_and(|w| w.delta_star < threshold);
                AvdoninVerdict {
                    separated,
                    min_gap,
                    enumerable,
                    offset,
                    delta_sup,
                    best_window,
                    passes,
                    caveat: Caveat::FiniteWindowHeuristic,
                }
            };
            match canonical_enumeration(seq, window, opts.enumeration_bound) {
                None => heuristic(false, None, f64::INFINITY, None),
                Some(e) => {
                    let best = best_sliding_window(&e.deltas, opts.n_max);
                    heuristic(true, Some(e.offset), e.delta_sup(), best)
                }
            }
        }
    }
}

/// Exact condition for a periodic `δ`: every window average of length `P`
/// equals the mean, and for any `N` the windows average to the mean too, so
/// `|mean|` is the smallest achievable sup. The reported `n` is the shortest
/// length that attains it.
fn periodic_window(deltas: &[f64]) -> AveragingWindow {
    let p = deltas.len();
    let mean = deltas.iter().sum::<f64>() / p as f64;
    let scale: f64 = deltas.iter().map(|d| d.abs()).sum::<f64>() + 1.0;
    let tol = 8.0 * f64::EPSILON * scale;
    for n in 1..=p {
        let sup = (0..p)
            .map(|s| (0..n).map(|i| deltas[(s + i) % p]).sum::<f64>().abs() / n as f64)
            .fold(0.0, f64::max);
        if sup <= mean.abs() + tol {
            return AveragingWindow { n, delta_star: mean.abs() };
        }
    }
    AveragingWindow { n: p, delta_star: mean.abs() }
}

/// `min_{N ≤ n_max} sup_s |mean(δ_s..δ_{s+N})|` over full windows of the data,
/// shortest `N` on ties.
fn best_sliding_window(deltas: &[f64], n_max: usize) -> Option<AveragingWindow> {
    let mut prefix = Vec::with_capacity(deltas.len() + 1);
    prefix.push(0.0);
    for d in deltas {
        prefix.push(prefix.last().unwrap() + d);
    }
    let scale: f64 = deltas.iter().fold(1.0, |m, d| m.max(d.abs()));
    let tol = 64.0 * f64::EPSILON * scale;
    let mut best: Option<AveragingWindow> = None;
    for n in 1..=n_max.min(deltas.len()) {
        let sup = (0..=deltas.len() - n)
            .map(|s| (prefix[s + n] - prefix[s]).abs() / n as f64)
            .fold(0.0, f64::max);
        // longer windows must win by more than rounding
        if best.is_none_or(|b| sup < b.delta_star - tol) {
            best = Some(AveragingWindow { n, delta_star: sup });
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn verdict(seq: &NodeSequence) -> AvdoninVerdict {
        avdonin_verdict(seq, &AvdoninOptions::default())
    }

    #[test]
    fn integer_lattice_passes() {
        let v = verdict(&NodeSequence::integers());
        assert!(v.passes);
        assert_eq!(v.best_window.unwrap().delta_star, 0.0);
        assert_eq!(v.caveat, Caveat::Exact);
    }

    #[test]
    fn half_shift_is_the_sharp_failure() {
        let v = verdict(&NodeSequence::affine(1.0, 0.5).unwrap());
        assert!(v.enumerable && v.separated);
        assert_eq!(v.best_window.unwrap().delta_star, 0.5);
        assert!(!v.passes);
        // the same sequence as a periodic pattern
        let v = verdict(&NodeSequence::periodic(vec![0.5]).unwrap());
        assert_eq!(v.best_window.unwrap().delta_star, 0.5);
        assert!(!v.passes);
    }

    #[test]
    fn period_two_average() {
        let v = verdict(&NodeSequence::periodic(vec![0.45, -0.35]).unwrap());
        let w = v.best_window.unwrap();
        assert_eq!(w.n, 2);
        // direct arithmetic: (0.45 - 0.35) / 2
        assert!((w.delta_star - 0.05).abs() < 1e-15);
        assert!(v.passes);
        assert!((v.delta_sup - 0.45).abs() < 1e-15);
    }

    #[test]
    fn period_four_beyond_kadets() {
        let v = verdict(&NodeSequence::periodic(vec![0.7, -0.1, -0.7, 0.1]).unwrap());
        assert!(v.passes);
        assert!(v.delta_sup > 0.5);
        assert!(v.best_window.unwrap().delta_star.abs() < 1e-15);
    }

    #[test]
    fn affine_off_unit_slope_is_not_enumerable() {
        for alpha in [0.9, 1.1, 2.0] {
            let v = verdict(&NodeSequence::affine(alpha, 0.0).unwrap());
            assert!(!v.enumerable);
            assert!(!v.passes);
        }
    }

    #[test]
    fn explicit_window_is_heuristic() {
        let nodes: Vec<f64> = (-30..=30).map(|n| n as f64 + if n % 2 == 0 { 0.45 } else { -0.35 }).collect();
        let s = NodeSequence::explicit(-30, nodes).unwrap();
        let v = verdict(&s);
        assert_eq!(v.caveat, Caveat::FiniteWindowHeuristic);
        assert!(v.passes);
        let w = v.best_window.unwrap();
        assert_eq!(w.n, 2);
        assert!((w.delta_star - 0.05).abs() < 1e-12);
    }

    #[test]
    fn explicit_unbounded_drift_fails_enumeration() {
        let nodes: Vec<f64> = (-50..=50).map(|n| 2.0 * n as f64).collect();
        let v = verdict(&NodeSequence::explicit(-50, nodes).unwrap());
        assert!(!v.enumerable);
        assert!(!v.passes);
    }

    /// Brute-force window averages over a long stretch of the sequence.
    fn brute_sup(offsets: &[f64], n: usize) -> f64 {
        let p = offsets.len();
        (0..4 * p)
            .map(|s| (0..n).map(|i| offsets[(s + i) % p]).sum::<f64>().abs() / n as f64)
            .fold(0.0, f64::max)
    }

    fn increasing_offsets() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-0.3f64..0.3, 1..7)
    }

    proptest! {
        #[test]
        fn periodic_delta_star_is_abs_mean(offsets in increasing_offsets()) {
            let s = NodeSequence::periodic(offsets.clone()).unwrap();
            let v = verdict(&s);
            let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
            let w = v.best_window.unwrap();
            prop_assert_eq!(w.delta_star, mean.abs());
            let p = offsets.len();
            for n in 1..=4 * p {
                prop_assert!(brute_sup(&offsets, n) >= mean.abs() - 1e-14);
            }
            prop_assert!((brute_sup(&offsets, p) - mean.abs()).abs() < 1e-14);
        }

        #[test]
        fn constant_shift_moves_delta_star(offsets in increasing_offsets(), s in -0.2f64..0.2) {
            let base = verdict(&NodeSequence::periodic(offsets.clone()).unwrap());
            let shifted: Vec<f64> = offsets.iter().map(|d| d + s).collect();
            let v = verdict(&NodeSequence::periodic(shifted).unwrap());
            let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
            prop_assert_eq!(base.offset, Some(0));
            prop_assert!((v.best_window.unwrap().delta_star - (mean + s).abs()).abs() < 1e-14);
        }
    }
}
