use serde::{Deserialize, Serialize};

use super::{IndexRange, NodeSequence, SequenceKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    /// Smallest gap between adjacent nodes; `+∞` for a single node.
    pub min_gap: f64,
    pub separated: bool,
}

/// Minimum adjacent gap of `seq` over `window`.
///
/// Periodic and affine sequences repeat their gaps, so the answer is exact and
/// does not depend on the window beyond it being nonempty. Downstream callers
/// that need quantitative separation read `min_gap` directly.
pub fn check_separation(seq: &NodeSequence, window: IndexRange) -> Result<Separation> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let min_gap = match seq.kind() {
        SequenceKind::Affine { alpha, .. } => *alpha,
        SequenceKind::Periodic { offsets } => {
            let p = offsets.len();
            (0..p)
                .map(|j| 1.0 + offsets[(j + 1) % p] - offsets[j])
                .fold(f64::INFINITY, f64::min)
        }
        SequenceKind::Explicit { .. } => {
            let w = seq.window(window)?;
            w.positions.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min)
        }
    };
    Ok(Separation { min_gap, separated: min_gap > 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_lattice_gap_is_one() {
        let s = NodeSequence::integers();
        for w in [IndexRange::new(0, 0), IndexRange::symmetric(100)] {
            let r = check_separation(&s, w).unwrap();
            assert_eq!(r.min_gap, 1.0);
            assert!(r.separated);
        }
    }

    #[test]
    fn periodic_gap_includes_period_boundary() {
        // λ_0 = 0.3, λ_1 = 0.7, λ_2 = 2.3: gaps 0.4 and 1.6.
        let s = NodeSequence::periodic(vec![0.3, -0.3]).unwrap();
        let r = check_separation(&s, IndexRange::symmetric(3)).unwrap();
        assert!((r.min_gap - 0.4).abs() < 1e-15);
        assert!(r.separated);
        // brute force over a long window agrees
        let w = s.window(IndexRange::symmetric(50)).unwrap();
        let brute = w.positions.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min);
        assert!((brute - r.min_gap).abs() < 1e-13);
    }

    #[test]
    fn explicit_window_and_errors() {
        let s = NodeSequence::explicit(0, vec![0.0, 0.25, 1.0, 3.0]).unwrap();
        let r = check_separation(&s, IndexRange::new(0, 3)).unwrap();
        assert_eq!(r.min_gap, 0.25);
        let r = check_separation(&s, IndexRange::new(2, 3)).unwrap();
        assert_eq!(r.min_gap, 2.0);
        let r = check_separation(&s, IndexRange::new(3, 3)).unwrap();
        assert_eq!(r.min_gap, f64::INFINITY);
        assert!(matches!(check_separation(&s, IndexRange::new(1, 0)), Err(Error::EmptyWindow)));
        assert!(matches!(check_separation(&s, IndexRange::new(9, 12)), Err(Error::EmptyWindow)));
    }
}
