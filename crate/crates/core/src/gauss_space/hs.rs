use serde::{Deserialize, Serialize};

use crate::lattice::{canonical_enumeration, IndexRange, NodeSequence};
use crate::{Error, GaussianParam, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HsBlock {
    pub window: i64,
    pub hs_norm: f64,
    pub hs_norm_sq: f64,
    /// Bound on the squared entries left out of the `W × W` box.
    pub tail_bound: f64,
}

/// Hilbert–Schmidt norm of the off-diagonal block `(c_n)_{n≥1} ↦ (f₊(λ_m))_{m≤-1}`
/// truncated to `-W ≤ m ≤ -1`, `1 ≤ n ≤ W`.
///
/// With `D = sup |δ|`, an omitted pair has `s = |m| + n ≥ W + 2` and entry
/// modulus at most `e^{-a(s-D)²}`; there are `s - 1` pairs per `s`, which gives
/// `tail = Σ_{s ≥ W+2} (s-1) e^{-2a(s-D)²}`.
pub fn compact_block_hsnorm(param: GaussianParam, seq: &NodeSequence, window: i64) -> Result<HsBlock> {
    if window < 1 {
        return Err(Error::BadParameter(format!("window must be ≥ 1, got {window}")));
    }
    let range = match seq.data_range() {
        Some(r) => r,
        None => IndexRange::symmetric(window + 1),
    };
    let e = canonical_enumeration(seq, range, 10.0).ok_or(Error::NoEnumeration)?;
    let a = param.a();
    let mut sq = 0.0;
    for m in -window..=-1 {
        let Some(lam) = e.position(m) else { continue };
        for n in 1..=window {
            sq += (-2.0 * a * (lam - n as f64).powi(2)).exp();
        }
    }
    let d = e.delta_sup();
    Ok(HsBlock { window, hs_norm: sq.sqrt(), hs_norm_sq: sq, tail_bound: hs_tail(a, d, window) })
}

fn hs_tail(a: f64, d: f64, window: i64) -> f64 {
    let mut total = 0.0;
    let mut s = window + 2;
    loop {
        let dist = (s as f64 - d).max(0.0);
        let term = (s - 1) as f64 * (-2.0 * a * dist * dist).exp();
        total += term;
        if dist > 1.0 && term <= total * 1e-18 {
            break;
        }
        s += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: f64, w: i64) -> f64 {
        let mut s = 0.0;
        for m in 1..=w {
            for n in 1..=w {
                s += (-2.0 * a * ((m + n) as f64).powi(2)).exp();
            }
        }
        s
    }

    #[test]
    fn lattice_block_matches_double_sum() {
        let p = GaussianParam::real(1.0).unwrap();
        let b = compact_block_hsnorm(p, &NodeSequence::integers(), 20).unwrap();
        assert!((b.hs_norm_sq - brute(1.0, 20)).abs() < 1e-18);
        // dominated by the (1, 1) term
        let first = (-8.0f64).exp();
        assert!((b.hs_norm_sq - first) / first < 1e-3);
        assert!((first - 3.3546e-4).abs() < 1e-8);
    }

    #[test]
    fn doubling_a_shrinks_the_norm() {
        let s = NodeSequence::periodic(vec![0.3, -0.2]).unwrap();
        let b1 = compact_block_hsnorm(GaussianParam::real(1.0).unwrap(), &s, 10).unwrap();
        let b2 = compact_block_hsnorm(GaussianParam::real(2.0).unwrap(), &s, 10).unwrap();
        assert!(b2.hs_norm < b1.hs_norm);
    }

    #[test]
    fn tail_certified_from_six() {
        let p = GaussianParam::real(1.0).unwrap();
        for w in 6..12 {
            let b = compact_block_hsnorm(p, &NodeSequence::integers(), w).unwrap();
            assert!(b.tail_bound < 1e-12);
        }
    }

    #[test]
    fn monotone_and_converging_in_window() {
        let p = GaussianParam::real(0.6).unwrap();
        let s = NodeSequence::periodic(vec![0.45, -0.35]).unwrap();
        let mut prev = compact_block_hsnorm(p, &s, 1).unwrap();
        for w in 2..15 {
            let b = compact_block_hsnorm(p, &s, w).unwrap();
            assert!(b.hs_norm_sq >= prev.hs_norm_sq);
            assert!(b.hs_norm_sq - prev.hs_norm_sq <= prev.tail_bound);
            prev = b;
        }
    }
}
