use serde::{Deserialize, Serialize};

use super::{phi, LogPolarPoint};
use crate::numeric::{log_sum_exp, softplus};
use crate::{Error, Result};

/// Relative tail left out of the kernel series.
pub const KERNEL_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelNorm {
    /// `log ‖k_w‖²`
    pub log_norm_sq: f64,
    /// `‖k_w‖² (1+|w|²) e^{-2φ(w)}`
    pub ratio: f64,
    pub log_ratio: f64,
    pub terms_used: usize,
    pub terms_needed: usize,
}

fn log_term(a: f64, t: f64, n: usize) -> f64 {
    let n = n as f64;
    2.0 * n * t - 2.0 * a * (n + 1.0) * (n + 1.0)
}

/// Smallest `N` past the peak of `e^{2nt - 2a(n+1)²}` whose geometric tail
/// bound falls below `KERNEL_TAIL` of the partial sum.
fn terms_needed(a: f64, t: f64) -> usize {
    let peak = (t / (2.0 * a) - 1.0).max(0.0).ceil() as usize;
    let head = log_sum_exp((0..=peak).map(|n| log_term(a, t, n)));
    let mut n = peak + 1;
    loop {
        // successive term ratio e^{2t - 2a(2n+3)} past n
        let log_q = 2.0 * t - 2.0 * a * (2 * n + 3) as f64;
        if log_q < 0.0 {
            let log_tail = log_term(a, t, n) - (-(log_q.exp())).ln_1p();
            if log_tail - head < KERNEL_TAIL.ln() {
                return n;
            }
        }
        n += 1;
    }
}

/// `‖k_w‖² = Σ_{n≥0} |w|^{2n} e^{-2a(n+1)²}` in log form.
///
/// `n_terms = None` uses the certified count; an explicit count below it
/// fails with `TooFewTerms`.
pub fn kernel_norm(a: f64, p: LogPolarPoint, n_terms: Option<usize>) -> Result<KernelNorm> {
    if !(a > 0.0) {
        return Err(Error::BadParameter(format!("a must be > 0, got {a}")));
    }
    let t = p.log_modulus;
    let needed = terms_needed(a, t);
    let used = n_terms.unwrap_or(needed);
    if used < needed {
        return Err(Error::TooFewTerms { needed, given: used });
    }
    let log_norm_sq = log_sum_exp((0..used).map(|n| log_term(a, t, n)));
    let log_ratio = log_norm_sq + softplus(2.0 * t) - 2.0 * phi(a, p);
    Ok(KernelNorm { log_norm_sq, ratio: log_ratio.exp(), log_ratio, terms_used: used, terms_needed: needed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(t: f64) -> LogPolarPoint {
        LogPolarPoint::new(t, 0.3).unwrap()
    }

    #[test]
    fn origin_limit() {
        let k = kernel_norm(0.7, at(-40.0), None).unwrap();
        assert!((k.log_norm_sq + 1.4).abs() < 1e-15);
    }

    #[test]
    fn doubling_terms_is_stable() {
        for t in [-10.0, -5.0, 0.0, 5.0, 10.0, 37.0] {
            let k = kernel_norm(0.5, at(t), None).unwrap();
            let k2 = kernel_norm(0.5, at(t), Some(2 * k.terms_needed)).unwrap();
            assert!((k2.log_norm_sq - k.log_norm_sq).exp_m1().abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_terms() {
        let k = kernel_norm(0.5, at(10.0), None).unwrap();
        assert!(matches!(
            kernel_norm(0.5, at(10.0), Some(k.terms_needed - 1)),
            Err(Error::TooFewTerms { .. })
        ));
    }

    #[test]
    fn matches_brute_series() {
        let a = 0.5;
        for t in [-3.0, 0.0, 2.5, 6.0] {
            let brute: f64 = (0..400).map(|n| (log_term(a, t, n)).exp()).sum();
            let k = kernel_norm(a, at(t), None).unwrap();
            assert!((k.log_norm_sq.exp() / brute - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bounded_ratio_for_large_modulus() {
        // direct sum on t ∈ [0, 10] stays within a factor 3
        let (lo, hi) = (0..=100).map(|i| kernel_norm(0.5, at(0.1 * i as f64), None).unwrap().ratio).fold(
            (f64::INFINITY, 0.0f64),
            |(l, h), r| (l.min(r), h.max(r)),
        );
        assert!(hi / lo < 3.0);
    }
}
