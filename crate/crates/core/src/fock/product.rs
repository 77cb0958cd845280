use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{phi, LogPolarPoint};
use crate::numeric::{expm1_c, log1p_c, log_abs_diff, softplus, wrap_phase};
use crate::{Error, Result};

/// Relative distance to a zero below which a point counts as on it.
pub const ON_ZERO: f64 = 1e-14;
/// Bound on `Σ_{m>M} |w| / |w_m|`, the factors left out of the product.
pub const PRODUCT_TAIL: f64 = 1e-16;

/// `Π_{m≥1} (1 - w / w_m)` over positive real zeros `w_m = e^{ℓ_m}`, truncated
/// after the stored zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratingProduct {
    a: f64,
    /// `ℓ_1 < ℓ_2 < …`
    log_zeros: Vec<f64>,
    /// `prefix[k] = ℓ_1 + … + ℓ_k`
    prefix: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductValue {
    pub log_abs: f64,
    pub arg: f64,
    /// 1-based index of the zero closest to `w`.
    pub nearest_zero: usize,
    /// `log dist(w, zeros)`
    pub log_dist: f64,
}

impl GeneratingProduct {
    pub fn new(a: f64, log_zeros: Vec<f64>) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::BadParameter(format!("a must be > 0, got {a}")));
        }
        if log_zeros.is_empty() || log_zeros.iter().any(|l| !l.is_finite()) {
            return Err(Error::BadParameter("zeros must be finite and nonempty".into()));
        }
        for (i, w) in log_zeros.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::NonIncreasing { index: i as i64 + 2, prev: w[0], next: w[1] });
            }
        }
        let mut prefix = Vec::with_capacity(log_zeros.len() + 1);
        prefix.push(0.0);
        for l in &log_zeros {
            prefix.push(prefix.last().unwrap() + l);
        }
        Ok(GeneratingProduct { a, log_zeros, prefix })
    }

    /// Enough zeros `m = 1..M` for `|w| ≤ e^{max_log_modulus}` to stay within
    /// `PRODUCT_TAIL`, assuming perturbations bounded by `slack`.
    pub fn terms_for(a: f64, max_log_modulus: f64, slack: f64) -> usize {
        // tail ≈ e^{t - ℓ_{M+1}} / (1 - e^{-2a})
        let need = max_log_modulus - PRODUCT_TAIL.ln() - (-(-2.0 * a).exp()).ln_1p() + slack;
        ((need / (2.0 * a)).ceil().max(1.0)) as usize
    }

    /// Zeros `e^{2am}`.
    pub fn unperturbed(a: f64, m_terms: usize) -> Result<Self> {
        Self::new(a, (1..=m_terms).map(|m| 2.0 * a * m as f64).collect())
    }

    /// Zeros `e^{2am + 2aδ_m}` for `m = 1..=deltas.len()`, lattice-scale `δ`.
    pub fn from_lattice_deltas(a: f64, deltas: &[f64]) -> Result<Self> {
        Self::new(a, deltas.iter().enumerate().map(|(i, d)| 2.0 * a * ((i + 1) as f64 + d)).collect())
    }

    /// Periodic lattice-scale `δ_m = offsets[m mod P]`.
    pub fn periodic(a: f64, offsets: &[f64], m_terms: usize) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::BadParameter("period must be ≥ 1".into()));
        }
        let d: Vec<f64> = (1..=m_terms).map(|m| offsets[m % offsets.len()]).collect();
        Self::from_lattice_deltas(a, &d)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn log_zeros(&self) -> &[f64] {
        &self.log_zeros
    }

    /// `Σ_{m>M} |w|/|w_m|` estimated by continuing the last spacing.
    pub fn truncation_error(&self, p: LogPolarPoint) -> f64 {
        let m = self.log_zeros.len();
        let last = self.log_zeros[m - 1];
        let gap = if m > 1 { last - self.log_zeros[m - 2] } else { 2.0 * self.a };
        (p.log_modulus - last - gap).exp() / -(-gap).exp_m1()
    }

    pub fn evaluate(&self, p: LogPolarPoint) -> Result<ProductValue> {
        if self.truncation_error(p) > PRODUCT_TAIL {
            let want = Self::terms_for(self.a, p.log_modulus, 0.0);
            return Err(Error::TooFewTerms { needed: want.max(self.log_zeros.len() + 1), given: self.log_zeros.len() });
        }
        let u = p.log();
        let (nearest_zero, log_dist) = self.nearest(u);
        if log_dist - self.log_zeros[nearest_zero - 1] < ON_ZERO.ln() {
            return Err(Error::OnZero { index: nearest_zero });
        }
        // zeros far below |w|: 1 - e^z ≈ -e^z to double precision
        let far = self.log_zeros.partition_point(|&l| u.re - l > 40.0);
        let mut acc = Complex64::new(far as f64 * u.re - self.prefix[far], far as f64 * (u.im + PI));
        for &l in &self.log_zeros[far..] {
            acc += log_one_minus_exp(u - l);
        }
        Ok(ProductValue { log_abs: acc.re, arg: wrap_phase(acc.im), nearest_zero, log_dist })
    }

    fn nearest(&self, u: Complex64) -> (usize, f64) {
        self.log_zeros
            .iter()
            .enumerate()
            .map(|(i, &l)| (i + 1, log_abs_diff(u, Complex64::new(l, 0.0))))
            .fold((0, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b })
    }
}

/// `log(1 - e^z)`, principal up to multiples of `2πi`.
fn log_one_minus_exp(z: Complex64) -> Complex64 {
    if z.re <= -1.0 {
        log1p_c(-z.exp())
    } else if z.re >= 1.0 {
        z + Complex64::new(0.0, PI) + log1p_c(-(-z).exp())
    } else {
        (-expm1_c(z)).ln()
    }
}

/// `G₀` with zeros `e^{2am}`, enough terms for `p`.
pub fn generating_product_g0(a: f64, p: LogPolarPoint) -> Result<ProductValue> {
    let m = GeneratingProduct::terms_for(a, p.log_modulus, 0.0);
    GeneratingProduct::unperturbed(a, m)?.evaluate(p)
}

/// `|G₀(w)| (1 + |w|^{3/2}) / (e^{φ(w)} dist(w, W₀))`.
pub fn g0_ratio(a: f64, p: LogPolarPoint) -> Result<f64> {
    let v = generating_product_g0(a, p)?;
    Ok((v.log_abs + softplus(1.5 * p.log_modulus) - phi(a, p) - v.log_dist).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbedValue {
    pub value: ProductValue,
    /// `|G₊(w)| (1+|w|)^{3/2+δ} / (dist(w, W₊) e^{φ(w)})`
    pub ratio: f64,
}

/// `G₊` at `p` together with its lower-estimate ratio; `delta` is the
/// Fock-scale averaging constant.
pub fn generating_product_perturbed(prod: &GeneratingProduct, p: LogPolarPoint, delta: f64) -> Result<PerturbedValue> {
    let v = prod.evaluate(p)?;
    let log_ratio = v.log_abs + (1.5 + delta) * softplus(p.log_modulus) - v.log_dist - phi(prod.a, p);
    Ok(PerturbedValue { value: v, ratio: log_ratio.exp() })
}

/// Test grid: `log|w| = t_lo, t_lo + step, … ≤ t_hi` at `angles` equispaced
/// arguments, dropping points with `|w - w_m| < min_rel |w_m|` for some zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateGrid {
    pub t_lo: f64,
    pub t_hi: f64,
    pub step: f64,
    pub angles: usize,
    pub min_rel: f64,
}

impl EstimateGrid {
    /// `log|w| ∈ [a, 21a]` in steps of 0.1, 8 angles, relative distance 0.1.
    pub fn standard(a: f64) -> Self {
        EstimateGrid { t_lo: a, t_hi: 21.0 * a, step: 0.1, angles: 8, min_rel: 0.1 }
    }

    pub fn points(&self, log_zeros: &[f64]) -> Vec<LogPolarPoint> {
        let n = ((self.t_hi - self.t_lo) / self.step + 1e-9).floor() as usize;
        let mut out = Vec::new();
        for i in 0..=n {
            let t = self.t_lo + i as f64 * self.step;
            for k in 0..self.angles {
                let p = LogPolarPoint { log_modulus: t, argument: wrap_phase(2.0 * PI * k as f64 / self.angles as f64) };
                let clear = log_zeros
                    .iter()
                    .all(|&l| log_abs_diff(p.log(), Complex64::new(l, 0.0)) - l >= self.min_rel.ln());
                if clear {
                    out.push(p);
                }
            }
        }
        out
    }
}
