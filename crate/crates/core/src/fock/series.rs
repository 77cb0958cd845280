use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::LogPolarPoint;
use crate::gauss_space::CoefficientVector;
use crate::numeric::{log_sum_exp, log_sum_exp_c, wrap_phase};
use crate::{Error, GaussianParam, Result};

/// One power-series coefficient as `e^{log_magnitude + i phase}`; an exact zero
/// has `log_magnitude = -∞` (serialized as `null`) and phase 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLogCoefficient", into = "RawLogCoefficient")]
pub struct LogCoefficient {
    log_magnitude: f64,
    phase: f64,
}

#[derive(Serialize, Deserialize)]
struct RawLogCoefficient {
    log_magnitude: Option<f64>,
    phase: f64,
}

impl TryFrom<RawLogCoefficient> for LogCoefficient {
    type Error = Error;
    fn try_from(r: RawLogCoefficient) -> Result<Self> {
        LogCoefficient::new(r.log_magnitude.unwrap_or(f64::NEG_INFINITY), r.phase)
    }
}

impl From<LogCoefficient> for RawLogCoefficient {
    fn from(c: LogCoefficient) -> Self {
        RawLogCoefficient {
            log_magnitude: c.log_magnitude.is_finite().then_some(c.log_magnitude),
            phase: c.phase,
        }
    }
}

impl LogCoefficient {
    pub const ZERO: LogCoefficient = LogCoefficient { log_magnitude: f64::NEG_INFINITY, phase: 0.0 };

    pub fn new(log_magnitude: f64, phase: f64) -> Result<Self> {
        if log_magnitude == f64::NEG_INFINITY {
            return Ok(Self::ZERO);
        }
        if !(log_magnitude.is_finite() && phase.is_finite()) {
            return Err(Error::BadParameter("log coefficient must be finite or -inf".into()));
        }
        Ok(LogCoefficient { log_magnitude, phase: wrap_phase(phase) })
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.norm() == 0.0 {
            Self::ZERO
        } else {
            LogCoefficient { log_magnitude: z.norm().ln(), phase: z.arg() }
        }
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }

    /// Complex logarithm; real part `-∞` for zero.
    pub fn log(&self) -> Complex64 {
        Complex64::new(self.log_magnitude, self.phase)
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            Complex64::default()
        } else {
            Complex64::from_polar(self.log_magnitude.exp(), self.phase)
        }
    }
}

/// `F(w) = Σ_{n=0}^{N} b_n wⁿ` with every `b_n` in log-polar form.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FockSeries {
    pub coeffs: Vec<LogCoefficient>,
}

impl FockSeries {
    pub fn zero() -> Self {
        FockSeries { coeffs: Vec::new() }
    }

    pub fn from_complex(b: &[Complex64]) -> Self {
        FockSeries { coeffs: b.iter().map(|&z| LogCoefficient::from_complex(z)).collect() }
    }

    /// `b wⁿ`.
    pub fn monomial(n: usize, b: Complex64) -> Self {
        let mut coeffs = vec![LogCoefficient::ZERO; n + 1];
        coeffs[n] = LogCoefficient::from_complex(b);
        FockSeries { coeffs }
    }

    /// Highest stored degree, `None` when no coefficients are stored.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LogCoefficient::is_zero)
    }

    /// `log F(w)`; real part `-∞` where `F(w) = 0` to working precision.
    pub fn log_eval(&self, w: LogPolarPoint) -> Complex64 {
        let u = w.log();
        log_sum_exp_c(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .map(|(n, b)| b.log() + u * n as f64),
        )
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::default(), |acc, b| acc * w + b.to_complex())
    }
}

/// `‖F‖² = Σ |b_n|² e^{2a(n+1)²}`, returned as its logarithm.
pub fn fock_norm(series: &FockSeries, a: f64) -> f64 {
    log_sum_exp(
        series
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(n, b)| 2.0 * b.log_magnitude + 2.0 * a * ((n + 1) * (n + 1)) as f64),
    )
}

/// `(F₋, c₀, F₊)` with `f = f₋ + c₀ e^{-cz²} + f₊`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockDecomposition {
    pub minus: FockSeries,
    pub c0: Complex64,
    pub plus: FockSeries,
}

impl FockDecomposition {
    /// `log(‖F₋‖² + |c₀|² + ‖F₊‖²)`.
    pub fn log_norm_sq(&self, a: f64) -> f64 {
        let c0 = if self.c0.norm() == 0.0 { f64::NEG_INFINITY } else { 2.0 * self.c0.norm().ln() };
        log_sum_exp([fock_norm(&self.minus, a), c0, fock_norm(&self.plus, a)])
    }
}

/// Degree `n-1` coefficient of `F₊` is `c_n e^{-cn²}`, of `F₋` is `c_{-n} e^{-cn²}`.
pub fn to_fock(param: GaussianParam, coeffs: &CoefficientVector) -> FockDecomposition {
    let (a, b) = (param.a(), param.b());
    let side = |sign: i64| {
        let hi = if sign > 0 { coeffs.range().hi } else { -coeffs.range().lo };
        let coeffs = (1..=hi.max(0))
            .map(|n| {
                let c = coeffs.get(sign * n);
                if c.norm() == 0.0 {
                    return LogCoefficient::ZERO;
                }
                let n2 = (n * n) as f64;
                LogCoefficient::new(c.norm().ln() - a * n2, c.arg() - b * n2).expect("finite")
            })
            .collect();
        FockSeries { coeffs }
    };
    FockDecomposition { minus: side(-1), c0: coeffs.get(0), plus: side(1) }
}
