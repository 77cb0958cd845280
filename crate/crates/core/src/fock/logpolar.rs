use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numeric::wrap_phase;
use crate::{Error, GaussianParam, Result};

/// Nonzero complex `w = e^{log_modulus} e^{i argument}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogPolarPoint {
    pub log_modulus: f64,
    pub argument: f64,
}

impl LogPolarPoint {
    /// Argument is reduced to `(-π, π]`.
    pub fn new(log_modulus: f64, argument: f64) -> Result<Self> {
        if !(log_modulus.is_finite() && argument.is_finite()) {
            return Err(Error::BadParameter("log-polar fields must be finite".into()));
        }
        Ok(LogPolarPoint { log_modulus, argument: wrap_phase(argument) })
    }

    pub fn from_complex(w: Complex64) -> Result<Self> {
        if w.norm() == 0.0 {
            return Err(Error::BadParameter("w = 0 has no log-polar form".into()));
        }
        Self::new(w.norm().ln(), w.arg())
    }

    /// Principal `log w`.
    pub fn log(&self) -> Complex64 {
        Complex64::new(self.log_modulus, self.argument)
    }

    /// Overflows for large `log_modulus`.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.log_modulus.exp(), self.argument)
    }

    pub fn rotate(&self, theta: f64) -> Self {
        LogPolarPoint { log_modulus: self.log_modulus, argument: wrap_phase(self.argument + theta) }
    }
}

/// `w = e^{2cλ}`: log-modulus `2aλ`, argument `2bλ` reduced mod `2π`.
pub fn node_transform(param: GaussianParam, lambda: f64) -> LogPolarPoint {
    LogPolarPoint { log_modulus: 2.0 * param.a() * lambda, argument: wrap_phase(2.0 * param.b() * lambda) }
}

/// `φ(w) = (log|w|)² / 4a`.
pub fn phi(a: f64, p: LogPolarPoint) -> f64 {
    p.log_modulus * p.log_modulus / (4.0 * a)
}
