use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Gaussian parameter `c = a + ib` with `a > 0`.
///
/// The same `a` sets the decay of the generator `e^{-c x²}` and the weight of
/// the small Fock space `𝓕_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParam", into = "RawParam")]
pub struct GaussianParam {
    a: f64,
    b: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParam {
    a: f64,
    #[serde(default)]
    b: f64,
}

impl TryFrom<RawParam> for GaussianParam {
    type Error = Error;

    fn try_from(raw: RawParam) -> Result<Self> {
        GaussianParam::new(raw.a, raw.b)
    }
}

impl From<GaussianParam> for RawParam {
    fn from(p: GaussianParam) -> Self {
        RawParam { a: p.a, b: p.b }
    }
}

impl GaussianParam {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::BadParameter(format!("a must be finite and > 0, got {a}")));
        }
        if !b.is_finite() {
            return Err(Error::BadParameter(format!("b must be finite, got {b}")));
        }
        Ok(GaussianParam { a, b })
    }

    /// Real Gaussian `e^{-a x²}`.
    pub fn real(a: f64) -> Result<Self> {
        Self::new(a, 0.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    /// `e^{-c t²}` for real `t`.
    #[inline]
    pub fn atom(&self, t: f64) -> Complex64 {
        let t2 = t * t;
        Complex64::from_polar((-self.a * t2).exp(), -self.b * t2)
    }
}
