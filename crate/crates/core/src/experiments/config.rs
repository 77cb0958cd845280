use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::gauss_space::Orientation;
use crate::lattice::SequenceSpec;
use crate::{Error, GaussianParam, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Classify,
    FrameboundSweep,
    CriticalHalf,
    KadetsSweep,
    DensityDemo,
    KernelAsymptotic,
    G0Estimate,
    FockConsistency,
    SignRetrieval,
}

impl Scenario {
    pub const ALL: [Scenario; 9] = [
        Scenario::Classify,
        Scenario::FrameboundSweep,
        Scenario::CriticalHalf,
        Scenario::KadetsSweep,
        Scenario::DensityDemo,
        Scenario::KernelAsymptotic,
        Scenario::G0Estimate,
        Scenario::FockConsistency,
        Scenario::SignRetrieval,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Classify => "classify",
            Scenario::FrameboundSweep => "framebound-sweep",
            Scenario::CriticalHalf => "critical-half",
            Scenario::KadetsSweep => "kadets-sweep",
            Scenario::DensityDemo => "density-demo",
            Scenario::KernelAsymptotic => "kernel-asymptotic",
            Scenario::G0Estimate => "g0-estimate",
            Scenario::FockConsistency => "fock-consistency",
            Scenario::SignRetrieval => "sign-retrieval",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Column truncation for collocation matrices.
    pub truncation: f64,
    /// Strictness margin of the classifiers.
    pub margin: f64,
    /// Allowed relative change of `σ_min` between the last two sizes.
    pub variation: f64,
    /// Largest allowed `σ_min(2M) / σ_min(M)` for a non-sampling sequence.
    pub halving: f64,
    pub identity: f64,
    pub isometry: f64,
    pub quadrature: f64,
    /// Largest allowed `max / min` of the kernel ratio.
    pub kernel_spread: f64,
    /// Projection residual for accepting a sign pattern.
    pub sign_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            truncation: 1e-16,
            margin: 1e-9,
            variation: 0.1,
            halving: 0.5,
            identity: 1e-9,
            isometry: 1e-12,
            quadrature: 1e-6,
            kernel_spread: 10.0,
            sign_residual: 1e-8,
        }
    }
}

fn default_sizes() -> Vec<i64> {
    vec![16, 32, 64]
}

fn default_param() -> GaussianParam {
    GaussianParam::real(1.0).expect("valid")
}

fn default_fraction() -> f64 {
    2.0 / 3.0
}

/// One scenario run. Only `scenario` and `seed` are required; every other
/// field has a default suited to the scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub seed: u64,
    #[serde(default = "default_param")]
    pub param: GaussianParam,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceSpec>,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<i64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Declared classifier outcome, checked by `classify` and `framebound-sweep`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_pass: Option<bool>,
    #[serde(default)]
    pub orientation: Orientation,
    #[serde(default = "default_fraction")]
    pub interior_fraction: f64,
    /// Constant shifts for `kadets-sweep`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    /// Slopes for `density-demo`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    /// Window lengths for density sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_values: Option<Vec<f64>>,
    /// `[t_min, t_max, step]` of `log|w|` for `kernel-asymptotic`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_modulus_range: Option<[f64; 3]>,
    /// Accepted `[lo, hi]` for the `g0-estimate` ratio.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Node window length for `sign-retrieval`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    /// Coefficients per trial for `sign-retrieval`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<usize>,
    /// Largest `|δ|` of random perturbations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_max: Option<f64>,
}

impl ScenarioConfig {
    /// Defaults for every optional field.
    pub fn new(scenario: Scenario, seed: u64) -> Self {
        ScenarioConfig {
            scenario,
            seed,
            param: default_param(),
            sequence: None,
            sizes: default_sizes(),
            tolerances: Tolerances::default(),
            output_dir: None,
            expect_pass: None,
            orientation: Orientation::Frame,
            interior_fraction: default_fraction(),
            deltas: None,
            alphas: None,
            r_values: None,
            log_modulus_range: None,
            bracket: None,
            trials: None,
            window: None,
            coefficients: None,
            delta_max: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: ScenarioConfig = serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        let all = [
            t.truncation,
            t.margin,
            t.variation,
            t.halving,
            t.identity,
            t.isometry,
            t.quadrature,
            t.kernel_spread,
            t.sign_residual,
        ];
        if all.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::ConfigInvalid("tolerances must be positive".into()));
        }
        if t.truncation >= 1.0 {
            return Err(Error::ConfigInvalid("truncation tolerance must be < 1".into()));
        }
        if self.sizes.is_empty() || self.sizes[0] < 1 || self.sizes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::ConfigInvalid("sizes must be positive and strictly increasing".into()));
        }
        if !(self.interior_fraction > 0.0 && self.interior_fraction <= 1.0) {
            return Err(Error::ConfigInvalid("interior_fraction must lie in (0, 1]".into()));
        }
        if let Some([lo, hi, step]) = self.log_modulus_range {
            if !(lo < hi && step > 0.0) {
                return Err(Error::ConfigInvalid("log_modulus_range must be [lo < hi, step > 0]".into()));
            }
        }
        if let Some([lo, hi]) = self.bracket {
            if !(lo > 0.0 && lo < hi) {
                return Err(Error::ConfigInvalid("bracket must satisfy 0 < lo < hi".into()));
            }
        }
        if self.trials == Some(0) {
            return Err(Error::ConfigInvalid("trials must be ≥ 1".into()));
        }
        if let Some(d) = self.delta_max {
            if !(d >= 0.0) {
                return Err(Error::ConfigInvalid("delta_max must be ≥ 0".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_is_mandatory() {
        let e = ScenarioConfig::from_json(r#"{"scenario": "classify"}"#).unwrap_err();
        assert!(matches!(e, Error::ConfigInvalid(ref m) if m.contains("seed")));
    }

    #[test]
    fn minimal_config() {
        let c = ScenarioConfig::from_json(r#"{"scenario": "kadets-sweep", "seed": 3}"#).unwrap();
        assert_eq!(c.sizes, vec![16, 32, 64]);
        assert_eq!(c.tolerances, Tolerances::default());
        assert_eq!(c, ScenarioConfig::new(Scenario::KadetsSweep, 3));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ScenarioConfig::from_json(r#"{"scenario": "nope", "seed": 1}"#).is_err());
        assert!(ScenarioConfig::from_json(r#"{"scenario": "classify", "seed": 1, "sizes": [4, 2]}"#).is_err());
        assert!(ScenarioConfig::from_json(
            r#"{"scenario": "classify", "seed": 1, "tolerances": {"margin": -1}}"#
        )
        .is_err());
        assert!(ScenarioConfig::from_json(r#"{"scenario": "classify", "seed": 1, "param": {"a": 0}}"#).is_err());
        assert!(ScenarioConfig::from_json(r#"{"scenario": "classify", "seed": 1, "typo": 0}"#).is_err());
    }

    #[test]
    fn names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert!(matches!("bogus".parse::<Scenario>(), Err(Error::UnknownScenario(_))));
    }
}
