//! Run configuration and its validation.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Povm,
    GnsModular,
    Oscillator,
    Relativistic,
    Weyl,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 5] =
        [Suite::Povm, Suite::GnsModular, Suite::Oscillator, Suite::Relativistic, Suite::Weyl];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Povm => "povm",
            Suite::GnsModular => "gns-modular",
            Suite::Oscillator => "oscillator",
            Suite::Relativistic => "relativistic",
            Suite::Weyl => "weyl",
            Suite::All => "all",
        }
    }

    /// The module suites this selector expands to.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::MODULES.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sizes left as `None` fall back to each suite's defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Oscillator truncation and modular-carrier dimension.
    pub d: Option<usize>,
    /// Relativistic grid size.
    pub n: Option<usize>,
    /// Mellin lattice size.
    pub m: Option<usize>,
    pub betas: Vec<f64>,
    pub seed: u64,
    /// Replaces every upper-bound tolerance; lower bounds keep their own.
    pub tol: Option<f64>,
    /// Keep only cases whose id starts with this prefix.
    pub only: Option<String>,
}

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_BETAS: [f64; 2] = [0.5, 1.0];

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            d: None,
            n: None,
            m: None,
            betas: DEFAULT_BETAS.to_vec(),
            seed: DEFAULT_SEED,
            tol: None,
            only: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

impl SuiteConfig {
    pub fn for_suite(suite: Suite) -> Self {
        SuiteConfig { suite, ..SuiteConfig::default() }
    }

    /// Rejects values no suite can interpret. Sizes that are merely too
    /// large for a module are left to the guards, which skip cases instead.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.betas.is_empty() {
            return Err(bad("at least one β is required"));
        }
        if let Some(b) = self.betas.iter().find(|b| !b.is_finite() || **b < 0.0) {
            return Err(bad(format!("β must be finite and ≥ 0, got {b}")));
        }
        if let Some(t) = self.tol {
            if !t.is_finite() || t <= 0.0 {
                return Err(bad(format!("tolerance must be positive, got {t}")));
            }
        }
        if let Some(d) = self.d {
            if d < 2 {
                return Err(bad(format!("d must be ≥ 2, got {d}")));
            }
        }
        for (name, v) in [("n", self.n), ("m", self.m)] {
            if let Some(v) = v {
                if v < 8 || v % 2 != 0 {
                    return Err(bad(format!("{name} must be even and ≥ 8, got {v}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let with = |f: fn(&mut SuiteConfig)| {
            let mut c = SuiteConfig::default();
            f(&mut c);
            c.validate()
        };
        assert!(with(|c| c.betas.clear()).is_err());
        assert!(with(|c| c.betas = vec![-1.0]).is_err());
        assert!(with(|c| c.tol = Some(0.0)).is_err());
        assert!(with(|c| c.d = Some(1)).is_err());
        assert!(with(|c| c.n = Some(9)).is_err());
        assert!(with(|c| c.m = Some(4)).is_err());
        assert!(with(|c| c.d = Some(500)).is_ok());
    }

    #[test]
    fn expansion() {
        assert_eq!(Suite::All.expand().len(), 5);
        assert_eq!(Suite::Weyl.expand(), vec![Suite::Weyl]);
        assert_eq!(Suite::GnsModular.to_string(), "gns-modular");
    }
}
