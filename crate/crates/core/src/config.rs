//! Effective run settings, with environment overrides for the prime and
//! the seed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::presentations::DEFAULT_MEMORY_CAP;

pub const ENV_PRIME: &str = "HMCM_PRIME";
pub const ENV_SEED: &str = "HMCM_SEED";

pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_N_MAX: usize = 24;
pub const DEFAULT_SLACK: usize = 3;
pub const DEFAULT_TRIES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub prime: u64,
    pub seed: u64,
    pub n_max: usize,
    pub slack: usize,
    pub memory_cap: usize,
    /// Random draws allowed per generic choice.
    pub tries: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime: DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            n_max: DEFAULT_N_MAX,
            slack: DEFAULT_SLACK,
            memory_cap: DEFAULT_MEMORY_CAP,
            tries: DEFAULT_TRIES,
            format: Format::Table,
        }
    }
}

impl RunConfig {
    /// Defaults with `HMCM_PRIME` and `HMCM_SEED` applied when set.
    pub fn from_env() -> Result<Self> {
        let mut c = RunConfig::default();
        c.apply_env(|k| std::env::var(k).ok())?;
        Ok(c)
    }

    pub fn apply_env(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<()> {
        if let Some(v) = get(ENV_PRIME) {
            self.prime = v
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("{ENV_PRIME}='{v}' is not an integer")))?;
        }
        if let Some(v) = get(ENV_SEED) {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("{ENV_SEED}='{v}' is not an integer")))?;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        Field::new(self.prime)?;
        if self.slack == 0 {
            return Err(Error::Input("slack must be at least 1".into()));
        }
        if self.tries == 0 {
            return Err(Error::Input("tries must be at least 1".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        Field::new(self.prime).expect("validated prime")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_overrides() {
        let mut c = RunConfig::default();
        c.apply_env(|k| match k {
            ENV_PRIME => Some("32003".into()),
            ENV_SEED => Some(" 42 ".into()),
            _ => None,
        })
        .unwrap();
        assert_eq!((c.prime, c.seed), (32003, 42));
        let mut bad = RunConfig::default();
        assert!(bad.apply_env(|k| (k == ENV_PRIME).then(|| "100".into())).is_err());
    }
}
