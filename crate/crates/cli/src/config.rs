use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Result};
use maass_core::numerics::PrecisionConfig;
use maass_core::poincare::{CMax, TruncationPolicy};

/// Default cutoff is this many multiples of the level.
pub const DEFAULT_C_TERMS: u64 = 150;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CMaxArg {
    Fixed(u64),
    Auto,
}

impl FromStr for CMaxArg {
    type Err = String;

    fn from_str(s: &str) -> Result<CMaxArg, String> {
        if s == "auto" {
            return Ok(CMaxArg::Auto);
        }
        s.parse().map(CMaxArg::Fixed).map_err(|_| format!("expected an integer or `auto`, got `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threads {
    Fixed(usize),
    Auto,
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Threads, String> {
        match s {
            "auto" => Ok(Threads::Auto),
            _ => match s.parse() {
                Ok(0) | Err(_) => Err(format!("expected a positive integer or `auto`, got `{s}`")),
                Ok(n) => Ok(Threads::Fixed(n)),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub precision: PrecisionConfig,
    pub c_max: Option<CMaxArg>,
    pub cache_dir: PathBuf,
    pub threads: Threads,
}

impl CliConfig {
    pub fn new(
        precision_bits: u32,
        target_abs_error: f64,
        c_max: Option<CMaxArg>,
        cache_dir: PathBuf,
        threads: Threads,
    ) -> Result<CliConfig> {
        if precision_bits < 53 {
            bail!("--precision-bits must be at least 53, got {precision_bits}");
        }
        let precision = PrecisionConfig::new(precision_bits, target_abs_error)?;
        Ok(CliConfig { precision, c_max, cache_dir, threads })
    }

    /// Truncation for level `level`: explicit cutoffs must be at least `level`.
    pub fn policy(&self, level: u64) -> Result<TruncationPolicy> {
        let c_max = match self.c_max {
            None => CMax::Fixed(DEFAULT_C_TERMS * level),
            Some(CMaxArg::Fixed(c)) if c < level => bail!("--c-max {c} is below the level {level}"),
            Some(CMaxArg::Fixed(c)) => CMax::Fixed(c),
            Some(CMaxArg::Auto) => CMax::Auto(self.precision.target_abs_error),
        };
        Ok(TruncationPolicy { c_max, prec: self.precision })
    }

    pub fn install_thread_pool(&self) -> Result<()> {
        if let Threads::Fixed(n) = self.threads {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
        }
        Ok(())
    }
}

impl fmt::Display for CliConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bits={} target={:e} cache={}", self.precision.working_bits, self.precision.target_abs_error, self.cache_dir.display())
    }
}
