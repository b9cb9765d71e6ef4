//! Fourier coefficients of the Poincaré series `P(m,k,N)`, `P(-m,k,N)` and the
//! Maass–Poincaré series `Q(-m,k,N)` on `Γ_0(N)`, as certified balls.
//!
//! Each coefficient is a sum over `c ≡ 0 (mod N)` of Kloosterman sums times
//! Bessel values. The sum is cut at `c_max`; the radius of the result covers
//! the omitted tail (for `k >= 4`) on top of the arithmetic error.

mod coeffs;
mod expansion;
mod table;

use std::fmt;

pub use coeffs::{
    cusp_poincare_coeff, cusp_poincare_full_coeff, maass_poincare_holo_coeff, maass_poincare_nonholo_coeff,
    resolve_c_max, tail_bound, weakly_holo_poincare_coeff, Coefficient,
};
pub use expansion::{
    assemble_q, bol_operator, eval_expansion, regularized_pairing_rhs, xi_operator, CuspConstantData,
    HarmonicExpansion,
};
pub use table::CoefficientTable;

use crate::numerics::{NumericsError, PrecisionConfig};

/// `(m, k, N)` with `k` even, `k >= 2`, `m, N >= 1`; trivial character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PoincareParams {
    pub m: u64,
    pub k: u32,
    pub level: u64,
}

impl PoincareParams {
    pub fn new(m: u64, k: u32, level: u64) -> Result<PoincareParams, PoincareError> {
        if m == 0 {
            return Err(PoincareError::InvalidParams("m must be positive".into()));
        }
        if k < 2 || k % 2 == 1 {
            return Err(PoincareError::InvalidParams(format!("k must be even and at least 2, got {k}")));
        }
        if level == 0 {
            return Err(PoincareError::InvalidParams("level must be positive".into()));
        }
        Ok(PoincareParams { m, k, level })
    }

    /// Weight of the Maass–Poincaré series, `2 - k`.
    pub fn harmonic_weight(&self) -> i64 {
        2 - self.k as i64
    }
}

/// Where to cut the `c`-sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CMax {
    /// Sum over `c <= C`.
    Fixed(u64),
    /// Smallest `C` whose certified tail is below the given bound.
    Auto(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPolicy {
    pub c_max: CMax,
    pub prec: PrecisionConfig,
}

impl TruncationPolicy {
    pub fn fixed(c_max: u64, bits: u32) -> TruncationPolicy {
        TruncationPolicy { c_max: CMax::Fixed(c_max), prec: PrecisionConfig::with_bits(bits) }
    }

    pub fn auto(target_tail: f64, bits: u32) -> TruncationPolicy {
        TruncationPolicy { c_max: CMax::Auto(target_tail), prec: PrecisionConfig::with_bits(bits) }
    }

    pub fn bits(&self) -> u32 {
        self.prec.working_bits
    }
}

impl fmt::Display for TruncationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.c_max {
            CMax::Fixed(c) => write!(f, "c_max={c} bits={}", self.prec.working_bits),
            CMax::Auto(t) => write!(f, "c_max=auto({t:e}) bits={}", self.prec.working_bits),
        }
    }
}

/// Which family a coefficient belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientKind {
    Cusp,
    Weak,
    MaassHolo,
    MaassNonholo,
}

impl CoefficientKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoefficientKind::Cusp => "cusp",
            CoefficientKind::Weak => "weak",
            CoefficientKind::MaassHolo => "maass-holo",
            CoefficientKind::MaassNonholo => "maass-nonholo",
        }
    }

    pub fn parse(s: &str) -> Option<CoefficientKind> {
        match s {
            "cusp" => Some(CoefficientKind::Cusp),
            "weak" => Some(CoefficientKind::Weak),
            "maass-holo" => Some(CoefficientKind::MaassHolo),
            "maass-nonholo" => Some(CoefficientKind::MaassNonholo),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PoincareError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no certified tail bound for weight k = {0}")]
    Uncertified(u32),
    #[error("automatic truncation needs more than {cap} terms to reach tail {target:e}")]
    CapExceeded { cap: u64, target: f64 },
    #[error("weight mismatch: expansion has weight {found}, expected {expected}")]
    WeightMismatch { expected: i64, found: i64 },
    #[error("evaluation point must have positive imaginary part")]
    NonPositiveY,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
