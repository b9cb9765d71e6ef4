//! Ball arithmetic on arbitrary-precision dyadic midpoints, plus the special
//! functions used by the coefficient formulas.

pub mod ball;
pub mod bessel;
pub mod decimal;
pub mod elementary;
pub mod float;
pub mod gamma;
pub mod mag;
pub mod recognize;

pub use ball::BallReal;
pub use bessel::{bessel_i, bessel_j};
pub use decimal::parse_ball;
pub use elementary::{cos, cos_sin, exp, pi, sin};
pub use float::Float;
pub use gamma::incomplete_gamma_int;
pub use mag::Mag;
pub use recognize::{recognize_numerator, recognize_rational};

/// Working precision used when nothing else is configured.
pub const DEFAULT_BITS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericsError {
    #[error("division by a ball containing zero")]
    DivisionByZeroBall,
    #[error("square root of a ball that is not nonnegative")]
    NegativeSqrt,
    #[error("argument ball is not contained in [0, inf)")]
    NegativeArgument,
    #[error("invalid order or parameter {0}")]
    InvalidOrder(i64),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    pub working_bits: u32,
    pub target_abs_error: f64,
}

impl PrecisionConfig {
    pub fn new(working_bits: u32, target_abs_error: f64) -> Result<PrecisionConfig, NumericsError> {
        if working_bits < 53 {
            return Err(NumericsError::InvalidOrder(working_bits as i64));
        }
        if !(target_abs_error > 0.0 && target_abs_error.is_finite()) {
            return Err(NumericsError::Parse(format!("target error must be positive, got {target_abs_error}")));
        }
        Ok(PrecisionConfig { working_bits, target_abs_error })
    }

    pub fn with_bits(working_bits: u32) -> PrecisionConfig {
        PrecisionConfig { working_bits: working_bits.max(53), ..PrecisionConfig::default() }
    }
}

impl Default for PrecisionConfig {
    fn default() -> PrecisionConfig {
        PrecisionConfig { working_bits: DEFAULT_BITS, target_abs_error: 2f64.powi(-64) }
    }
}
