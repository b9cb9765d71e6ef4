//! Exact q-expansions: series arithmetic, eta quotients, Eisenstein series,
//! Faber polynomials of `j`, and Hecke/U/V/twist operators.

pub mod eta;
pub mod modular;
pub mod operators;
pub mod padic;
pub mod series;

pub use eta::{delta, eta_quotient, g_series, m_series, EtaQuotientSpec};
pub use modular::{bernoulli_12, eisenstein, faber_family, faber_jm, j_invariant, lehmer_ab, sigma_power};
pub use operators::{hecke_tp, kronecker_symbol, twist, u_operator, v_operator, DirichletCharacterSpec};
pub use padic::{a_invariant, padic_valuation_stats};
pub use series::{format_rational, parse_rational, LaurentQSeries};

/// Exact rational coefficient.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QSeriesError {
    #[error("coefficient of q^{exponent} is unknown (series known below q^{trunc})")]
    Unknown { exponent: i64, trunc: i64 },
    #[error("series is not invertible (zero leading coefficient)")]
    NotInvertible,
    #[error("invalid eta quotient: {0}")]
    InvalidEta(String),
    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("coefficient of q^{exponent} is not integral after scaling")]
    NonIntegral { exponent: i64 },
    #[error("malformed series: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
