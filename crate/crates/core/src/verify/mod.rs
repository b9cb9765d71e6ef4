//! Reproducible checks of the worked example at level 9, the Bol and ξ
//! correspondences, the Lehmer identity for `Δ`, CM vanishing, the Hecke
//! recursion at a vanishing eigenvalue and 3-adic properties of `m(z)`.
//!
//! Every run returns a [`VerificationReport`] that echoes its parameters.

mod exact;
mod numeric;
mod report;

pub use exact::{verify_cm_vanishing, verify_hecke_recursion, verify_padic, PADIC_SERIES_TERMS};
pub use numeric::{verify_bol_xi, verify_good_example, verify_lehmer_identity};
pub use report::{Check, CheckStatus, VerificationReport};

use crate::numerics::NumericsError;
use crate::poincare::PoincareError;
use crate::qseries::QSeriesError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("truncation insufficient: {0}")]
    InsufficientTruncation(String),
    #[error(transparent)]
    Poincare(#[from] PoincareError),
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
