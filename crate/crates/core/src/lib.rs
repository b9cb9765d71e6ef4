//! Fourier coefficients of Poincaré series and harmonic weak Maass forms,
//! with exact q-series and certified ball arithmetic.

pub mod arith;
pub mod kloosterman;
pub mod numerics;
pub mod poincare;
pub mod qseries;
pub mod verify;
