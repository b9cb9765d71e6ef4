//! Congruence statistics of integral coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LaurentQSeries, QSeriesError, Rational};
use crate::arith::valuation;

/// `#{1 <= n <= x : D·c(n) ≢ 0 (mod p^b)} / x`, where `D` is `denominator`
/// (default 1) and every `D·c(n)` must be an integer.
pub fn padic_valuation_stats(
    f: &LaurentQSeries,
    p: u64,
    b: u32,
    x: u64,
    denominator: Option<&BigInt>,
) -> Result<Rational, QSeriesError> {
    if x == 0 {
        return Err(QSeriesError::InsufficientTruncation("X must be positive".into()));
    }
    if f.trunc_order() <= x as i64 {
        return Err(QSeriesError::Unknown { exponent: x as i64, trunc: f.trunc_order() });
    }
    let scale = Rational::from_integer(denominator.cloned().unwrap_or_else(BigInt::one));
    let modulus = BigInt::from(p).pow(b);
    let mut count = 0u64;
    for n in 1..=x as i64 {
        let c = f.get(n).expect("below trunc") * &scale;
        if !c.is_integer() {
            return Err(QSeriesError::NonIntegral { exponent: n });
        }
        if !c.to_integer().mod_floor(&modulus).is_zero() {
            count += 1;
        }
    }
    Ok(Rational::new(count.into(), x.into()))
}

/// Smallest `a >= 0` with `c(p^a n) = 0` for every `n < 0`.
pub fn a_invariant(f: &LaurentQSeries, p: u64) -> u32 {
    f.nonzero_terms()
        .take_while(|(n, _)| *n < 0)
        .map(|(n, _)| valuation(n, p) + 1)
        .max()
        .unwrap_or(0)
}
