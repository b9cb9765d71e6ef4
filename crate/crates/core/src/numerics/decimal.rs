//! Decimal text form of balls: `<midpoint> +- <radius>`.
//!
//! The midpoint carries enough digits to round-trip the working precision;
//! the decimal rounding error is folded into the printed radius, so parsing
//! the text back yields a ball containing the original one.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::ball::BallReal;
use super::float::Float;
use super::mag::Mag;
use super::NumericsError;

const RADIUS_DIGITS: usize = 4;

fn pow10(n: u64) -> BigInt {
    num_traits::pow(BigInt::from(10), n as usize)
}

#[derive(Clone, Copy, PartialEq)]
enum Rounding {
    Nearest,
    Up,
}

/// Scientific notation for `mant * 2^exp` with `digits` significant digits.
/// Returns the text and an upper bound on the conversion error.
fn dyadic_to_decimal(x: &Float, digits: usize, mode: Rounding) -> (String, Mag) {
    if x.is_zero() {
        return ("0".to_string(), Mag::ZERO);
    }
    let (num, den) = x.to_ratio();
    let neg = num.is_negative();
    let num = num.abs();
    // estimate decimal exponent from the binary one
    let e10_est = ((x.top_exp() as f64 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
    let mut e10 = e10_est;
    let lo = pow10(digits as u64 - 1);
    let hi = pow10(digits as u64);
    let (mut q, r, scale_den) = loop {
        let shift = digits as i64 - 1 - e10;
        let (sn, sd) = if shift >= 0 {
            (&num * pow10(shift as u64), den.clone())
        } else {
            (num.clone(), &den * pow10((-shift) as u64))
        };
        let (q, r) = sn.div_rem(&sd);
        if q >= hi {
            e10 += 1;
        } else if q < lo {
            e10 -= 1;
        } else {
            break (q, r, sd);
        }
    };
    let inexact = !r.is_zero();
    if inexact {
        match mode {
            Rounding::Up => q += 1,
            Rounding::Nearest => {
                if &r * 2 >= scale_den {
                    q += 1
                }
            }
        }
    }
    let mut digits_str = q.to_string();
    if digits_str.len() > digits {
        // carry into a new digit
        digits_str.truncate(digits);
        e10 += 1;
    }
    let shift = digits as i64 - 1 - e10;
    let err = if inexact {
        // one unit in the last place, as an upper bound
        Mag::from_f64(1.0).mul(pow10_mag(-shift))
    } else {
        Mag::ZERO
    };
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&digits_str[..1]);
    let rest = digits_str[1..].trim_end_matches('0');
    if !rest.is_empty() {
        s.push('.');
        s.push_str(rest);
    }
    if e10 != 0 {
        s.push_str(&format!("e{e10}"));
    }
    (s, err)
}

/// Upper bound on `10^e`.
fn pow10_mag(e: i64) -> Mag {
    let ten = Mag::from_f64(10.0);
    let mut acc = Mag::from_f64(1.0);
    let mut base = if e >= 0 { ten } else { Mag::from_f64(1.0).div(ten) };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(base);
        }
        base = base.mul(base);
        k >>= 1;
    }
    acc
}

pub(crate) fn format_ball(b: &BallReal) -> String {
    let digits = ((b.prec() as f64) * std::f64::consts::LOG10_2).ceil() as usize + 2;
    let (mid, err) = dyadic_to_decimal(b.midpoint(), digits, Rounding::Nearest);
    let rad = b.radius().add(err);
    let (rad_s, _) = dyadic_to_decimal(&Float::from_mag(rad), RADIUS_DIGITS, Rounding::Up);
    format!("{mid} +- {rad_s}")
}

/// Parses a decimal literal `[-]ddd[.ddd][e[-]dd]` into an exact fraction `n / 10^k` or `n * 10^k`.
fn parse_decimal(s: &str) -> Result<(BigInt, i64), NumericsError> {
    let bad = || NumericsError::Parse(format!("malformed decimal `{s}`"));
    let s = s.trim();
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n: BigInt = digits.parse().map_err(|_| bad())?;
    if neg {
        n = -n;
    }
    Ok((n, exp - frac_part.len() as i64))
}

/// Ball containing the exact decimal `n * 10^e`, with midpoint at `prec` bits.
fn decimal_to_ball(n: BigInt, e: i64, prec: u32) -> BallReal {
    if e >= 0 {
        BallReal::new(Float::from_bigint(n * pow10(e as u64)), Mag::ZERO, prec)
    } else {
        let (mid, err) = Float::from_bigint(n).div_round(&Float::from_bigint(pow10((-e) as u64)), prec);
        BallReal::new(mid, err, prec)
    }
}

/// Parses `<midpoint> +- <radius>` (or a bare midpoint) at `prec` bits.
pub fn parse_ball(s: &str, prec: u32) -> Result<BallReal, NumericsError> {
    let (mid_s, rad_s) = match s.split_once("+-") {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let (n, e) = parse_decimal(mid_s)?;
    let mut ball = decimal_to_ball(n, e, prec);
    if let Some(r) = rad_s {
        let (rn, re) = parse_decimal(r)?;
        if rn.sign() == Sign::Minus {
            return Err(NumericsError::Parse(format!("negative radius `{}`", r.trim())));
        }
        let rb = decimal_to_ball(rn, re, 64);
        ball = ball.add_error(rb.abs_upper());
    }
    Ok(ball)
}

impl std::str::FromStr for BallReal {
    type Err = NumericsError;
    fn from_str(s: &str) -> Result<BallReal, NumericsError> {
        let digits = s.split_once("+-").map_or(s, |(a, _)| a).trim().trim_start_matches('-');
        let sig = digits.split(['e', 'E']).next().unwrap_or("").chars().filter(|c| c.is_ascii_digit()).count();
        let prec = ((sig as f64 / std::f64::consts::LOG10_2).ceil() as u32 + 8).max(super::DEFAULT_BITS);
        parse_ball(s, prec)
    }
}
