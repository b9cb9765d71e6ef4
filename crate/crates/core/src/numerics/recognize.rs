use num_bigint::BigInt;
use num_rational::BigRational;

use super::ball::BallReal;
use super::float::Float;
use super::mag::Mag;

/// Numerator `p` such that `p / d` is the unique fraction with denominator
/// `d` inside the ball, or `None` when the ball is too wide to decide.
///
/// The fraction is kept unreduced; see [`recognize_rational`] for the reduced form.
pub fn recognize_numerator(x: &BallReal, d: u64) -> Option<BigInt> {
    assert!(d > 0, "denominator must be positive");
    let rad_d = x.radius().mul(Mag::from_f64(d as f64));
    if !(rad_d < Mag::from_f64(0.5)) {
        return None;
    }
    let scaled = x.midpoint().mul_exact(&Float::from_i64(d as i64));
    let p = scaled.round_to_integer();
    // exact test of |mid - p/d| <= rad
    let cand = BigRational::new(p.clone(), BigInt::from(d));
    if x.contains_rational(&cand) {
        Some(p)
    } else {
        None
    }
}

/// `p / D` with `p = round(mid * D)` when `rad * D < 1/2` and the fraction lies in the ball.
pub fn recognize_rational(x: &BallReal, d: u64) -> Option<BigRational> {
    recognize_numerator(x, d).map(|p| BigRational::new(p, BigInt::from(d)))
}
