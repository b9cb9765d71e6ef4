//! Midpoint-radius real balls.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::float::Float;
use super::mag::Mag;
use super::NumericsError;

/// A real number known to lie in `[mid - rad, mid + rad]`.
///
/// `prec` is the number of mantissa bits midpoints are rounded to; binary
/// operations work at the larger precision of their operands.
#[derive(Clone, Debug, PartialEq)]
pub struct BallReal {
    mid: Float,
    rad: Mag,
    prec: u32,
}

impl BallReal {
    pub fn new(mid: Float, rad: Mag, prec: u32) -> BallReal {
        let (mid, err) = mid.round(prec);
        BallReal { mid, rad: rad.add(err), prec }
    }

    pub fn zero(prec: u32) -> BallReal {
        BallReal { mid: Float::zero(), rad: Mag::ZERO, prec }
    }

    pub fn one(prec: u32) -> BallReal {
        BallReal::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> BallReal {
        BallReal::new(Float::from_i64(v), Mag::ZERO, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> BallReal {
        BallReal::new(Float::from_bigint(v.clone()), Mag::ZERO, prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> BallReal {
        BallReal::new(Float::from_f64(v), Mag::ZERO, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> BallReal {
        let num = Float::from_bigint(q.numer().clone());
        let den = Float::from_bigint(q.denom().clone());
        let (mid, err) = num.div_round(&den, prec);
        BallReal { mid, rad: err, prec }
    }

    /// Ball `mid ± rad` built from doubles; the midpoint is exact.
    pub fn with_radius(mid: f64, rad: f64, prec: u32) -> BallReal {
        BallReal::new(Float::from_f64(mid), Mag::from_f64(rad), prec)
    }

    pub fn midpoint(&self) -> &Float {
        &self.mid
    }

    pub fn radius(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Same ball, midpoint re-rounded to `prec` bits.
    pub fn set_prec(&self, prec: u32) -> BallReal {
        BallReal::new(self.mid.clone(), self.rad, prec)
    }

    /// Adds `extra` to the radius.
    pub fn add_error(&self, extra: Mag) -> BallReal {
        BallReal { mid: self.mid.clone(), rad: self.rad.add(extra), prec: self.prec }
    }

    /// Upper bound on every `|x|` in the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid.mag_upper().add(self.rad)
    }

    /// Lower bound on every `|x|` in the ball (zero if the ball straddles 0).
    pub fn abs_lower(&self) -> Mag {
        self.mid.mag_lower().sub_lower(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.mag_lower() <= self.rad && Float::from_mag(self.rad) >= self.mid.abs()
    }

    /// True when every point of the ball is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        !self.mid.is_negative() && Float::from_mag(self.rad) <= self.mid
    }

    /// True when every point of the ball is `> 0`.
    pub fn is_positive(&self) -> bool {
        !self.mid.is_negative() && Float::from_mag(self.rad) < self.mid
    }

    /// Exact test `|mid - q| <= rad`.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let (mn, md) = self.mid.to_ratio();
        let mid = BigRational::new(mn, md);
        let (rn, rd) = Float::from_mag(self.rad).to_ratio();
        let rad = BigRational::new(rn, rd);
        (mid - q).abs() <= rad
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        let d = self.mid.add_exact(&Float::from_f64(x).neg()).abs();
        d <= Float::from_mag(self.rad)
    }

    /// Exact test that the two balls intersect.
    pub fn overlaps(&self, o: &BallReal) -> bool {
        let d = self.mid.add_exact(&o.mid.neg()).abs();
        d <= Float::from_mag(self.rad).add_exact(&Float::from_mag(o.rad))
    }

    /// True when every point of `o` lies in `self`.
    pub fn contains_ball(&self, o: &BallReal) -> bool {
        let d = self.mid.add_exact(&o.mid.neg()).abs();
        d.add_exact(&Float::from_mag(o.rad)) <= Float::from_mag(self.rad)
    }

    fn wp(&self, o: &BallReal) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &BallReal) -> BallReal {
        let prec = self.wp(o);
        let (mid, err) = self.mid.add_round(&o.mid, prec);
        BallReal { mid, rad: self.rad.add(o.rad).add(err), prec }
    }

    pub fn sub(&self, o: &BallReal) -> BallReal {
        let prec = self.wp(o);
        let (mid, err) = self.mid.sub_round(&o.mid, prec);
        BallReal { mid, rad: self.rad.add(o.rad).add(err), prec }
    }

    pub fn neg(&self) -> BallReal {
        BallReal { mid: self.mid.neg(), rad: self.rad, prec: self.prec }
    }

    pub fn abs(&self) -> BallReal {
        if self.contains_zero() {
            let up = self.abs_upper();
            let half = Float::from_mag(up).mul_2exp(-1);
            return BallReal::new(half, up.mul_2exp(-1).mul(Mag::from_f64(1.0 + 1e-15)), self.prec);
        }
        BallReal { mid: self.mid.abs(), rad: self.rad, prec: self.prec }
    }

    pub fn mul(&self, o: &BallReal) -> BallReal {
        let prec = self.wp(o);
        let (mid, err) = self.mid.mul_round(&o.mid, prec);
        let rad = self
            .mid
            .mag_upper()
            .mul(o.rad)
            .add(o.mid.mag_upper().mul(self.rad))
            .add(self.rad.mul(o.rad))
            .add(err);
        BallReal { mid, rad, prec }
    }

    pub fn mul_i64(&self, k: i64) -> BallReal {
        let (mid, err) = self.mid.mul_exact(&Float::from_i64(k)).round(self.prec);
        let rad = self.rad.mul_u64(k.unsigned_abs()).add(err);
        BallReal { mid, rad, prec: self.prec }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> BallReal {
        self.mul(&BallReal { mid: Float::from_bigint(k.clone()), rad: Mag::ZERO, prec: self.prec })
    }

    pub fn mul_2exp(&self, e: i64) -> BallReal {
        BallReal { mid: self.mid.mul_2exp(e), rad: self.rad.mul_2exp(e), prec: self.prec }
    }

    pub fn sqr(&self) -> BallReal {
        self.mul(self)
    }

    pub fn div(&self, o: &BallReal) -> Result<BallReal, NumericsError> {
        let den_lower = o.abs_lower();
        if den_lower.is_zero() {
            return Err(NumericsError::DivisionByZeroBall);
        }
        let prec = self.wp(o);
        let (mid, err) = self.mid.div_round(&o.mid, prec);
        let q_upper = mid.mag_upper().add(err);
        let rad = self.rad.add(q_upper.mul(o.rad)).div(den_lower).add(err);
        Ok(BallReal { mid, rad, prec })
    }

    pub fn div_u64(&self, k: u64) -> BallReal {
        assert!(k != 0, "division by zero");
        let (mid, err) = self.mid.div_round(&Float::from_bigint(BigInt::from(k)), self.prec);
        // k as f64 may round up; shrink it so the quotient stays an upper bound
        let k_lower = Mag::from_f64(k as f64).mul_lower(Mag::from_f64(1.0));
        let rad = self.rad.div(k_lower).add(err);
        BallReal { mid, rad, prec: self.prec }
    }

    pub fn div_bigint(&self, k: &BigInt) -> BallReal {
        let o = BallReal::from_bigint(k, self.prec.max(k.bits() as u32 + 2));
        self.div(&o).expect("nonzero integer divisor")
    }

    pub fn sqrt(&self) -> Result<BallReal, NumericsError> {
        if !self.is_nonnegative() {
            return Err(NumericsError::NegativeSqrt);
        }
        if self.mid.is_zero() {
            return Ok(self.clone());
        }
        let (mid, err) = self.mid.sqrt_round(self.prec);
        let root_lower = self.mid.mag_lower().sqrt_lower();
        let rad = if self.rad.is_zero() { Mag::ZERO } else { self.rad.div(root_lower) };
        Ok(BallReal { mid, rad: rad.add(err), prec: self.prec })
    }

    /// `self^e` by binary powering; negative exponents divide.
    pub fn pow_int(&self, e: i64) -> Result<BallReal, NumericsError> {
        let mut base = self.clone();
        let mut acc = BallReal::one(self.prec);
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        if e < 0 {
            BallReal::one(self.prec).div(&acc)
        } else {
            Ok(acc)
        }
    }

    /// Lower end of the ball as f64 (approximate, for heuristics).
    pub fn lower_f64(&self) -> f64 {
        self.mid_f64() - self.rad_f64()
    }

    /// Upper bound of the ball as f64 (approximate, for heuristics).
    pub fn upper_f64(&self) -> f64 {
        self.mid_f64() + self.rad_f64()
    }

    pub fn is_zero_exact(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }
}

macro_rules! ball_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&BallReal> for &BallReal {
            type Output = BallReal;
            fn $method(self, o: &BallReal) -> BallReal {
                BallReal::$method(self, o)
            }
        }
        impl $tr<BallReal> for BallReal {
            type Output = BallReal;
            fn $method(self, o: BallReal) -> BallReal {
                BallReal::$method(&self, &o)
            }
        }
        impl $tr<&BallReal> for BallReal {
            type Output = BallReal;
            fn $method(self, o: &BallReal) -> BallReal {
                BallReal::$method(&self, o)
            }
        }
    };
}

ball_binop!(Add, add);
ball_binop!(Sub, sub);
ball_binop!(Mul, mul);

impl Neg for &BallReal {
    type Output = BallReal;
    fn neg(self) -> BallReal {
        BallReal::neg(self)
    }
}

impl Neg for BallReal {
    type Output = BallReal;
    fn neg(self) -> BallReal {
        BallReal::neg(&self)
    }
}

impl Zero for BallReal {
    fn zero() -> BallReal {
        BallReal::zero(super::DEFAULT_BITS)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::decimal::format_ball(self))
    }
}
