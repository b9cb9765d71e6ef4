//! Arbitrary-precision binary floating point numbers `mant * 2^exp`.
//!
//! Operations return the rounded value together with an upper bound on the
//! rounding error, so the ball layer can fold it into the radius.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

/// Dyadic number `mant * 2^exp`, kept canonical (odd mantissa or zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Float {
    mant: BigInt,
    exp: i64,
}

impl Float {
    pub fn zero() -> Float {
        Float { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Float {
        Float { mant: BigInt::one(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Float {
        let mut f = Float { mant, exp };
        f.canonicalize();
        f
    }

    pub fn from_i64(v: i64) -> Float {
        Float::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Float {
        Float::new(v, 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Float {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Float::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Float::new(BigInt::from(m) * sign, e)
    }

    fn canonicalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Number of significant bits.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `e` such that `2^(e-1) <= |x| < 2^e`; `i64::MIN` for zero.
    pub fn top_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn neg(&self) -> Float {
        Float { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Float {
        Float { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, e: i64) -> Float {
        if self.is_zero() {
            return self.clone();
        }
        Float { mant: self.mant.clone(), exp: self.exp + e }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.mant.bits() as i64;
        let (m, e) = if b > 64 {
            (&self.mant >> ((b - 64) as usize), self.exp + b - 64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 1023 {
            return mf * f64::INFINITY;
        }
        if e < -1100 {
            return mf * 2f64.powi(-1000) * 2f64.powi((e + 1000).max(-1100) as i32);
        }
        mf * 2f64.powi(e as i32)
    }

    /// Upper bound on `|self|`.
    pub fn mag_upper(&self) -> Mag {
        self.mag_dir(true)
    }

    /// Lower bound on `|self|`.
    pub fn mag_lower(&self) -> Mag {
        self.mag_dir(false)
    }

    fn mag_dir(&self, up: bool) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let a = self.mant.magnitude();
        let b = a.bits() as i64;
        if b <= 52 {
            return Mag::from_parts(a.to_f64().unwrap(), self.exp);
        }
        let top = (a >> ((b - 52) as usize)).to_u64().unwrap();
        let top = if up { top + 1 } else { top };
        Mag::from_parts(top as f64, self.exp + b - 52)
    }

    /// Exact value of a magnitude.
    pub fn from_mag(m: Mag) -> Float {
        if m.is_zero() {
            return Float::zero();
        }
        let (man, e) = m.parts();
        let f = Float::from_f64(man);
        f.mul_2exp(e)
    }

    /// Round to at most `prec` significant bits, nearest.
    pub fn round(&self, prec: u32) -> (Float, Mag) {
        let b = self.mant.bits() as i64;
        let prec = prec as i64;
        if b <= prec {
            return (self.clone(), Mag::ZERO);
        }
        let shift = (b - prec) as usize;
        let (sign, a) = (self.mant.sign(), self.mant.magnitude());
        let half = BigUint::one() << (shift - 1);
        let q: BigUint = (a + half) >> shift;
        let f = Float::new(BigInt::from_biguint(sign, q), self.exp + shift as i64);
        (f, Mag::pow2(self.exp + shift as i64 - 1))
    }

    pub fn add_exact(&self, o: &Float) -> Float {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &o.mant << ((o.exp - e) as usize);
        Float::new(a + b, e)
    }

    /// Rounded sum; a summand far below the other's precision is folded
    /// into the error bound instead of being shifted into place.
    pub fn add_round(&self, o: &Float, prec: u32) -> (Float, Mag) {
        if self.is_zero() {
            return o.round(prec);
        }
        if o.is_zero() {
            return self.round(prec);
        }
        let (big, small) = if self.top_exp() >= o.top_exp() { (self, o) } else { (o, self) };
        let gap = prec as i64 + 8;
        if small.top_exp() < big.top_exp() - gap && small.top_exp() < big.exp {
            let (r, err) = big.round(prec);
            return (r, err.add(small.mag_upper()));
        }
        self.add_exact(o).round(prec)
    }

    pub fn sub_round(&self, o: &Float, prec: u32) -> (Float, Mag) {
        self.add_round(&o.neg(), prec)
    }

    pub fn mul_exact(&self, o: &Float) -> Float {
        Float { mant: &self.mant * &o.mant, exp: self.exp + o.exp }
    }

    pub fn mul_round(&self, o: &Float, prec: u32) -> (Float, Mag) {
        self.mul_exact(o).round(prec)
    }

    /// Quotient rounded to `prec` bits; `o` must be nonzero.
    pub fn div_round(&self, o: &Float, prec: u32) -> (Float, Mag) {
        assert!(!o.is_zero(), "division by zero");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let shift = (prec as i64 + 2 + o.bits() as i64 - self.bits() as i64).max(0);
        let num = &self.mant << (shift as usize);
        let q = &num / &o.mant;
        let e = self.exp - o.exp - shift;
        let exact = (&q * &o.mant) == num;
        let trunc_err = if exact { Mag::ZERO } else { Mag::pow2(e) };
        let (r, err) = Float::new(q, e).round(prec);
        (r, err.add(trunc_err))
    }

    /// Square root rounded to `prec` bits; `self` must be nonnegative.
    pub fn sqrt_round(&self, prec: u32) -> (Float, Mag) {
        assert!(!self.is_negative(), "square root of negative number");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let mut shift = (2 * (prec as i64 + 2) - self.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let a = self.mant.magnitude() << (shift as usize);
        let r = a.sqrt();
        let exact = &r * &r == a;
        let e = (self.exp - shift) / 2;
        let trunc_err = if exact { Mag::ZERO } else { Mag::pow2(e) };
        let (f, err) = Float::new(BigInt::from(r), e).round(prec);
        (f, err.add(trunc_err))
    }

    /// Nearest integer (ties away from zero).
    pub fn round_to_integer(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << (self.exp as usize);
        }
        let shift = (-self.exp) as usize;
        let (sign, a) = (self.mant.sign(), self.mant.magnitude());
        let half = BigUint::one() << (shift - 1);
        BigInt::from_biguint(sign, (a + half) >> shift)
    }

    /// Exact value as numerator/denominator pair (denominator a power of two).
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        if self.exp >= 0 {
            (&self.mant << (self.exp as usize), BigInt::one())
        } else {
            (self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, o: &Float) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Float {
    fn cmp(&self, o: &Float) -> Ordering {
        let (sa, sb) = (self.signum(), o.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        let (ta, tb) = (self.top_exp(), o.top_exp());
        if ta != tb {
            let by_size = ta.cmp(&tb);
            return if sa > 0 { by_size } else { by_size.reverse() };
        }
        let d = self.add_exact(&o.neg());
        d.mant.sign().cmp(&Sign::NoSign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f = Float::new(BigInt::from(12), 0);
        assert_eq!(f.mantissa(), &BigInt::from(3));
        assert_eq!(f.exponent(), 2);
        assert_eq!(Float::from_f64(0.75), Float::new(BigInt::from(3), -2));
    }

    #[test]
    fn rounding_error_bound_holds() {
        let f = Float::new(BigInt::from(0b1011_0111), 0);
        let (r, err) = f.round(4);
        let diff = (r.to_f64() - f.to_f64()).abs();
        assert!(diff <= err.to_f64());
        assert!(r.bits() <= 4);
    }

    #[test]
    fn division_and_sqrt() {
        let (q, err) = Float::from_i64(1).div_round(&Float::from_i64(3), 80);
        assert!((q.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert!(err.to_f64() < 1e-23);
        let (s, err) = Float::from_i64(2).sqrt_round(100);
        assert!((s.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!(err.to_f64() < 1e-29);
        let (s, err) = Float::from_i64(16).sqrt_round(100);
        assert_eq!(s, Float::from_i64(4));
        assert!(err.is_zero());
    }

    #[test]
    fn far_apart_sum_keeps_error() {
        let a = Float::from_i64(1);
        let b = Float::new(BigInt::from(1), -10_000);
        let (s, err) = a.add_round(&b, 64);
        assert_eq!(s, a);
        assert!(!err.is_zero());
        assert!(err.exp2_ceil() <= -9_999);
    }

    #[test]
    fn mag_bounds_bracket_value() {
        let f = Float::new(BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap(), -50);
        let v = f.to_f64();
        assert!(f.mag_upper().to_f64() >= v);
        assert!(f.mag_lower().to_f64() <= v);
    }

    #[test]
    fn ordering_and_integer_rounding() {
        assert!(Float::from_f64(-0.5) < Float::from_f64(0.25));
        assert_eq!(Float::from_f64(2.5).round_to_integer(), BigInt::from(3));
        assert_eq!(Float::from_f64(-2.5).round_to_integer(), BigInt::from(-3));
        assert_eq!(Float::from_f64(-2.4).round_to_integer(), BigInt::from(-2));
    }
}
