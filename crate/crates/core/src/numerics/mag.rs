//! Nonnegative magnitudes with a wide exponent range, rounded outward.
//!
//! A [`Mag`] is `man * 2^exp` with `man` in `[0.5, 1)` (or exactly zero).
//! Every operation nudges its `f64` result by a relative `2^-50` in the
//! requested direction, which dominates the `2^-53` rounding error of the
//! underlying hardware operation.

use std::cmp::Ordering;

const UP: f64 = 1.0 + 1.0 / (1u64 << 50) as f64;
const DOWN: f64 = 1.0 - 1.0 / (1u64 << 50) as f64;

/// Nonnegative real bound `man * 2^exp`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mag {
    man: f64,
    exp: i64,
}

fn frexp(x: f64) -> (f64, i64) {
    debug_assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64;
    if e == 0 {
        let (m, e2) = frexp(x * 2f64.powi(64));
        return (m, e2 - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e - 1022)
}

fn ldexp(m: f64, e: i64) -> f64 {
    if e > 1023 {
        return f64::INFINITY;
    }
    if e < -1074 - 64 {
        return 0.0;
    }
    if e < -1000 {
        return m * 2f64.powi(-1000) * 2f64.powi((e + 1000) as i32);
    }
    m * 2f64.powi(e as i32)
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0.0, exp: 0 };

    fn norm(man: f64, exp: i64) -> Mag {
        if man == 0.0 {
            return Mag::ZERO;
        }
        assert!(man.is_finite() && man > 0.0, "magnitude must be finite and nonnegative");
        let (m, e) = frexp(man);
        Mag { man: m, exp: exp + e }
    }

    /// Exact conversion of a nonnegative finite `f64`.
    pub fn from_f64(x: f64) -> Mag {
        assert!(x >= 0.0 && x.is_finite(), "magnitude must be finite and nonnegative");
        Mag::norm(x, 0)
    }

    /// `man * 2^exp` with outward rounding of the product.
    pub fn from_parts(man: f64, exp: i64) -> Mag {
        Mag::norm(man, exp)
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 0.5, exp: e + 1 }
    }

    pub fn is_zero(self) -> bool {
        self.man == 0.0
    }

    /// Mantissa in `[0.5, 1)` and binary exponent.
    pub fn parts(self) -> (f64, i64) {
        (self.man, self.exp)
    }

    /// Smallest `e` with `self < 2^e` (or `i64::MIN` for zero).
    pub fn exp2_ceil(self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp
        }
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.man, self.exp)
    }

    pub fn add(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let d = big.exp - small.exp;
        if d > 60 {
            return Mag::norm(big.man * UP, big.exp);
        }
        Mag::norm((big.man + ldexp(small.man, -d)) * UP, big.exp)
    }

    /// Lower bound on `max(self - o, 0)` when both are treated as exact.
    pub fn sub_lower(self, o: Mag) -> Mag {
        if o.is_zero() {
            return self;
        }
        if self.exp < o.exp || (self.exp == o.exp && self.man <= o.man) {
            return Mag::ZERO;
        }
        let d = self.exp - o.exp;
        if d > 60 {
            return Mag::norm(self.man * DOWN, self.exp);
        }
        let v = (self.man - ldexp(o.man, -d)) * DOWN;
        if v <= 0.0 {
            Mag::ZERO
        } else {
            Mag::norm(v, self.exp)
        }
    }

    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.man * o.man * UP, self.exp + o.exp)
    }

    /// Lower-rounded product.
    pub fn mul_lower(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.man * o.man * DOWN, self.exp + o.exp)
    }

    /// Upper-rounded quotient; `o` must be nonzero.
    pub fn div(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "division by zero magnitude");
        if self.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.man / o.man * UP, self.exp - o.exp)
    }

    /// Lower-rounded quotient; `o` must be nonzero.
    pub fn div_lower(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "division by zero magnitude");
        if self.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.man / o.man * DOWN, self.exp - o.exp)
    }

    pub fn mul_u64(self, k: u64) -> Mag {
        self.mul(Mag::from_f64(k as f64).mul(Mag::from_f64(UP)))
    }

    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + e }
        }
    }

    pub fn sqrt(self) -> Mag {
        self.sqrt_dir(UP)
    }

    pub fn sqrt_lower(self) -> Mag {
        self.sqrt_dir(DOWN)
    }

    fn sqrt_dir(self, nudge: f64) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (m, e) = if self.exp % 2 != 0 { (self.man * 2.0, self.exp - 1) } else { (self.man, self.exp) };
        Mag::norm(m.sqrt() * nudge, e / 2)
    }

    /// Upper bound on `e^self`.
    pub fn exp(self) -> Mag {
        let x = self.to_f64() * UP;
        if x < 700.0 {
            Mag::from_f64(x.exp()).mul(Mag::from_f64(UP * UP))
        } else {
            let e2 = (x * std::f64::consts::LOG2_E * UP).ceil();
            assert!(e2 < 9.0e18, "exponential bound out of range");
            Mag::pow2(e2 as i64 + 1)
        }
    }

    /// Upper bound on `e^self - 1`.
    pub fn expm1(self) -> Mag {
        if self.exp <= 0 {
            // self < 1: e^r - 1 <= r + r^2
            self.add(self.mul(self))
        } else {
            self.exp()
        }
    }

    pub fn max(self, o: Mag) -> Mag {
        if self >= o {
            self
        } else {
            o
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, o: &Mag) -> Option<Ordering> {
        Some(match (self.is_zero(), o.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&o.exp).then(self.man.partial_cmp(&o.man).unwrap_or(Ordering::Equal)),
        })
    }
}
