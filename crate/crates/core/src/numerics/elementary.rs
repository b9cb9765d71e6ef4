//! π, exp, cos and sin on balls.
//!
//! Each function evaluates at the exact midpoint with guard bits, then
//! widens by a Lipschitz bound for the input radius.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ball::BallReal;
use super::float::Float;
use super::mag::Mag;

const GUARD: u32 = 24;

fn pi_cache() -> &'static Mutex<HashMap<u32, BallReal>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, BallReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Fixed-point `arctan(1/x) * 2^bits`, truncated; returns the value and the
/// number of truncations performed (each off by less than one unit).
fn atan_inv_fixed(x: u64, bits: u64) -> (BigInt, u64) {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / BigInt::from(x);
    let mut sum = power.clone();
    let mut k = 1u64;
    let mut ops = 1;
    loop {
        power /= &x2;
        ops += 1;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        ops += 1;
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    (sum, ops)
}

/// π to `prec` bits (Machin's formula, fixed point).
pub fn pi(prec: u32) -> BallReal {
    let key = prec.div_ceil(64) * 64;
    if let Some(p) = pi_cache().lock().expect("pi cache poisoned").get(&key) {
        return p.set_prec(prec);
    }
    let bits = key as u64 + 32;
    let (a, na) = atan_inv_fixed(5, bits);
    let (b, nb) = atan_inv_fixed(239, bits);
    let fixed = a * 16 - b * 4;
    // truncation errors plus one unit for each series tail
    let err_units = 16 * (na + 1) + 4 * (nb + 1);
    let ball = BallReal::new(
        Float::new(fixed, -(bits as i64)),
        Mag::from_f64(err_units as f64).mul_2exp(-(bits as i64)),
        key,
    );
    pi_cache().lock().expect("pi cache poisoned").insert(key, ball.clone());
    ball.set_prec(prec)
}

/// exp at an exact point: halve until |t| <= 2^-8, Taylor, square back.
fn exp_point(m: &Float, prec: u32) -> BallReal {
    if m.is_zero() {
        return BallReal::one(prec);
    }
    let s = (m.top_exp() + 8).max(0);
    let wp = prec + GUARD + s as u32;
    let t = BallReal::new(m.mul_2exp(-s), Mag::ZERO, wp);
    let t_abs = t.abs_upper();
    let mut sum = BallReal::one(wp);
    let mut term = BallReal::one(wp);
    let mut j = 1u64;
    loop {
        term = term.mul(&t).div_u64(j);
        sum = sum.add(&term);
        j += 1;
        // remaining terms are bounded by |term| * |t| / (1 - |t|) <= 2 |term| |t|
        let tail = term.abs_upper().mul(t_abs).mul_2exp(1);
        if tail <= Mag::pow2(-(wp as i64) - 4) {
            sum = sum.add_error(tail);
            break;
        }
    }
    for _ in 0..s {
        sum = sum.sqr();
    }
    sum.set_prec(prec)
}

pub fn exp(x: &BallReal) -> BallReal {
    let prec = x.prec();
    let e = exp_point(x.midpoint(), prec);
    if x.is_exact() {
        return e;
    }
    // |exp(m + d) - exp(m)| <= exp(m) (e^r - 1)
    let widen = e.abs_upper().mul(x.radius().expm1());
    e.add_error(widen)
}

/// cos and sin at a point `t` with |t| <= 4 (given as a ball with tiny radius).
fn cos_sin_reduced(t: &BallReal, wp: u32) -> (BallReal, BallReal) {
    const HALVINGS: i64 = 8;
    let u = t.mul_2exp(-HALVINGS);
    let u2 = u.sqr();
    let u_abs = u.abs_upper();
    // cos(u) = sum (-1)^j u^{2j}/(2j)!, sin(u) = sum (-1)^j u^{2j+1}/(2j+1)!
    let mut c = BallReal::one(wp);
    let mut s = u.clone();
    let mut ct = BallReal::one(wp);
    let mut st = u.clone();
    let mut j = 1u64;
    loop {
        ct = ct.mul(&u2).div_u64((2 * j - 1) * (2 * j)).neg();
        st = st.mul(&u2).div_u64((2 * j) * (2 * j + 1)).neg();
        c = c.add(&ct);
        s = s.add(&st);
        j += 1;
        // alternating with decreasing terms once |u| < 1: the tail is below the next term
        let next = st.abs_upper().mul(u_abs);
        if next <= Mag::pow2(-(wp as i64) - 4) {
            c = c.add_error(next);
            s = s.add_error(next.mul(u_abs));
            break;
        }
    }
    for _ in 0..HALVINGS {
        let s2 = s.mul(&c).mul_2exp(1);
        let c2 = c.sqr().mul_2exp(1).sub(&BallReal::one(wp));
        c = c2;
        s = s2;
    }
    (c, s)
}

fn cos_sin_point(m: &Float, prec: u32) -> (BallReal, BallReal) {
    if m.is_zero() {
        return (BallReal::one(prec), BallReal::zero(prec));
    }
    let extra = m.top_exp().max(0) as u32;
    let wp = prec + GUARD + 2 * 8 + extra;
    let x = BallReal::new(m.clone(), Mag::ZERO, wp);
    let two_pi = pi(wp).mul_2exp(1);
    let k = x.div(&two_pi).expect("pi is positive").midpoint().round_to_integer();
    let t = if k.is_zero() { x } else { x.sub(&two_pi.mul_bigint(&k)) };
    let (c, s) = cos_sin_reduced(&t, wp);
    (c.set_prec(prec), s.set_prec(prec))
}

/// Both cos and sin of a ball.
pub fn cos_sin(x: &BallReal) -> (BallReal, BallReal) {
    let (c, s) = cos_sin_point(x.midpoint(), x.prec());
    if x.is_exact() {
        return (c, s);
    }
    let r = x.radius();
    (c.add_error(r), s.add_error(r))
}

pub fn cos(x: &BallReal) -> BallReal {
    cos_sin(x).0
}

pub fn sin(x: &BallReal) -> BallReal {
    cos_sin(x).1
}
