use rayon::prelude::*;

use super::{CMax, PoincareError, PoincareParams, TruncationPolicy};
use crate::arith::{factorize, valuation};
use crate::kloosterman::{kloosterman, ramanujan_sum, KloostermanKey};
use crate::numerics::{bessel_i, bessel_j, pi, BallReal, Float, Mag, PrecisionConfig};
use crate::qseries::sigma_power;

const GUARD: u32 = 16;
/// Automatic truncation never sums more than this many `c`-terms times `N`.
const AUTO_CAP: u64 = 1_000_000;

/// One coefficient together with how it was truncated.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficient {
    pub n: i64,
    pub value: BallReal,
    /// Largest `c` included in the sum.
    pub c_max: u64,
    /// Bound on the omitted tail, already scaled by the prefactor.
    pub tail: Mag,
    /// False when the tail is a heuristic (weight 2) rather than a proven bound.
    pub certified: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Bessel {
    I,
    J,
}

/// Lower bound on `n!` as a magnitude.
fn factorial_lower(n: u32) -> Mag {
    (2..=n as u64).fold(Mag::from_f64(1.0), |acc, i| acc.mul_lower(Mag::from_f64(i as f64)))
}

fn mag_pow(x: Mag, e: u32) -> Mag {
    (0..e).fold(Mag::from_f64(1.0), |acc, _| acc.mul(x))
}

/// Bound on `Σ_{c > C, N | c} |K(·,·,c)|/c · |Bessel_ν(4π sqrt|mn| / c)|`.
///
/// With `|K| <= c`, `|J_ν| <= I_ν` and `I_ν(x) <= (x/2)^ν e^{x²/4} / ν!`, the
/// terms for `c = Nj`, `j > J = ⌊C/N⌋` are at most `(A/(Nj))^ν e^{r²} / ν!`
/// where `A = 2π sqrt|mn|` and `r = A/(N(J+1))`. Comparing the sum over `j`
/// with an integral gives `r^ν e^{r²} / ν! · (1 + (J+1)/(ν-1))`.
fn raw_tail(nu: u32, mn: u64, level: u64, c: u64) -> Mag {
    debug_assert!(nu >= 2);
    let j1 = c / level + 1;
    let two_pi = pi(64).abs_upper().mul_2exp(1);
    let a = two_pi.mul(Mag::from_f64(mn as f64).sqrt());
    let r = a.div(Mag::from_f64(level as f64).mul_lower(Mag::from_f64(j1 as f64)));
    let integral = Mag::from_f64(j1 as f64).div(Mag::from_f64((nu - 1) as f64));
    mag_pow(r, nu)
        .mul(r.mul(r).exp())
        .div(factorial_lower(nu))
        .mul(Mag::from_f64(1.0).add(integral))
}

/// Bound on `Σ_{c > C, N | c} |c_c(m)| / c^k`, using `|c_c(m)| <= σ_1(m)`.
fn constant_tail(m: u64, k: u32, level: u64, c: u64) -> Mag {
    let j1 = c / level + 1;
    let s = Mag::from_f64(sigma_power(1, m).to_string().parse::<f64>().unwrap_or(f64::MAX));
    let nj = Mag::from_f64(level as f64).mul_lower(Mag::from_f64(j1 as f64));
    let head = Mag::from_f64(1.0).div(mag_pow_lower(nj, k));
    let integral = Mag::from_f64(j1 as f64).div(Mag::from_f64((k - 1) as f64));
    s.mul(head).mul(Mag::from_f64(1.0).add(integral))
}

/// True when `c_c(m) = 0` for every `c ≡ 0 (mod N)`: some prime has
/// `v_p(N) >= v_p(m) + 2`, so `c/d` is never squarefree for `d | (m, c)`.
fn constant_terms_vanish(m: u64, level: u64) -> bool {
    factorize(level).into_iter().any(|(q, e)| {
        let vm = if m % q == 0 { valuation(m as i64, q) } else { 0 };
        e >= vm + 2
    })
}

fn mag_pow_lower(x: Mag, e: u32) -> Mag {
    (0..e).fold(Mag::from_f64(1.0), |acc, _| acc.mul_lower(x))
}

/// Upper bound on the `c > C` tail of the Kloosterman–Bessel sum behind the
/// `n`-th coefficient (before the prefactor). Only weights `k >= 4` have one.
pub fn tail_bound(p: &PoincareParams, n: i64, c: u64) -> Result<BallReal, PoincareError> {
    if n == 0 {
        return Err(PoincareError::InvalidParams("tail_bound needs n != 0".into()));
    }
    if p.k < 4 {
        return Err(PoincareError::Uncertified(p.k));
    }
    let t = raw_tail(p.k - 1, p.m * n.unsigned_abs(), p.level, c);
    Ok(BallReal::new(Float::from_mag(t), Mag::ZERO, 64))
}

/// `(num/den)^{(k-1)/2}` as a ball.
fn half_power(num: u64, den: u64, k: u32, wp: u32) -> Result<BallReal, PoincareError> {
    let q = BallReal::from_i64(num as i64, wp).div(&BallReal::from_i64(den as i64, wp))?;
    Ok(q.sqrt()?.pow_int(k as i64 - 1)?)
}

fn sign_k(k: u32) -> i64 {
    if (k / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Chooses the cutoff: fixed, or the smallest multiple of `N` whose scaled tail
/// meets the target. Returns the cutoff and whether its tail is certified.
pub fn resolve_c_max(
    p: &PoincareParams,
    n: i64,
    prefactor: Mag,
    t: &TruncationPolicy,
) -> Result<(u64, bool), PoincareError> {
    let certified = p.k >= 4 || n == 0;
    match t.c_max {
        CMax::Fixed(c) => Ok((c, certified)),
        CMax::Auto(target) => {
            if !certified {
                return Err(PoincareError::Uncertified(p.k));
            }
            let target_mag = Mag::from_f64(target);
            let tail_at = |j: u64| {
                let c = j * p.level;
                let raw = if n == 0 {
                    constant_tail(p.m, p.k, p.level, c)
                } else {
                    raw_tail(p.k - 1, p.m * n.unsigned_abs(), p.level, c)
                };
                prefactor.mul(raw)
            };
            let cap = (AUTO_CAP / p.level).max(1);
            if !(tail_at(cap) < target_mag) {
                return Err(PoincareError::CapExceeded { cap, target });
            }
            // the tail is decreasing in j: bisect for the first j that meets the target
            let (mut lo, mut hi) = (0u64, cap);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if tail_at(mid) < target_mag {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let j = if tail_at(lo) < target_mag { lo } else { hi };
            Ok((j * p.level, true))
        }
    }
}

/// `Σ_{c <= C, N | c} K(km, n, c)/c · B_{k-1}(4π sqrt|m n| / c)` at `wp` bits,
/// with the magnitude of the last included term.
fn kloosterman_bessel_sum(
    p: &PoincareParams,
    km: i64,
    n: i64,
    bessel: Bessel,
    c_max: u64,
    wp: u32,
) -> Result<(BallReal, Mag), PoincareError> {
    let nu = p.k - 1;
    let prec = PrecisionConfig::with_bits(wp);
    let mn = p.m * n.unsigned_abs();
    let four_pi_root = pi(wp).mul_2exp(2).mul(&BallReal::from_i64(mn as i64, wp).sqrt()?);
    let count = c_max / p.level;
    let terms: Vec<Result<BallReal, PoincareError>> = (1..=count)
        .into_par_iter()
        .map(|j| {
            let c = j * p.level;
            let k = kloosterman(KloostermanKey { m: km, n, c }, &prec);
            if k.is_zero_exact() {
                return Ok(BallReal::zero(wp));
            }
            let x = four_pi_root.div_u64(c);
            let b = match bessel {
                Bessel::I => bessel_i(nu, &x)?,
                Bessel::J => bessel_j(nu, &x)?,
            };
            Ok(k.mul(&b).div_u64(c))
        })
        .collect();
    // fixed summation order, independent of the worker count
    let mut sum = BallReal::zero(wp);
    let mut last = Mag::ZERO;
    for t in terms {
        let t = t?;
        last = t.abs_upper();
        sum = sum.add(&t);
    }
    Ok((sum, last))
}

/// Shared driver: prefactor times the truncated sum, with the tail in the radius.
fn coefficient(
    p: &PoincareParams,
    n: i64,
    km: i64,
    bessel: Bessel,
    prefactor: BallReal,
    t: &TruncationPolicy,
) -> Result<Coefficient, PoincareError> {
    let bits = t.bits();
    let wp = bits + GUARD;
    let (c_max, certified) = resolve_c_max(p, n, prefactor.abs_upper(), t)?;
    let (sum, last) = kloosterman_bessel_sum(p, km, n, bessel, c_max, wp)?;
    let raw = if certified {
        raw_tail(p.k - 1, p.m * n.unsigned_abs(), p.level, c_max)
    } else {
        // weight 2: no absolutely convergent majorant; use the last term as a stand-in
        last
    };
    let value = prefactor.mul(&sum.add_error(raw)).set_prec(bits);
    Ok(Coefficient { n, value, c_max, tail: prefactor.abs_upper().mul(raw), certified })
}

fn positive(n: u64, what: &str) -> Result<i64, PoincareError> {
    if n == 0 {
        return Err(PoincareError::InvalidParams(format!("{what} needs n >= 1")));
    }
    Ok(n as i64)
}

/// `a(m,k,N;n) = 2π(-1)^{k/2} (n/m)^{(k-1)/2} Σ K(m,n,c)/c · J_{k-1}(4π sqrt(mn)/c)`:
/// the Kloosterman part of the `n`-th coefficient of the cusp form `P(m,k,N)`.
pub fn cusp_poincare_coeff(p: &PoincareParams, n: u64, t: &TruncationPolicy) -> Result<Coefficient, PoincareError> {
    let ni = positive(n, "cusp_poincare_coeff")?;
    let wp = t.bits() + GUARD;
    let pre = pi(wp).mul_2exp(1).mul_i64(sign_k(p.k)).mul(&half_power(n, p.m, p.k, wp)?);
    coefficient(p, ni, p.m as i64, Bessel::J, pre, t)
}

/// `δ_{m,n} + a(m,k,N;n)`: the full `n`-th coefficient of `P(m,k,N)`.
pub fn cusp_poincare_full_coeff(p: &PoincareParams, n: u64, t: &TruncationPolicy) -> Result<Coefficient, PoincareError> {
    let mut c = cusp_poincare_coeff(p, n, t)?;
    if n == p.m {
        c.value = c.value.add(&BallReal::one(t.bits()));
    }
    Ok(c)
}

/// `a(-m,k,N;n) = 2π(-1)^{k/2} (n/m)^{(k-1)/2} Σ K(-m,n,c)/c · I_{k-1}(4π sqrt(mn)/c)`.
pub fn weakly_holo_poincare_coeff(
    p: &PoincareParams,
    n: u64,
    t: &TruncationPolicy,
) -> Result<Coefficient, PoincareError> {
    let ni = positive(n, "weakly_holo_poincare_coeff")?;
    let wp = t.bits() + GUARD;
    let pre = pi(wp).mul_2exp(1).mul_i64(sign_k(p.k)).mul(&half_power(n, p.m, p.k, wp)?);
    coefficient(p, ni, -(p.m as i64), Bessel::I, pre, t)
}

/// Holomorphic coefficients `b(-m,k,N;n)`, `n >= 0`, of `Q(-m,k,N)`:
///
/// * `n > 0`: `-2π(-1)^{k/2} (m/n)^{(k-1)/2} Σ K(-m,n,c)/c · I_{k-1}(4π sqrt(mn)/c)`
/// * `n = 0`: `-(2π)^k (-1)^{k/2} m^{k-1}/(k-1)! · Σ K(-m,0,c)/c^k`
pub fn maass_poincare_holo_coeff(
    p: &PoincareParams,
    n: u64,
    t: &TruncationPolicy,
) -> Result<Coefficient, PoincareError> {
    let wp = t.bits() + GUARD;
    let sign = -sign_k(p.k);
    if n > 0 {
        let pre = pi(wp).mul_2exp(1).mul_i64(sign).mul(&half_power(p.m, n, p.k, wp)?);
        return coefficient(p, n as i64, -(p.m as i64), Bessel::I, pre, t);
    }
    let mut pre = pi(wp).mul_2exp(1).pow_int(p.k as i64)?.mul_i64(sign);
    pre = pre.mul(&BallReal::from_i64(p.m as i64, wp).pow_int(p.k as i64 - 1)?);
    for i in 2..p.k as u64 {
        pre = pre.div_u64(i);
    }
    let (c_max, _) = resolve_c_max(p, 0, pre.abs_upper(), t)?;
    let mut sum = BallReal::zero(wp);
    let mut c = p.level;
    while c <= c_max {
        let r = ramanujan_sum(-(p.m as i64), c);
        if r != 0 {
            sum = sum.add(&BallReal::from_i64(r, wp).div(&BallReal::from_i64(c as i64, wp).pow_int(p.k as i64)?)?);
        }
        c += p.level;
    }
    let raw = if constant_terms_vanish(p.m, p.level) { Mag::ZERO } else { constant_tail(p.m, p.k, p.level, c_max) };
    let value = pre.mul(&sum.add_error(raw)).set_prec(t.bits());
    Ok(Coefficient { n: 0, value, c_max, tail: pre.abs_upper().mul(raw), certified: true })
}

/// Non-holomorphic coefficients `b(-m,k,N;n)`, `n < 0`:
/// `-2π(-1)^{k/2}/(k-2)! · |m/n|^{(k-1)/2} Σ K(-m,n,c)/c · J_{k-1}(4π sqrt|mn|/c)`.
///
/// This is the Kloosterman part only; the principal term `-1/(k-2)!` at
/// `n = -m` is added by [`assemble_q`](super::assemble_q).
pub fn maass_poincare_nonholo_coeff(
    p: &PoincareParams,
    n: i64,
    t: &TruncationPolicy,
) -> Result<Coefficient, PoincareError> {
    if n >= 0 {
        return Err(PoincareError::InvalidParams(format!("non-holomorphic coefficients need n < 0, got {n}")));
    }
    let wp = t.bits() + GUARD;
    let mut pre = pi(wp).mul_2exp(1).mul_i64(-sign_k(p.k)).mul(&half_power(p.m, n.unsigned_abs(), p.k, wp)?);
    for i in 2..=(p.k as u64 - 2) {
        pre = pre.div_u64(i);
    }
    coefficient(p, n, -(p.m as i64), Bessel::J, pre, t)
}
