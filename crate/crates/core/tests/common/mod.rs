//! Reference implementations used as oracles. They share no code with the
//! library: plain f64 sums, naive integer power series.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: u32) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `I_ν(x)` by its ascending series in f64.
pub fn bessel_i(nu: u32, x: f64) -> f64 {
    let h = x / 2.0;
    let mut term = h.powi(nu as i32) / factorial(nu);
    let mut sum = 0.0;
    let mut k = 0u32;
    while k < 400 {
        sum += term;
        k += 1;
        term *= h * h / (k as f64 * (k + nu) as f64);
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// `J_ν(x)` by its ascending series in f64; loses digits for large `x`.
pub fn bessel_j(nu: u32, x: f64) -> f64 {
    let h = x / 2.0;
    let mut term = h.powi(nu as i32) / factorial(nu);
    let mut sum = 0.0;
    for k in 1..400u32 {
        sum += term;
        term *= -h * h / (k as f64 * (k + nu) as f64);
        if term.abs() < 1e-300 {
            break;
        }
    }
    sum
}

/// Absolute accuracy to expect from [`bessel_j`]: the largest series term
/// times a few ulps.
pub fn bessel_j_slack(nu: u32, x: f64) -> f64 {
    64.0 * f64::EPSILON * bessel_i(nu, x)
}

/// `Γ(a, x)` for integer `a >= 1`: `(a-1)! e^{-x} Σ_{k<a} x^k/k!`.
pub fn incomplete_gamma(a: u32, x: f64) -> f64 {
    let mut s = 0.0;
    let mut t = 1.0;
    for k in 0..a {
        s += t;
        t *= x / (k + 1) as f64;
    }
    factorial(a - 1) * (-x).exp() * s
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `Σ_{v mod c, (v,c)=1} cos(2π(m v + n v̄)/c)`, with `v̄` found by search.
pub fn kloosterman(m: i64, n: i64, c: i64) -> f64 {
    let mut s = 0.0;
    for v in 0..c {
        if gcd(v, c) != 1 {
            continue;
        }
        let vbar = (0..c).find(|w| (v * w) % c == 1 % c).expect("unit");
        let e = (m * v + n * vbar).rem_euclid(c) as f64 / c as f64;
        s += (2.0 * std::f64::consts::PI * e).cos();
    }
    s
}

pub fn euler_phi(c: i64) -> i64 {
    (1..=c).filter(|&v| gcd(v, c) == 1).count() as i64
}

pub fn num_divisors(c: i64) -> i64 {
    (1..=c).filter(|d| c % d == 0).count() as i64
}

pub fn mobius(n: i64) -> i64 {
    let mut n = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Ramanujan sum `Σ_{d | (m, c)} d μ(c/d)`.
pub fn ramanujan(m: i64, c: i64) -> i64 {
    (1..=c).filter(|d| c % d == 0 && m % d == 0).map(|d| d * mobius(c / d)).sum()
}

pub fn sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
}

/// Dense integer power series `Σ a[i] q^i`, truncated at `len`.
pub type Poly = Vec<BigInt>;

pub fn mul(a: &Poly, b: &Poly, len: usize) -> Poly {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 / a` for `a[0] = ±1`.
pub fn inv(a: &Poly, len: usize) -> Poly {
    assert!(a[0] == BigInt::one() || a[0] == -BigInt::one());
    let mut out = vec![BigInt::zero(); len];
    for n in 0..len {
        let mut s = if n == 0 { BigInt::one() } else { BigInt::zero() };
        for k in 1..=n.min(a.len() - 1) {
            s -= &a[k] * &out[n - k];
        }
        out[n] = s * &a[0];
    }
    out
}

/// `∏_{n>=1} (1 - q^{d n})^r` for `r >= 0`, truncated at `len`.
pub fn euler_power(d: usize, r: u32, len: usize) -> Poly {
    let mut out = vec![BigInt::zero(); len];
    out[0] = BigInt::one();
    let mut n = d;
    while n < len {
        for _ in 0..r {
            for i in (n..len).rev() {
                let t = out[i - n].clone();
                out[i] -= t;
            }
        }
        n += d;
    }
    out
}

/// `∏_i η(d_i z)^{r_i}` without the `q^{Σ d r / 24}` prefactor.
pub fn eta_product(factors: &[(usize, i32)], len: usize) -> Poly {
    let mut out = vec![BigInt::zero(); len];
    out[0] = BigInt::one();
    for &(d, r) in factors {
        let e = euler_power(d, r.unsigned_abs(), len);
        let e = if r < 0 { inv(&e, len) } else { e };
        out = mul(&out, &e, len);
    }
    out
}

/// `Δ` coefficients `τ(1), ..., τ(len)` as `tau[n]` (index 0 unused).
pub fn tau(len: usize) -> Poly {
    let mut t = vec![BigInt::zero()];
    t.extend(euler_power(1, 24, len));
    t
}

/// `E_k` for k in {4, 6}.
pub fn eisenstein(k: u32, len: usize) -> Poly {
    let c: i64 = if k == 4 { 240 } else { -504 };
    (0..len).map(|n| if n == 0 { BigInt::one() } else { sigma(k - 1, n as u64) * c }).collect()
}

/// `j(q) = E_4^3 / Δ` as coefficients of `q^{-1}, q^0, ...`.
pub fn j_coeffs(len: usize) -> Poly {
    let e4 = eisenstein(4, len);
    let e4c = mul(&mul(&e4, &e4, len), &e4, len);
    // Δ / q = ∏(1-q^n)^24
    mul(&e4c, &inv(&euler_power(1, 24, len), len), len)
}

/// `m(z) = (η(z)^3/η(9z)^3 + 3)^2 η(3z)^8`, coefficients of `q^{-1}, q^0, ...`.
pub fn m_coeffs(len: usize) -> Poly {
    // η(z)^3/η(9z)^3 = q^{-1} A(q), η(3z)^8 = q B(q)
    let a = eta_product(&[(1, 3), (9, -3)], len);
    let b = eta_product(&[(3, 8)], len);
    // (q^{-1} A + 3)^2 q B = q^{-1} (A + 3q)^2 B
    let mut s = a.clone();
    s[1] += 3;
    mul(&mul(&s, &s, len), &b, len)
}
