//! Eta quotients built from two sparse product identities:
//! Jacobi's `∏(1-q^n)^3 = Σ (-1)^k (2k+1) q^{k(k+1)/2}` and Euler's
//! pentagonal `∏(1-q^n) = Σ (-1)^k q^{k(3k-1)/2}`.
//! Every factor `∏(1-q^{dn})^r` then costs `O(terms * sqrt(terms/d))`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{LaurentQSeries, QSeriesError};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EtaQuotientSpec {
    factors: Vec<(u64, i64)>,
}

impl EtaQuotientSpec {
    /// `∏ η(d z)^{r_d}`; divisors must be distinct and positive.
    pub fn new(factors: Vec<(u64, i64)>) -> Result<EtaQuotientSpec, QSeriesError> {
        for (i, &(d, _)) in factors.iter().enumerate() {
            if d == 0 {
                return Err(QSeriesError::InvalidEta("divisor must be positive".into()));
            }
            if factors[..i].iter().any(|&(e, _)| e == d) {
                return Err(QSeriesError::InvalidEta(format!("divisor {d} repeated")));
            }
        }
        Ok(EtaQuotientSpec { factors })
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    /// `Σ d r_d / 24`, the exponent of the leading term.
    pub fn leading_exponent(&self) -> Result<i64, QSeriesError> {
        let s: i64 = self.factors.iter().map(|&(d, r)| d as i64 * r).sum();
        if s % 24 != 0 {
            return Err(QSeriesError::InvalidEta(format!("leading exponent {s}/24 is not an integer")));
        }
        Ok(s / 24)
    }
}

impl FromStr for EtaQuotientSpec {
    type Err = QSeriesError;

    /// Parses `d:r,d:r,...`, e.g. `1:3,9:-3`; the empty string is the empty product.
    fn from_str(s: &str) -> Result<EtaQuotientSpec, QSeriesError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(EtaQuotientSpec::default());
        }
        let mut factors = Vec::new();
        for part in s.split(',') {
            let bad = || QSeriesError::InvalidEta(format!("malformed factor `{}` (expected d:r)", part.trim()));
            let (d, r) = part.trim().split_once(':').ok_or_else(bad)?;
            factors.push((d.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?));
        }
        EtaQuotientSpec::new(factors)
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(d, r)| format!("{d}:{r}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A power series `1 + ...` with few nonzero integer terms, as (exponent, coefficient).
pub(crate) type Sparse = Vec<(usize, i64)>;

/// `∏_{n>=1} (1 - q^{dn})^3` below `q^len`.
pub(crate) fn jacobi_cube(d: usize, len: usize) -> Sparse {
    let mut out = Vec::new();
    let mut k = 0usize;
    loop {
        let e = d * k * (k + 1) / 2;
        if e >= len {
            break;
        }
        let c = (2 * k + 1) as i64;
        out.push((e, if k % 2 == 0 { c } else { -c }));
        k += 1;
    }
    out
}

/// `∏_{n>=1} (1 - q^{dn})` below `q^len`.
pub(crate) fn euler_product(d: usize, len: usize) -> Sparse {
    let mut out = vec![(0, 1)];
    let mut k = 1usize;
    loop {
        let e1 = d * k * (3 * k - 1) / 2;
        if e1 >= len {
            break;
        }
        let s = if k % 2 == 0 { 1 } else { -1 };
        out.push((e1, s));
        let e2 = d * k * (3 * k + 1) / 2;
        if e2 < len {
            out.push((e2, s));
        }
        k += 1;
    }
    out
}

/// `a <- a * s`, in place, keeping `a.len()` coefficients.
pub(crate) fn mul_sparse(a: &mut [BigInt], s: &Sparse) {
    let len = a.len();
    for i in (0..len).rev() {
        let mut acc = BigInt::zero();
        for &(e, c) in s {
            if e > i {
                break;
            }
            let v = &a[i - e];
            if !v.is_zero() {
                acc += v * c;
            }
        }
        a[i] = acc;
    }
}

/// `a <- a / s` in place, for `s` with constant term 1.
pub(crate) fn div_sparse(a: &mut [BigInt], s: &Sparse) {
    debug_assert_eq!(s.first(), Some(&(0, 1)));
    for i in 0..a.len() {
        let mut acc = std::mem::take(&mut a[i]);
        for &(e, c) in &s[1..] {
            if e > i {
                break;
            }
            let v = &a[i - e];
            if !v.is_zero() {
                acc -= v * c;
            }
        }
        a[i] = acc;
    }
}

/// `∏ (1-q^{dn})^r` applied to `a` (in place) via cubes and single Euler factors.
pub(crate) fn apply_eta_factor(a: &mut [BigInt], d: usize, r: i64) {
    let len = a.len();
    let cubes = r.unsigned_abs() / 3;
    let singles = r.unsigned_abs() % 3;
    if cubes > 0 {
        let j = jacobi_cube(d, len);
        for _ in 0..cubes {
            if r > 0 {
                mul_sparse(a, &j)
            } else {
                div_sparse(a, &j)
            }
        }
    }
    if singles > 0 {
        let p = euler_product(d, len);
        for _ in 0..singles {
            if r > 0 {
                mul_sparse(a, &p)
            } else {
                div_sparse(a, &p)
            }
        }
    }
}

/// Exact expansion of `∏ η(dz)^{r_d}`, with `terms` coefficients from the leading exponent.
pub fn eta_quotient(spec: &EtaQuotientSpec, terms: usize) -> Result<LaurentQSeries, QSeriesError> {
    let lead = spec.leading_exponent()?;
    let mut a = vec![BigInt::zero(); terms];
    if terms > 0 {
        a[0] = BigInt::from(1);
    }
    for &(d, r) in spec.factors() {
        apply_eta_factor(&mut a, d as usize, r);
    }
    Ok(LaurentQSeries::from_integers(lead, a))
}

/// `Δ = η(z)^24`.
pub fn delta(terms: usize) -> LaurentQSeries {
    eta_quotient(&EtaQuotientSpec { factors: vec![(1, 24)] }, terms).expect("integral exponent")
}

/// `g = η(3z)^8`, the CM newform of weight 4 and level 9.
pub fn g_series(terms: usize) -> LaurentQSeries {
    eta_quotient(&EtaQuotientSpec { factors: vec![(3, 8)] }, terms).expect("integral exponent")
}

/// `m(z) = (η(z)^3/η(9z)^3 + 3)^2 η(3z)^8`, with `terms` coefficients from `q^-1`.
///
/// Computed as `q^-1 (J(q) + 3q J(q^9))^2 ∏(1-q^{3n})^8 / ∏(1-q^{9n})^6`,
/// where `J` is Jacobi's cube series, so that only sparse factors are involved.
pub fn m_series(terms: usize) -> LaurentQSeries {
    let len = terms;
    let mut base: Vec<i64> = vec![0; len];
    for (e, c) in jacobi_cube(1, len) {
        base[e] += c;
    }
    for (e, c) in jacobi_cube(9, len) {
        if e + 1 < len {
            base[e + 1] += 3 * c;
        }
    }
    let sparse: Sparse = base.iter().enumerate().filter(|(_, c)| **c != 0).map(|(e, c)| (e, *c)).collect();
    let mut a = vec![BigInt::zero(); len];
    for &(e1, c1) in &sparse {
        for &(e2, c2) in &sparse {
            if e1 + e2 < len {
                a[e1 + e2] += c1 * c2;
            }
        }
    }
    apply_eta_factor(&mut a, 3, 8);
    apply_eta_factor(&mut a, 9, -6);
    LaurentQSeries::from_integers(-1, a)
}
