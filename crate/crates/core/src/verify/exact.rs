use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{CheckStatus, VerificationReport, VerifyError};
use crate::arith::is_prime;
use crate::qseries::{
    a_invariant, format_rational, kronecker_symbol, m_series, padic_valuation_stats, u_operator, DirichletCharacterSpec,
    LaurentQSeries, QSeriesError, Rational,
};

/// Densities are measured up to `X = 10^4` on `m | U(3)`, which needs `m` to `3·10^4`.
pub const PADIC_SERIES_TERMS: usize = 30_002;

const DENSITY_XS: [u64; 3] = [100, 1_000, 10_000];

/// Densities that fail to decrease but stay below this are reported as uncertified.
const SMALL_DENSITY: f64 = 0.1;

fn known_to(f: &LaurentQSeries, x: i64) -> Result<(), VerifyError> {
    if f.trunc_order() <= x {
        return Err(QSeriesError::Unknown { exponent: x, trunc: f.trunc_order() }.into());
    }
    Ok(())
}

/// `c(n) = 0` whenever `(D/n) = -1`, for `1 <= n <= X`.
pub fn verify_cm_vanishing(f: &LaurentQSeries, d: i64, x: u64) -> Result<VerificationReport, VerifyError> {
    DirichletCharacterSpec::kronecker(d)?;
    known_to(f, x as i64)?;
    let mut r = VerificationReport::new("cm");
    r.param("D", d);
    r.param("X", x);
    let inert: Vec<i64> = (1..=x as i64).filter(|&n| kronecker_symbol(d, n) == -1).collect();
    let bad: Vec<String> = inert
        .iter()
        .filter_map(|&n| {
            let c = f.get(n).expect("known");
            (!c.is_zero()).then(|| format!("c({n})={}", format_rational(&c)))
        })
        .take(5)
        .collect();
    let witness = format!("inert={} violations=[{}]", inert.len(), bad.join(","));
    r.check("inert-vanishing", "coefficients vanish at inert indices", CheckStatus::from_bool(bad.is_empty()), witness);
    Ok(r)
}

/// `c(p^m) = (-χ(p) p^{k-1})^{m/2}` for even `m` and `0` for odd `m`, given `c(p) = 0`.
pub fn verify_hecke_recursion(
    f: &LaurentQSeries,
    p: u64,
    k: i64,
    chi: &DirichletCharacterSpec,
    m_max: u32,
) -> Result<VerificationReport, VerifyError> {
    if !is_prime(p) {
        return Err(QSeriesError::NotPrime(p).into());
    }
    let top = BigInt::from(p).pow(m_max).max(BigInt::from(p));
    let top = top.to_i64().ok_or_else(|| VerifyError::Precondition(format!("{p}^{m_max} overflows")))?;
    known_to(f, top)?;
    let mut r = VerificationReport::new("hecke");
    r.param("p", p);
    r.param("k", k);
    r.param("chi", format!("{chi:?}"));
    r.param("m_max", m_max);
    let cp = f.coefficient(p as i64)?;
    r.check("eigenvalue-zero", "c(p) = 0", CheckStatus::from_bool(cp.is_zero()), format!("c({p})={}", format_rational(&cp)));
    if !cp.is_zero() {
        return Ok(r);
    }
    let step = -BigInt::from(chi.value(p as i64)) * BigInt::from(p).pow((k - 1) as u32);
    let mut ok = true;
    let mut witness = Vec::new();
    for m in 0..=m_max {
        let expected = if m % 2 == 0 { Rational::from_integer(step.pow(m / 2)) } else { Rational::zero() };
        let n = BigInt::from(p).pow(m).to_i64().expect("bounded above");
        let c = f.coefficient(n)?;
        ok &= c == expected;
        witness.push(format!("c({n})={}/{}", format_rational(&c), format_rational(&expected)));
    }
    r.check("recursion", "c(p^m) follows the recursion", CheckStatus::from_bool(ok), witness.join(" "));
    Ok(r)
}

/// 3-adic checks on `m(z)` and `f* = -m | U(3)`: vanishing at powers of 3,
/// density trend of coefficients not divisible by `3^b`, and the `a`-invariant.
///
/// `n_terms` is raised to [`PADIC_SERIES_TERMS`] when smaller, so that the
/// densities up to `10^4` are defined.
pub fn verify_padic(n_terms: usize) -> Result<VerificationReport, VerifyError> {
    if n_terms < 6561 {
        return Err(VerifyError::Precondition(format!("need at least 3^8 = 6561 terms, got {n_terms}")));
    }
    let terms = n_terms.max(PADIC_SERIES_TERMS);
    let m = m_series(terms);
    let mut r = VerificationReport::new("padic");
    r.param("terms_requested", n_terms);
    r.param("terms_used", terms);
    r.param("p", 3);

    let mut witness = Vec::new();
    let mut ok = true;
    for j in 1..=8u32 {
        let c = m.coefficient(3i64.pow(j))?;
        ok &= c.is_zero();
        witness.push(format!("c(3^{j})={}", format_rational(&c)));
    }
    r.check("powers-of-3", "coefficients of m at 3^j vanish", CheckStatus::from_bool(ok), witness.join(" "));

    let fstar = u_operator(&m, 3).neg();
    for b in 1..=2u32 {
        let ds = DENSITY_XS
            .iter()
            .map(|&x| padic_valuation_stats(&fstar, 3, b, x, None).map(|d| (x, d)))
            .collect::<Result<Vec<_>, _>>()?;
        let decreasing = ds.windows(2).all(|w| w[1].1 < w[0].1);
        let small = ds.iter().all(|(_, d)| d.to_f64().unwrap_or(1.0) <= SMALL_DENSITY);
        let status = if decreasing {
            CheckStatus::Pass
        } else if small {
            CheckStatus::Uncertified
        } else {
            CheckStatus::Fail
        };
        let witness = ds.iter().map(|(x, d)| format!("X={x}:{}", format_rational(d))).collect::<Vec<_>>().join(" ");
        r.check(&format!("density-b{b}"), "density of coefficients not divisible by 3^b strictly decreases", status, witness);
        r.densities.extend(ds.into_iter().map(|(x, d)| (x, b, d)));
    }

    let a = a_invariant(&m, 3);
    r.check("a-invariant", "a-invariant of m at p = 3 is 1", CheckStatus::from_bool(a == 1), format!("a={a}"));
    Ok(r)
}
