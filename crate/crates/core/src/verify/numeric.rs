use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{CheckStatus, VerificationReport, VerifyError};
use crate::numerics::{recognize_numerator, BallReal, Mag};
use crate::poincare::{
    cusp_poincare_full_coeff, maass_poincare_holo_coeff, maass_poincare_nonholo_coeff, weakly_holo_poincare_coeff,
    PoincareParams, TruncationPolicy,
};
use crate::qseries::{delta, eisenstein, format_rational, g_series, lehmer_ab, m_series, LaurentQSeries, Rational};

const INTEGER_TOL: f64 = 1e-3;
const LEHMER_REL_TOL: f64 = 1e-6;

fn ball_of(q: &Rational, prec: u32) -> BallReal {
    BallReal::from_rational(q, prec)
}

/// Midpoint within `tol` of `exact`, and `exact` inside the ball.
fn near(x: &BallReal, exact: &Rational, tol: f64) -> bool {
    let diff = x.sub(&ball_of(exact, x.prec()));
    diff.mid_f64().abs() <= tol && diff.contains_zero()
}

fn status(ok: bool, certified: bool) -> CheckStatus {
    match (ok, certified) {
        (false, _) => CheckStatus::Fail,
        (true, true) => CheckStatus::Pass,
        (true, false) => CheckStatus::Uncertified,
    }
}

/// The weight 4 level 9 example: `P(-1,4,9)` against the exact `m(z)`, and
/// rational recognition of `Q⁺(-1,4,9)` with denominator `n³`.
pub fn verify_good_example(n_max: u64, t: &TruncationPolicy) -> Result<VerificationReport, VerifyError> {
    if n_max < 11 {
        return Err(VerifyError::Precondition(format!("n_max must be at least 11, got {n_max}")));
    }
    let p = PoincareParams::new(1, 4, 9)?;
    let mut r = VerificationReport::new("good-example");
    r.param("n_max", n_max);
    r.param("policy", t);
    r.param("tolerance", INTEGER_TOL);

    let m = m_series(n_max as usize + 2);
    let head = [(-1i64, 1i64), (2, 2), (5, -49), (8, 48), (11, 771)];
    let got: Vec<Rational> = head.iter().map(|&(e, _)| m.coefficient(e)).collect::<Result<_, _>>()?;
    let ok = head.iter().zip(&got).all(|(&(_, c), g)| *g == Rational::from_integer(c.into()));
    let witness = head.iter().zip(&got).map(|((e, _), g)| format!("q^{e}:{}", format_rational(g))).collect::<Vec<_>>();
    r.check("m-exact", "exact coefficients of m(z)", CheckStatus::from_bool(ok), witness.join(" "));

    let bad: Vec<u64> = (1..=n_max).filter(|n| n % 3 == 1 && !m.get(*n as i64).expect("known").is_zero()).collect();
    r.check("m-vanishing", "m(z) vanishes at n = 1 mod 3", CheckStatus::from_bool(bad.is_empty()), format!("nonzero={bad:?}"));

    let mut ok = true;
    let mut certified = true;
    let mut witness = Vec::new();
    for n in 1..=n_max {
        let a = weakly_holo_poincare_coeff(&p, n, t)?;
        if a.value.radius() >= Mag::from_f64(0.5) {
            return Err(VerifyError::InsufficientTruncation(format!("a({n}) has radius {:e}", a.value.rad_f64())));
        }
        let target = m.coefficient(n as i64)?;
        ok &= near(&a.value, &target, INTEGER_TOL);
        certified &= a.certified;
        witness.push(format!("{n}:{}", a.value));
    }
    r.check("poincare-vs-m", "P(-1,4,9) coefficients match m(z)", status(ok, certified), witness.join("; "));

    let mut ok = true;
    let mut witness = Vec::new();
    for n in 1..=n_max {
        let b = maass_poincare_holo_coeff(&p, n, t)?;
        let d = n.pow(3);
        let expected = -m.coefficient(n as i64)? / Rational::from_integer(BigInt::from(d));
        let found = recognize_numerator(&b.value, d);
        let matches = found.as_ref().map(|num| Rational::new(num.clone(), d.into()) == expected).unwrap_or(false);
        ok &= matches;
        witness.push(match found {
            Some(num) => format!("{n}:{num}/{d}"),
            None => format!("{n}:unrecognized({})", b.value),
        });
    }
    r.check("q-plus-rational", "Q+(-1,4,9) coefficients are -m(n)/n^3", CheckStatus::from_bool(ok), witness.join(" "));
    Ok(r)
}

/// Cusp space with one normalized basis element, when it is known exactly.
fn one_dimensional_cusp_space(k: u32, level: u64, terms: usize) -> Option<LaurentQSeries> {
    match (k, level) {
        (4, 9) => Some(g_series(terms)),
        (12, 1) => Some(delta(terms)),
        _ => None,
    }
}

/// Coefficientwise Bol and ξ identities for `Q(-m,k,N)`:
///
/// `n^{k-1} b⁺(n) = -m^{k-1} a(-m;n)` and `-(k-2)! b⁻(-n) n^{k-1} = m^{k-1} a(m;n)`,
/// compared by ball overlap. When the weight `k` cusp space is one-dimensional
/// and known, the ratios `a(m;n)/a(m;1)` are also compared with its normalized form.
pub fn verify_bol_xi(
    p: &PoincareParams,
    n_range: RangeInclusive<i64>,
    t: &TruncationPolicy,
) -> Result<VerificationReport, VerifyError> {
    if p.k < 4 {
        return Err(VerifyError::Precondition(format!("k must be at least 4, got {}", p.k)));
    }
    if !n_range.is_empty() && *n_range.start() < 1 {
        return Err(VerifyError::Precondition("n must be positive".into()));
    }
    let prec = t.bits();
    let k = p.k as i64;
    let mut r = VerificationReport::new("bol-xi");
    r.param("m", p.m);
    r.param("k", p.k);
    r.param("N", p.level);
    r.param("n_range", format!("{}..={}", n_range.start(), n_range.end()));
    r.param("policy", t);

    let mk = BallReal::from_i64(p.m as i64, prec).pow_int(k - 1)?;
    let fact = (2..=k - 2).fold(BallReal::one(prec), |acc, i| acc.mul_i64(i));
    let mut bol_ok = true;
    let mut xi_ok = true;
    let mut certified = true;
    let mut bol_w = Vec::new();
    let mut xi_w = Vec::new();
    let mut cusp = Vec::new();
    for n in n_range.clone() {
        let nk = BallReal::from_i64(n, prec).pow_int(k - 1)?;
        let b = maass_poincare_holo_coeff(p, n as u64, t)?;
        let a = weakly_holo_poincare_coeff(p, n as u64, t)?;
        let lhs = b.value.mul(&nk);
        let rhs = a.value.mul(&mk).neg();
        bol_ok &= lhs.overlaps(&rhs);
        bol_w.push(format!("{n}:{lhs}|{rhs}"));

        let mut bm = maass_poincare_nonholo_coeff(p, -n, t)?.value;
        if n as u64 == p.m {
            bm = bm.sub(&BallReal::one(prec).div(&fact)?);
        }
        let lhs = bm.mul(&fact).mul(&nk).neg();
        let c = cusp_poincare_full_coeff(p, n as u64, t)?;
        let rhs = c.value.mul(&mk);
        xi_ok &= lhs.overlaps(&rhs);
        xi_w.push(format!("{n}:{lhs}|{rhs}"));
        certified &= a.certified && b.certified && c.certified;
        cusp.push((n, c.value));
    }
    r.check("bol", "n^(k-1) b+(n) = -m^(k-1) a(-m;n)", status(bol_ok, certified), bol_w.join("; "));
    r.check("xi", "-(k-2)! b-(-n) n^(k-1) = m^(k-1) a(m;n)", status(xi_ok, certified), xi_w.join("; "));

    let end = *n_range.end();
    if let Some(f) = one_dimensional_cusp_space(p.k, p.level, end.max(1) as usize + 1) {
        if !cusp.is_empty() {
            let a1 = cusp_poincare_full_coeff(p, 1, t)?.value;
            let mut ok = true;
            let mut w = Vec::new();
            for (n, c) in &cusp {
                let ratio = c.div(&a1)?;
                let exact = f.coefficient(*n)?;
                ok &= near(&ratio, &exact, INTEGER_TOL);
                w.push(format!("{n}:{ratio}|{}", format_rational(&exact)));
            }
            r.check("cusp-ratios", "a(m;n)/a(m;1) matches the normalized cusp form", status(ok, certified), w.join("; "));
        }
    }
    Ok(r)
}

/// `p^11 a_Δ(pn) - τ(p) a_Δ(n) + a_Δ(n/p)` from numerical `Q⁺(-1,12,1)`
/// coefficients, against the exact `(A_p + B_p)/(E_4 E_6)`, for `n_lo <= n <= n_hi`.
pub fn verify_lehmer_identity(p: u64, n_lo: i64, n_hi: i64, t: &TruncationPolicy) -> Result<VerificationReport, VerifyError> {
    if ![2, 3, 5].contains(&p) {
        return Err(VerifyError::Precondition(format!("p must be 2, 3 or 5, got {p}")));
    }
    if n_lo < -(p as i64) || n_hi < n_lo {
        return Err(VerifyError::Precondition(format!("need -{p} <= n_lo <= n_hi, got {n_lo}..{n_hi}")));
    }
    let prec = t.bits();
    let mut r = VerificationReport::new("lehmer");
    r.param("p", p);
    r.param("n_range", format!("{n_lo}..={n_hi}"));
    r.param("policy", t);
    r.param("rel_tol", LEHMER_REL_TOL);

    let tau = delta(p as usize + 1).coefficient(p as i64)?;
    r.param("tau_p", format_rational(&tau));

    let terms = (n_hi + p as i64 + 1) as usize;
    let (a, b) = lehmer_ab(p, &tau, terms)?;
    let e4e6 = eisenstein(4, terms)?.mul(&eisenstein(6, terms)?);
    let rhs = a.add(&b).div(&e4e6)?;

    let q = PoincareParams::new(1, 12, 1)?;
    let mut certified = true;
    let mut a_delta = |n: i64| -> Result<BallReal, VerifyError> {
        Ok(match n {
            n if n >= 0 => {
                let c = maass_poincare_holo_coeff(&q, n as u64, t)?;
                certified &= c.certified;
                c.value
            }
            -1 => BallReal::one(prec),
            _ => BallReal::zero(prec),
        })
    };
    let p11 = BallReal::from_i64(p as i64, prec).pow_int(11)?;
    let tau_b = ball_of(&tau, prec);
    let mut ok = true;
    let mut witness = Vec::new();
    for n in n_lo..=n_hi {
        let mut lhs = p11.mul(&a_delta(p as i64 * n)?).sub(&tau_b.mul(&a_delta(n)?));
        if n % p as i64 == 0 {
            lhs = lhs.add(&a_delta(n / p as i64)?);
        }
        let exact = rhs.coefficient(n)?;
        let scale = if exact.is_zero() { 1.0 } else { exact.abs().to_f64().unwrap_or(f64::INFINITY) };
        let allowed = Mag::from_f64(LEHMER_REL_TOL * scale);
        if lhs.radius() > allowed {
            return Err(VerifyError::InsufficientTruncation(format!(
                "coefficient {n}: radius {:e} exceeds tolerance {:e}",
                lhs.rad_f64(),
                allowed.to_f64()
            )));
        }
        ok &= lhs.sub(&ball_of(&exact, prec)).abs_upper() <= allowed;
        witness.push(format!("{n}:{lhs}|{}", format_rational(&exact)));
    }
    r.check("identity", "numerical and exact sides agree", status(ok, certified), witness.join("; "));
    Ok(r)
}
