//! Eisenstein series, `j`, the Faber polynomials `j_m = J_m(j)` and the
//! series `A_p`, `B_p` that enter the Lehmer identity for `Δ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::eta::delta;
use super::{LaurentQSeries, QSeriesError, Rational};
use crate::arith::is_prime;

/// Twelfth Bernoulli number.
pub fn bernoulli_12() -> Rational {
    Rational::new(BigInt::from(-691), BigInt::from(2730))
}

/// `Σ_{d | n} d^k`.
pub fn sigma_power(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma_power needs n >= 1");
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `E_4 = 1 + 240 Σ σ_3(n) q^n` or `E_6 = 1 - 504 Σ σ_5(n) q^n`, with `terms` coefficients.
pub fn eisenstein(weight: u32, terms: usize) -> Result<LaurentQSeries, QSeriesError> {
    let (scale, power) = match weight {
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(QSeriesError::UnsupportedWeight(weight)),
    };
    let coeffs = (0..terms as u64)
        .map(|n| if n == 0 { BigInt::one() } else { sigma_power(power, n) * scale })
        .collect();
    Ok(LaurentQSeries::from_integers(0, coeffs))
}

/// `j = E_4^3 / Δ`, known below `q^trunc`.
pub fn j_invariant(trunc: i64) -> LaurentQSeries {
    let len = (trunc + 1).max(1) as usize;
    let e4 = eisenstein(4, len).expect("weight 4");
    let e4_cubed = e4.pow(3).expect("nonnegative power");
    e4_cubed.div(&delta(len)).expect("Δ is invertible").truncate(trunc)
}

/// `j_m` with principal part exactly `q^-m` and vanishing constant term
/// (`j_0 = 1`), given with `terms` coefficients starting at `q^-m`.
pub fn faber_jm(m: u32, terms: usize) -> LaurentQSeries {
    let target = terms as i64 - m as i64;
    faber_family(m, target).pop().expect("family is nonempty")
}

/// `[j_0, j_1, ..., j_m]`, each known below `q^trunc`.
pub fn faber_family(m: u32, trunc: i64) -> Vec<LaurentQSeries> {
    let m = m as i64;
    let mut family = vec![LaurentQSeries::one(trunc)];
    if m == 0 {
        return family;
    }
    // j_i = j_1 j_{i-1} - (principal and constant part of that product, rewritten in j_1..j_{i-1})
    // loses one order per step, so start j_1 with m extra orders
    let top = trunc + m;
    let j1 = j_invariant(top).sub(&LaurentQSeries::constant(Rational::from_integer(744.into()), top));
    let mut work: Vec<LaurentQSeries> = vec![LaurentQSeries::one(top), j1.clone()];
    for i in 2..=m {
        let mut next = j1.mul(&work[(i - 1) as usize]);
        let c0 = next.coefficient(0).expect("constant term known");
        next = next.sub(&LaurentQSeries::constant(c0, next.trunc_order()));
        for e in 1..i {
            let c = next.coefficient(-e).expect("principal part known");
            if !c.is_zero() {
                next = next.sub(&work[e as usize].scale(&c));
            }
        }
        work.push(next);
    }
    family.extend(work.into_iter().skip(1).map(|s| s.truncate(trunc)));
    family
}

/// `(A_p, B_p)` with coefficients from `q^-p` up to `q^(terms - p - 1)`.
pub fn lehmer_ab(p: u64, tau_p: &Rational, terms: usize) -> Result<(LaurentQSeries, LaurentQSeries), QSeriesError> {
    if !is_prime(p) {
        return Err(QSeriesError::NotPrime(p));
    }
    if terms < p as usize + 1 {
        return Err(QSeriesError::InsufficientTruncation(format!("need at least {} terms, got {terms}", p + 1)));
    }
    let trunc = terms as i64 - p as i64;
    let jm = faber_family(p as u32, trunc);
    let c = Rational::from_integer(24.into()) / bernoulli_12();
    let p11 = BigInt::from(p).pow(11);
    let mut a = jm[p as usize].add(&LaurentQSeries::constant(&c * Rational::from_integer(p11 + 1), trunc));
    for m in 1..=p {
        let s = Rational::from_integer(sigma_power(9, m) * -264);
        a = a.add(&jm[(p - m) as usize].scale(&s));
    }
    let inner = jm[1].add(&LaurentQSeries::constant(c + Rational::from_integer((-264).into()), trunc));
    let b = inner.scale(&-tau_p);
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma_power(9, 1), 1.into());
        assert_eq!(sigma_power(9, 2), 513.into());
        assert_eq!(sigma_power(0, 6), 4.into());
        assert_eq!(sigma_power(1, 28), 56.into());
    }

    #[test]
    fn eisenstein_heads() {
        assert_eq!(eisenstein(4, 2).unwrap(), LaurentQSeries::from_i64s(0, &[1, 240]));
        assert_eq!(eisenstein(6, 2).unwrap(), LaurentQSeries::from_i64s(0, &[1, -504]));
        assert_eq!(eisenstein(4, 1).unwrap(), LaurentQSeries::one(1));
        assert_eq!(eisenstein(8, 3), Err(QSeriesError::UnsupportedWeight(8)));
    }

    #[test]
    fn j_head() {
        let j = j_invariant(3);
        assert_eq!(j, LaurentQSeries::from_i64s(-1, &[1, 744, 196884, 21493760]));
    }

    #[test]
    fn bernoulli_ratio() {
        assert_eq!(r(24) / bernoulli_12(), Rational::new((-65520).into(), 691.into()));
    }

    #[test]
    fn faber_normalization() {
        assert_eq!(faber_jm(0, 1), LaurentQSeries::one(1));
        let j1 = faber_jm(1, 3);
        assert_eq!(j1, LaurentQSeries::from_i64s(-1, &[1, 0, 196884]));
        for m in 1..=5u32 {
            let jm = faber_jm(m, m as usize + 4);
            assert_eq!(jm.trunc_order(), 4);
            assert_eq!(jm.coefficient(-(m as i64)).unwrap(), r(1));
            for e in -(m as i64) + 1..=0 {
                assert_eq!(jm.coefficient(e).unwrap(), r(0), "j_{m} at q^{e}");
            }
        }
    }

    #[test]
    fn j2_known_coefficient() {
        // j_2 = j_1^2 - 2*196884 = q^-2 + 42987520 q + ...
        let j2 = faber_jm(2, 4);
        assert_eq!(j2.coefficient(1).unwrap(), r(42_987_520));
    }

    #[test]
    fn lehmer_ab_shapes() {
        let (a, b) = lehmer_ab(2, &r(0), 6).unwrap();
        assert!(b.is_zero());
        assert_eq!(a.min_exp(), -2);
        assert_eq!(a.coefficient(-2).unwrap(), r(1));
        assert_eq!(a.coefficient(-1).unwrap(), r(-264));
        assert_eq!(lehmer_ab(4, &r(0), 6), Err(QSeriesError::NotPrime(4)));
    }
}
