//! Coefficient-level operators: Hecke `T_p`, `U(p)`, `V(p)` and character twists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{LaurentQSeries, QSeriesError, Rational};
use crate::arith::{gcd, is_prime, is_squarefree};

/// Real Dirichlet characters: principal characters and Kronecker symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirichletCharacterSpec {
    /// Principal character modulo `modulus` (modulus 1 is identically 1).
    Trivial { modulus: u64 },
    /// `n -> (D | n)` for a fundamental discriminant `D` (or `±1`).
    Kronecker { discriminant: i64 },
}

impl DirichletCharacterSpec {
    pub fn trivial(modulus: u64) -> Result<DirichletCharacterSpec, QSeriesError> {
        if modulus == 0 {
            return Err(QSeriesError::InvalidCharacter("modulus must be positive".into()));
        }
        Ok(DirichletCharacterSpec::Trivial { modulus })
    }

    pub fn kronecker(discriminant: i64) -> Result<DirichletCharacterSpec, QSeriesError> {
        if !is_fundamental_or_unit(discriminant) {
            return Err(QSeriesError::InvalidCharacter(format!("{discriminant} is not a fundamental discriminant")));
        }
        Ok(DirichletCharacterSpec::Kronecker { discriminant })
    }

    pub fn value(&self, n: i64) -> i32 {
        match *self {
            DirichletCharacterSpec::Trivial { modulus } => i32::from(gcd(n, modulus as i64) == 1),
            DirichletCharacterSpec::Kronecker { discriminant } => kronecker_symbol(discriminant, n),
        }
    }
}

fn is_fundamental_or_unit(d: i64) -> bool {
    if d == 1 || d == -1 {
        return true;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if r == 0 {
        let m = d / 4;
        let mr = m.rem_euclid(4);
        return (mr == 2 || mr == 3) && is_squarefree(m.unsigned_abs());
    }
    false
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
fn jacobi(a: i64, n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(D | n)`, completely multiplicative in `n`.
pub fn kronecker_symbol(d: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(d == 1 || d == -1);
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -1;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        let r = d.rem_euclid(8);
        if (r == 3 || r == 5) && twos % 2 == 1 {
            result = -result;
        }
        n >>= twos;
    }
    result * jacobi(d, n)
}

fn check_prime(p: u64) -> Result<(), QSeriesError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(QSeriesError::NotPrime(p))
    }
}

/// `a(n) <- a(pn)`.
pub fn u_operator(f: &LaurentQSeries, p: u64) -> LaurentQSeries {
    let p = p as i64;
    let lo = Integer::div_ceil(&f.min_exp(), &p);
    let trunc = Integer::div_ceil(&f.trunc_order(), &p);
    LaurentQSeries::from_fn(lo.min(trunc), trunc, |n| f.get(p * n).expect("inside known range"))
}

/// `a(n) <- a(n/p)`, zero when `p` does not divide `n`.
pub fn v_operator(f: &LaurentQSeries, p: u64) -> LaurentQSeries {
    let p = p as i64;
    let trunc = f.trunc_order() * p;
    let lo = (f.min_exp() * p).min(trunc);
    LaurentQSeries::from_fn(lo, trunc, |n| {
        if n % p == 0 {
            f.get(n / p).expect("inside known range")
        } else {
            Rational::zero()
        }
    })
}

/// `c'(n) = c(pn) + χ(p) p^{k-1} c(n/p)` for prime `p`.
///
/// The result is known for exactly those `n` where both terms are, i.e.
/// below `min(⌈trunc/p⌉, p·trunc)`.
pub fn hecke_tp(
    f: &LaurentQSeries,
    p: u64,
    k: i64,
    chi: &DirichletCharacterSpec,
) -> Result<LaurentQSeries, QSeriesError> {
    check_prime(p)?;
    let pi = p as i64;
    let trunc = Integer::div_ceil(&f.trunc_order(), &pi).min(f.trunc_order() * pi);
    let lo = Integer::div_ceil(&f.min_exp(), &pi).min(f.min_exp() * pi);
    if trunc <= lo && !f.is_zero() {
        return Err(QSeriesError::InsufficientTruncation(format!(
            "T_{p} of a series known below q^{} determines nothing",
            f.trunc_order()
        )));
    }
    let pk = if k - 1 >= 0 {
        Rational::from_integer(BigInt::from(p).pow((k - 1) as u32))
    } else {
        Rational::new(BigInt::from(1), BigInt::from(p).pow((1 - k) as u32))
    };
    let factor = pk * Rational::from_integer(chi.value(pi).into());
    Ok(LaurentQSeries::from_fn(lo.min(trunc), trunc, |n| {
        let mut c = f.get(pi * n).expect("inside known range");
        if n % pi == 0 && !factor.is_zero() {
            c += &factor * f.get(n / pi).expect("inside known range");
        }
        c
    }))
}

/// `c(n) <- χ(n) c(n)`.
pub fn twist(f: &LaurentQSeries, chi: &DirichletCharacterSpec) -> LaurentQSeries {
    LaurentQSeries::from_fn(f.min_exp(), f.trunc_order(), |n| {
        let c = f.get(n).expect("inside known range");
        match chi.value(n) {
            0 => Rational::zero(),
            1 => c,
            _ => -c,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::eta::{delta, g_series};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker_symbol(-3, 1), 1);
        assert_eq!(kronecker_symbol(-3, 3), 0);
        assert_eq!(kronecker_symbol(-3, 2), -1);
        assert_eq!(kronecker_symbol(-3, 4), 1);
        assert_eq!(kronecker_symbol(-3, 7), 1);
        assert_eq!(kronecker_symbol(-4, 3), -1);
        assert_eq!(kronecker_symbol(5, 2), -1);
        assert_eq!(kronecker_symbol(-3, -1), -1);
        assert_eq!(kronecker_symbol(1, 0), 1);
        assert_eq!(kronecker_symbol(-3, 0), 0);
    }

    /// `(D|n)` for odd prime `n` by Euler's criterion.
    fn euler_criterion(d: i64, p: i64) -> i32 {
        let a = d.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        let mut acc = 1i64;
        for _ in 0..(p - 1) / 2 {
            acc = acc * a % p;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_matches_euler_criterion_and_multiplicativity() {
        let primes = [3i64, 5, 7, 11, 13, 17, 19, 23];
        for d in [-3i64, -4, -7, -8, 5, 8, 12, 13, -15] {
            for &p in &primes {
                assert_eq!(kronecker_symbol(d, p), euler_criterion(d, p), "({d}|{p})");
            }
            for a in 1..30i64 {
                for b in 1..30i64 {
                    assert_eq!(kronecker_symbol(d, a * b), kronecker_symbol(d, a) * kronecker_symbol(d, b));
                }
            }
        }
    }

    #[test]
    fn character_validation() {
        assert!(DirichletCharacterSpec::kronecker(-3).is_ok());
        assert!(DirichletCharacterSpec::kronecker(-4).is_ok());
        assert!(DirichletCharacterSpec::kronecker(12).is_ok());
        assert!(DirichletCharacterSpec::kronecker(-12).is_err());
        assert!(DirichletCharacterSpec::kronecker(3).is_err());
        assert!(DirichletCharacterSpec::trivial(0).is_err());
    }

    #[test]
    fn delta_is_a_hecke_eigenform() {
        let d = delta(40);
        let triv = DirichletCharacterSpec::trivial(1).unwrap();
        for (p, tau) in [(2u64, -24i64), (3, 252), (5, 4830)] {
            let t = hecke_tp(&d, p, 12, &triv).unwrap();
            let expected = d.truncate(t.trunc_order()).scale(&r(tau));
            assert_eq!(t, expected, "p = {p}");
        }
    }

    #[test]
    fn g_is_killed_by_t2() {
        let g = g_series(100);
        let t = hecke_tp(&g, 2, 4, &DirichletCharacterSpec::trivial(9).unwrap()).unwrap();
        assert!(t.is_zero());
        assert!(t.trunc_order() >= 50);
    }

    #[test]
    fn hecke_on_constants() {
        let one = LaurentQSeries::one(10);
        let triv = DirichletCharacterSpec::trivial(1).unwrap();
        // c'(0) = c(0)(1 + p^{k-1})
        let t = hecke_tp(&one, 2, 0, &triv).unwrap();
        assert_eq!(t.coefficient(0).unwrap(), Rational::new(3.into(), 2.into()));
        let t = hecke_tp(&one, 2, 1, &triv).unwrap();
        assert_eq!(t.coefficient(0).unwrap(), r(2));
        assert!(hecke_tp(&one, 4, 1, &triv).is_err());
    }

    #[test]
    fn u_after_v_is_identity() {
        let f = LaurentQSeries::from_i64s(-1, &[1, 0, 2, 5, -3, 7]);
        for p in [2u64, 3] {
            assert_eq!(u_operator(&v_operator(&f, p), p), f);
        }
        let vu = v_operator(&u_operator(&f, 2), 2);
        assert_eq!(vu.get(2), f.get(2));
        assert_eq!(vu.get(1), Some(r(0)));
    }

    #[test]
    fn u_drops_non_multiples() {
        let f = LaurentQSeries::monomial(-1, r(1), 10);
        let u = u_operator(&f, 3);
        assert!(u.is_zero());
        assert_eq!(u.trunc_order(), 4);
    }

    #[test]
    fn twists() {
        let g = g_series(60);
        let triv1 = DirichletCharacterSpec::trivial(1).unwrap();
        assert_eq!(twist(&g, &triv1), g);
        let chi0 = DirichletCharacterSpec::trivial(3).unwrap();
        let chi3 = DirichletCharacterSpec::kronecker(-3).unwrap();
        let sum = twist(&g, &chi0).add(&twist(&g, &chi3));
        assert_eq!(sum, g.scale(&r(2)));
        let q2 = LaurentQSeries::monomial(2, r(1), 3);
        assert_eq!(twist(&q2, &chi3), q2.neg());
    }
}
