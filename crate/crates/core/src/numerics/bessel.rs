//! Integer-order Bessel functions `I_ν` and `J_ν` by their ascending series.
//!
//! For `h = x/2` the terms are `h^{ν+2j} / (j! (ν+j)!)`; consecutive ratios
//! `h² / ((j+1)(ν+j+1))` decrease in `j`, which gives a geometric majorant
//! for the `I` tail and a first-omitted-term bound for the alternating `J`
//! series.

use super::ball::BallReal;
use super::mag::Mag;
use super::NumericsError;

const GUARD: u32 = 16;
const MAX_TERMS: u64 = 1_000_000;

fn check_args(nu: u32, x: &BallReal) -> Result<(), NumericsError> {
    if nu < 1 {
        return Err(NumericsError::InvalidOrder(nu as i64));
    }
    if !x.is_nonnegative() {
        return Err(NumericsError::NegativeArgument);
    }
    Ok(())
}

/// `h^ν / ν!` at working precision.
fn leading_term(nu: u32, h: &BallReal) -> BallReal {
    let mut t = h.pow_int(nu as i64).expect("nonnegative power");
    for i in 2..=nu as u64 {
        t = t.div_u64(i);
    }
    t
}

/// Upper bound on the term ratio `h² / ((j+1)(ν+j+1))`.
fn ratio_bound(h2_upper: Mag, nu: u32, j: u64) -> Mag {
    let den = Mag::from_f64((j + 1) as f64).mul_lower(Mag::from_f64((nu as u64 + j + 1) as f64));
    h2_upper.div(den)
}

/// Modified Bessel function `I_ν(x)` for integer `ν >= 1` and `x >= 0`.
pub fn bessel_i(nu: u32, x: &BallReal) -> Result<BallReal, NumericsError> {
    check_args(nu, x)?;
    let prec = x.prec();
    if x.is_zero_exact() {
        return Ok(BallReal::zero(prec));
    }
    let wp = prec + GUARD;
    let h = x.set_prec(wp).mul_2exp(-1);
    let h2 = h.sqr();
    let h2_upper = h2.abs_upper();
    let mut term = leading_term(nu, &h);
    let mut sum = term.clone();
    let mut j = 0u64;
    loop {
        let rho = ratio_bound(h2_upper, nu, j);
        if rho < Mag::from_f64(0.5) {
            // later terms shrink at least geometrically by rho
            let tail = term.abs_upper().mul(rho).mul(Mag::from_f64(2.0));
            let sum_lower = sum.abs_lower();
            if tail <= sum_lower.mul_2exp(-(wp as i64)) || tail.is_zero() {
                return Ok(sum.add_error(tail).set_prec(prec));
            }
        }
        j += 1;
        if j > MAX_TERMS {
            return Err(NumericsError::NoConvergence("bessel_i"));
        }
        term = term.mul(&h2).div_u64(j * (nu as u64 + j));
        sum = sum.add(&term);
    }
}

/// Bessel function of the first kind `J_ν(x)` for integer `ν >= 1` and `x >= 0`.
pub fn bessel_j(nu: u32, x: &BallReal) -> Result<BallReal, NumericsError> {
    check_args(nu, x)?;
    let prec = x.prec();
    if x.is_zero_exact() {
        return Ok(BallReal::zero(prec));
    }
    // the largest term is about e^x, while J stays O(1): pay for the cancellation
    let cancel_bits = (x.upper_f64() * std::f64::consts::LOG2_E).ceil().max(0.0) as u32;
    let wp = prec + GUARD + cancel_bits;
    let h = x.set_prec(wp).mul_2exp(-1);
    let h2 = h.sqr();
    let h2_upper = h2.abs_upper();
    let mut term = leading_term(nu, &h);
    let first = term.abs_lower();
    let tol = if first.is_zero() { Mag::pow2(-(wp as i64)) } else { first.mul_2exp(-(wp as i64)) };
    let mut sum = term.clone();
    let mut j = 0u64;
    loop {
        j += 1;
        if j > MAX_TERMS {
            return Err(NumericsError::NoConvergence("bessel_j"));
        }
        term = term.mul(&h2).div_u64(j * (nu as u64 + j)).neg();
        // from index j on the magnitudes are nonincreasing once the ratio is below one
        let decreasing = ratio_bound(h2_upper, nu, j) <= Mag::from_f64(1.0);
        if decreasing && term.abs_upper() <= tol {
            return Ok(sum.add_error(term.abs_upper()).set_prec(prec));
        }
        sum = sum.add(&term);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(x: f64) -> BallReal {
        BallReal::from_f64(x, 128)
    }

    #[test]
    fn zero_argument() {
        assert!(bessel_i(3, &BallReal::zero(128)).unwrap().is_zero_exact());
        assert!(bessel_j(3, &BallReal::zero(128)).unwrap().is_zero_exact());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(bessel_i(0, &ball(1.0)), Err(NumericsError::InvalidOrder(0)));
        assert_eq!(bessel_i(2, &ball(-1.0)), Err(NumericsError::NegativeArgument));
        assert_eq!(bessel_j(2, &BallReal::with_radius(0.0, 1e-3, 64)), Err(NumericsError::NegativeArgument));
    }

    #[test]
    fn values_at_one() {
        let i3 = bessel_i(3, &ball(1.0)).unwrap();
        assert!(format!("{i3}").starts_with("2.216842492"), "{i3}");
        let j3 = bessel_j(3, &ball(1.0)).unwrap();
        assert!(format!("{j3}").starts_with("1.956335398"), "{j3}");
        assert!(i3.rad_f64() < 1e-36 && j3.rad_f64() < 1e-36);
    }

    #[test]
    fn large_argument_j_keeps_precision() {
        let j = bessel_j(1, &ball(30.0)).unwrap();
        // J_1(30) = -0.11875106261662...
        assert!((j.mid_f64() + 0.118_751_062_616_622_9).abs() < 1e-15);
        assert!(j.rad_f64() < 1e-30);
    }

    #[test]
    fn ball_input_widens_output() {
        let x = BallReal::with_radius(2.0, 1e-10, 128);
        let i = bessel_i(1, &x).unwrap();
        // I_1'(2) ~ 1.43
        assert!(i.rad_f64() > 1e-10 && i.rad_f64() < 2e-10);
    }
}
