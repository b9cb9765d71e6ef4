use super::ball::BallReal;
use super::elementary::exp;
use super::NumericsError;

/// Upper incomplete Gamma `Γ(a, x)` for integer `a >= 1`:
/// `(a-1)! e^{-x} Σ_{j<a} x^j / j!`.
pub fn incomplete_gamma_int(a: i64, x: &BallReal) -> Result<BallReal, NumericsError> {
    if a < 1 {
        return Err(NumericsError::InvalidOrder(a));
    }
    if !x.is_nonnegative() {
        return Err(NumericsError::NegativeArgument);
    }
    let prec = x.prec();
    let wp = prec + 16;
    let x = x.set_prec(wp);
    let mut sum = BallReal::zero(wp);
    let mut coeff = BallReal::one(wp);
    // coeff_j = (a-1)!/j!, from j = a-1 down to 0
    let mut powers = Vec::with_capacity(a as usize);
    let mut p = BallReal::one(wp);
    for _ in 0..a {
        powers.push(p.clone());
        p = p.mul(&x);
    }
    for j in (0..a).rev() {
        sum = sum.add(&powers[j as usize].mul(&coeff));
        if j > 0 {
            coeff = coeff.mul_i64(j);
        }
    }
    Ok(exp(&x.neg()).mul(&sum).set_prec(prec))
}
