use std::collections::BTreeMap;

use super::{
    maass_poincare_holo_coeff, maass_poincare_nonholo_coeff, PoincareError, PoincareParams, TruncationPolicy,
};
use crate::numerics::{cos_sin, exp, incomplete_gamma_int, pi, BallReal, Mag};
use crate::qseries::Rational;

/// Fourier data of a harmonic weak Maass form of weight `2 - k`:
///
/// `f = Σ principal(n) q^n + Σ_{n>=0} holo(n) q^n + Σ_{n<0} nonholo(n) Γ(k-1, 4π|n|y) q^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicExpansion {
    pub weight: i64,
    /// Exact principal part (negative exponents).
    pub principal: BTreeMap<i64, Rational>,
    pub holo: BTreeMap<i64, BallReal>,
    pub nonholo: BTreeMap<i64, BallReal>,
    /// False if any coefficient carries only a heuristic tail.
    pub certified: bool,
}

impl HarmonicExpansion {
    pub fn new(weight: i64) -> HarmonicExpansion {
        HarmonicExpansion {
            weight,
            principal: BTreeMap::new(),
            holo: BTreeMap::new(),
            nonholo: BTreeMap::new(),
            certified: true,
        }
    }

    fn check_weight(&self, k: i64) -> Result<(), PoincareError> {
        if self.weight != 2 - k {
            return Err(PoincareError::WeightMismatch { expected: 2 - k, found: self.weight });
        }
        Ok(())
    }

    fn prec(&self) -> u32 {
        self.holo.values().chain(self.nonholo.values()).map(|b| b.prec()).max().unwrap_or(crate::numerics::DEFAULT_BITS)
    }
}

/// `Q(-m,k,N)` with holomorphic coefficients `0..=n_max` and non-holomorphic
/// coefficients `-1..=-n_max`; the principal non-holomorphic term `-1/(k-2)!`
/// is folded into the coefficient at `-m`.
pub fn assemble_q(p: &PoincareParams, n_max: u64, t: &TruncationPolicy) -> Result<HarmonicExpansion, PoincareError> {
    let k = p.k as i64;
    let mut f = HarmonicExpansion::new(p.harmonic_weight());
    f.principal.insert(-(p.m as i64), Rational::from_integer(1.into()));
    for n in 0..=n_max {
        let c = maass_poincare_holo_coeff(p, n, t)?;
        f.certified &= c.certified;
        f.holo.insert(n as i64, c.value);
    }
    let bits = t.bits();
    let marker = (2..=k - 2).fold(BallReal::one(bits), |acc, i| acc.div_u64(i as u64)).neg();
    let last = n_max.max(p.m) as i64;
    for n in 1..=last {
        if n as u64 > n_max && n as u64 != p.m {
            continue;
        }
        let c = maass_poincare_nonholo_coeff(p, -n, t)?;
        f.certified &= c.certified;
        let mut v = c.value;
        if n as u64 == p.m {
            v = v.add(&marker);
        }
        f.nonholo.insert(-n, v);
    }
    Ok(f)
}

/// `D^{k-1} f`: coefficients `c⁺(n) n^{k-1}` over the principal and
/// holomorphic parts; the non-holomorphic part is annihilated.
pub fn bol_operator(f: &HarmonicExpansion, k: i64) -> Result<BTreeMap<i64, BallReal>, PoincareError> {
    f.check_weight(k)?;
    let prec = f.prec();
    let mut out = BTreeMap::new();
    for (&n, c) in &f.principal {
        let v = c * Rational::from_integer(num_bigint::BigInt::from(n).pow((k - 1) as u32));
        out.insert(n, BallReal::from_rational(&v, prec));
    }
    for (&n, c) in &f.holo {
        let v = if n == 0 { BallReal::zero(prec) } else { c.mul(&BallReal::from_i64(n, prec).pow_int(k - 1)?) };
        out.entry(n).and_modify(|e: &mut BallReal| *e = e.add(&v)).or_insert(v);
    }
    Ok(out)
}

/// `ξ_{2-k} f`: the `n`-th coefficient is `-(4π)^{k-1} c⁻(-n) n^{k-1}` for
/// `n >= 1` (coefficients are real, so conjugation is the identity).
pub fn xi_operator(f: &HarmonicExpansion, k: i64) -> Result<BTreeMap<i64, BallReal>, PoincareError> {
    f.check_weight(k)?;
    let prec = f.prec();
    let scale = pi(prec).mul_2exp(2).pow_int(k - 1)?.neg();
    let mut out = BTreeMap::new();
    for (&n, c) in &f.nonholo {
        let m = -n;
        out.insert(m, scale.mul(c).mul(&BallReal::from_i64(m, prec).pow_int(k - 1)?));
    }
    Ok(out)
}

/// Value of the truncated expansion at `z = x + iy`, as (real, imaginary) parts.
///
/// The radius includes, besides rounding, a heuristic allowance for the
/// omitted terms: twice the largest of the last three terms of each part.
pub fn eval_expansion(
    f: &HarmonicExpansion,
    k: i64,
    x: &BallReal,
    y: &BallReal,
) -> Result<(BallReal, BallReal), PoincareError> {
    f.check_weight(k)?;
    if !y.is_positive() {
        return Err(PoincareError::NonPositiveY);
    }
    let prec = x.prec().max(y.prec());
    let two_pi = pi(prec).mul_2exp(1);
    // c e^{2πinz} = c e^{-2πny} (cos 2πnx + i sin 2πnx)
    let term = |n: i64, c: &BallReal| -> (BallReal, BallReal) {
        let decay = exp(&two_pi.mul_i64(-n).mul(y));
        let (cs, sn) = cos_sin(&two_pi.mul_i64(n).mul(x));
        let a = c.mul(&decay);
        (a.mul(&cs), a.mul(&sn))
    };
    let mut re = BallReal::zero(prec);
    let mut im = BallReal::zero(prec);
    for (&n, c) in &f.principal {
        let (a, b) = term(n, &BallReal::from_rational(c, prec));
        re = re.add(&a);
        im = im.add(&b);
    }
    let mut allowance = Mag::ZERO;
    let mut tail_of = |mags: &[Mag]| {
        let worst = mags.iter().rev().take(3).fold(Mag::ZERO, |acc, m| acc.max(*m));
        allowance = allowance.add(worst.mul_2exp(1));
    };
    let mut mags = Vec::new();
    for (&n, c) in &f.holo {
        let (a, b) = term(n, c);
        mags.push(a.abs_upper().add(b.abs_upper()));
        re = re.add(&a);
        im = im.add(&b);
    }
    tail_of(&mags);
    let mut mags = Vec::new();
    // most negative exponents last, so the allowance looks at the far end
    for (&n, c) in f.nonholo.iter().rev() {
        let g = incomplete_gamma_int(k - 1, &pi(prec).mul_2exp(2).mul_i64(-n).mul(y))?;
        let (a, b) = term(n, &c.mul(&g));
        mags.push(a.abs_upper().add(b.abs_upper()));
        re = re.add(&a);
        im = im.add(&b);
    }
    tail_of(&mags);
    Ok((re.add_error(allowance), im.add_error(allowance)))
}

/// Constant-term data at each cusp: `(width, c_g(0), c_f⁺(0))`, plus the index `[Γ(1):Γ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspConstantData {
    pub entries: Vec<(u64, BallReal, BallReal)>,
    pub index: u64,
}

/// `(-1)^k / index · Σ_κ w_κ c_g(0,κ) c_f⁺(0,κ)`.
pub fn regularized_pairing_rhs(d: &CuspConstantData, k: i64) -> Result<BallReal, PoincareError> {
    if d.index == 0 {
        return Err(PoincareError::InvalidParams("index must be positive".into()));
    }
    let prec = d.entries.iter().map(|(_, a, b)| a.prec().max(b.prec())).max().unwrap_or(crate::numerics::DEFAULT_BITS);
    let mut s = BallReal::zero(prec);
    for (w, g0, f0) in &d.entries {
        if *w == 0 {
            return Err(PoincareError::InvalidParams("cusp widths must be positive".into()));
        }
        s = s.add(&g0.mul(f0).mul_i64(*w as i64));
    }
    let s = s.div_u64(d.index);
    Ok(if k % 2 == 0 { s } else { s.neg() })
}
