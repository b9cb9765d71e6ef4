//! Truncated Laurent series in `q` with exact rational coefficients.
//!
//! A series stores the coefficients of `q^min_exp .. q^(trunc-1)`; everything
//! at or above `trunc` is unknown. Stored series are normalized so that the
//! first stored coefficient is nonzero (an exactly-zero series keeps
//! `min_exp == trunc` and no coefficients).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QSeriesError, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentQSeries {
    min_exp: i64,
    coeffs: Vec<Rational>,
    trunc: i64,
}

impl LaurentQSeries {
    /// Series with `coeffs[i]` at `q^(min_exp + i)`, known up to `min_exp + coeffs.len()`.
    pub fn new(min_exp: i64, coeffs: Vec<Rational>) -> LaurentQSeries {
        let trunc = min_exp + coeffs.len() as i64;
        LaurentQSeries::normalized(min_exp, coeffs, trunc)
    }

    /// Same as [`new`](Self::new) with an explicit truncation order, which must
    /// equal `min_exp + coeffs.len()`.
    pub fn with_trunc(min_exp: i64, coeffs: Vec<Rational>, trunc: i64) -> Result<LaurentQSeries, QSeriesError> {
        if trunc < min_exp || (trunc - min_exp) as usize != coeffs.len() {
            return Err(QSeriesError::Malformed(format!(
                "length {} does not match min_exp={min_exp} trunc={trunc}",
                coeffs.len()
            )));
        }
        Ok(LaurentQSeries::normalized(min_exp, coeffs, trunc))
    }

    pub fn from_integers(min_exp: i64, coeffs: Vec<BigInt>) -> LaurentQSeries {
        LaurentQSeries::new(min_exp, coeffs.into_iter().map(Rational::from_integer).collect())
    }

    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> LaurentQSeries {
        LaurentQSeries::new(min_exp, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// The zero series known up to `trunc`.
    pub fn zero(trunc: i64) -> LaurentQSeries {
        LaurentQSeries { min_exp: trunc, coeffs: Vec::new(), trunc }
    }

    /// `c * q^e`, known up to `trunc`.
    pub fn monomial(e: i64, c: Rational, trunc: i64) -> LaurentQSeries {
        if trunc <= e {
            return LaurentQSeries::zero(trunc);
        }
        let mut coeffs = vec![Rational::zero(); (trunc - e) as usize];
        coeffs[0] = c;
        LaurentQSeries::normalized(e, coeffs, trunc)
    }

    pub fn constant(c: Rational, trunc: i64) -> LaurentQSeries {
        LaurentQSeries::monomial(0, c, trunc)
    }

    pub fn one(trunc: i64) -> LaurentQSeries {
        LaurentQSeries::constant(Rational::one(), trunc)
    }

    fn normalized(min_exp: i64, mut coeffs: Vec<Rational>, trunc: i64) -> LaurentQSeries {
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        if lead > 0 {
            coeffs.drain(..lead);
        }
        LaurentQSeries { min_exp: min_exp + lead as i64, coeffs, trunc }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exponent of the first nonzero coefficient, or `trunc` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.min_exp
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficient of `q^n`, or `None` when `n >= trunc`.
    pub fn get(&self, n: i64) -> Option<Rational> {
        if n >= self.trunc {
            None
        } else if n < self.min_exp {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(n - self.min_exp) as usize].clone())
        }
    }

    /// Borrowing lookup for a known, stored exponent.
    fn at(&self, n: i64) -> Option<&Rational> {
        if n < self.min_exp || n >= self.trunc {
            None
        } else {
            Some(&self.coeffs[(n - self.min_exp) as usize])
        }
    }

    pub fn coefficient(&self, n: i64) -> Result<Rational, QSeriesError> {
        self.get(n).ok_or(QSeriesError::Unknown { exponent: n, trunc: self.trunc })
    }

    /// Exponent/coefficient pairs of the nonzero known coefficients.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Drops all coefficients at exponents `>= t`.
    pub fn truncate(&self, t: i64) -> LaurentQSeries {
        if t >= self.trunc {
            return self.clone();
        }
        if t <= self.min_exp {
            return LaurentQSeries::zero(t);
        }
        let coeffs = self.coeffs[..(t - self.min_exp) as usize].to_vec();
        LaurentQSeries::normalized(self.min_exp, coeffs, t)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> LaurentQSeries {
        LaurentQSeries { min_exp: self.min_exp + k, coeffs: self.coeffs.clone(), trunc: self.trunc + k }
    }

    pub fn neg(&self) -> LaurentQSeries {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &Rational) -> LaurentQSeries {
        if s.is_zero() {
            return LaurentQSeries::zero(self.trunc);
        }
        self.map_coeffs(|c| c * s)
    }

    fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> LaurentQSeries {
        LaurentQSeries::normalized(self.min_exp, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    /// Rebuilds a series from exponent-indexed values over `[lo, hi)`.
    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> Rational) -> LaurentQSeries {
        if hi <= lo {
            return LaurentQSeries::zero(hi);
        }
        LaurentQSeries::normalized(lo, (lo..hi).map(f).collect(), hi)
    }

    pub fn add(&self, o: &LaurentQSeries) -> LaurentQSeries {
        let trunc = self.trunc.min(o.trunc);
        let lo = self.min_exp.min(o.min_exp).min(trunc);
        LaurentQSeries::from_fn(lo, trunc, |n| {
            let a = self.at(n);
            let b = o.at(n);
            match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Rational::zero(),
            }
        })
    }

    pub fn sub(&self, o: &LaurentQSeries) -> LaurentQSeries {
        self.add(&o.neg())
    }

    /// Truncation order of a product: each factor's unknown tail is shifted by
    /// the other factor's valuation.
    fn product_trunc(&self, o: &LaurentQSeries) -> i64 {
        (self.trunc + o.min_exp).min(o.trunc + self.min_exp)
    }

    pub fn mul(&self, o: &LaurentQSeries) -> LaurentQSeries {
        let trunc = self.product_trunc(o);
        let lo = self.min_exp + o.min_exp;
        if self.is_zero() || o.is_zero() || trunc <= lo {
            return LaurentQSeries::zero(trunc);
        }
        let len = (trunc - lo) as usize;
        // walk the sparser factor
        let (sparse, dense) = if self.nnz() <= o.nnz() { (self, o) } else { (o, self) };
        if self.is_integral() && o.is_integral() {
            let d: Vec<BigInt> = dense.coeffs.iter().map(|c| c.to_integer()).collect();
            let mut out = vec![BigInt::zero(); len];
            for (i, c) in sparse.coeffs.iter().enumerate() {
                if c.is_zero() || i >= len {
                    continue;
                }
                let c = c.to_integer();
                for (j, dj) in d.iter().enumerate().take(len - i) {
                    if !dj.is_zero() {
                        out[i + j] += &c * dj;
                    }
                }
            }
            return LaurentQSeries::normalized(lo, out.into_iter().map(Rational::from_integer).collect(), trunc);
        }
        let mut out = vec![Rational::zero(); len];
        for (i, c) in sparse.coeffs.iter().enumerate() {
            if c.is_zero() || i >= len {
                continue;
            }
            for (j, dj) in dense.coeffs.iter().enumerate().take(len - i) {
                if !dj.is_zero() {
                    out[i + j] += c * dj;
                }
            }
        }
        LaurentQSeries::normalized(lo, out, trunc)
    }

    fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `self / o`, by the triangular recurrence on `o`'s nonzero coefficients.
    pub fn div(&self, o: &LaurentQSeries) -> Result<LaurentQSeries, QSeriesError> {
        if o.is_zero() {
            return Err(QSeriesError::NotInvertible);
        }
        let shift = o.min_exp;
        let rel = (self.trunc - self.min_exp).min(o.trunc - o.min_exp);
        let lo = self.min_exp - shift;
        let trunc = lo + rel;
        if self.is_zero() {
            return Ok(LaurentQSeries::zero(self.trunc - shift));
        }
        let len = rel as usize;
        let lead = &o.coeffs[0];
        let tail: Vec<(usize, &Rational)> =
            o.coeffs.iter().enumerate().skip(1).filter(|(j, c)| !c.is_zero() && *j < len).collect();
        let unit = lead.is_integer() && lead.to_integer().abs().is_one();
        if unit && self.is_integral() && o.is_integral() {
            let sign = lead.to_integer();
            let tail: Vec<(usize, BigInt)> = tail.iter().map(|(j, c)| (*j, c.to_integer())).collect();
            let mut out: Vec<BigInt> = Vec::with_capacity(len);
            for i in 0..len {
                let mut acc = self.coeffs[i].to_integer();
                for (j, b) in &tail {
                    if *j > i {
                        break;
                    }
                    acc -= b * &out[i - j];
                }
                out.push(if sign.is_negative() { -acc } else { acc });
            }
            return Ok(LaurentQSeries::normalized(lo, out.into_iter().map(Rational::from_integer).collect(), trunc));
        }
        let inv_lead = lead.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = self.coeffs[i].clone();
            for (j, b) in &tail {
                if *j > i {
                    break;
                }
                acc -= *b * &out[i - j];
            }
            out.push(acc * &inv_lead);
        }
        Ok(LaurentQSeries::normalized(lo, out, trunc))
    }

    /// Multiplicative inverse; the relative precision is preserved.
    pub fn inv(&self) -> Result<LaurentQSeries, QSeriesError> {
        if self.is_zero() {
            return Err(QSeriesError::NotInvertible);
        }
        let rel = self.trunc - self.min_exp;
        LaurentQSeries::one(rel).div(self)
    }

    /// Integer power; negative exponents go through [`inv`](Self::inv).
    pub fn pow(&self, e: i64) -> Result<LaurentQSeries, QSeriesError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let rel = if self.is_zero() { self.trunc.max(0) } else { self.trunc - self.min_exp };
        let mut acc = LaurentQSeries::one(rel);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Textual form: a `qseries min_exp=<v> trunc=<t>` header, then `n p/q`
    /// for each nonzero coefficient (integers without the `/1`).
    pub fn serialize(&self) -> String {
        let mut s = format!("qseries min_exp={} trunc={}\n", self.min_exp, self.trunc);
        for (n, c) in self.nonzero_terms() {
            s.push_str(&format!("{n} {}\n", format_rational(c)));
        }
        s
    }

    pub fn parse(text: &str) -> Result<LaurentQSeries, QSeriesError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| QSeriesError::Parse { line: 1, msg: "empty input".into() })?;
        let (min_exp, trunc) = parse_header(header).ok_or_else(|| QSeriesError::Parse {
            line: 1,
            msg: format!("expected `qseries min_exp=<v> trunc=<t>`, got `{}`", header.trim()),
        })?;
        if trunc < min_exp {
            return Err(QSeriesError::Parse { line: 1, msg: "trunc below min_exp".into() });
        }
        let mut coeffs = vec![Rational::zero(); (trunc - min_exp) as usize];
        for (i, line) in lines {
            let lineno = i + 1;
            let err = |msg: String| QSeriesError::Parse { line: lineno, msg };
            let mut parts = line.split_whitespace();
            let (Some(n), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("expected `n p/q`, got `{}`", line.trim())));
            };
            let n: i64 = n.parse().map_err(|_| err(format!("bad exponent `{n}`")))?;
            let c = parse_rational(c).ok_or_else(|| err(format!("bad rational `{c}`")))?;
            if n < min_exp || n >= trunc {
                return Err(err(format!("exponent {n} outside [{min_exp}, {trunc})")));
            }
            coeffs[(n - min_exp) as usize] = c;
        }
        Ok(LaurentQSeries::normalized(min_exp, coeffs, trunc))
    }
}

fn parse_header(line: &str) -> Option<(i64, i64)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "qseries" {
        return None;
    }
    let min_exp = parts.next()?.strip_prefix("min_exp=")?.parse().ok()?;
    let trunc = parts.next()?.strip_prefix("trunc=")?.parse().ok()?;
    parts.next().is_none().then_some((min_exp, trunc))
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for LaurentQSeries {
    /// Human-readable `c q^n + ... + O(q^trunc)`, listing at most 12 terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.nonzero_terms().take(12) {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match n {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{n}"),
            };
            if a.is_one() && n != 0 {
                write!(f, "{mono}")?;
            } else if n == 0 {
                write!(f, "{}", format_rational(&a))?;
            } else {
                write!(f, "{}*{mono}", format_rational(&a))?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_q = LaurentQSeries::from_i64s(0, &[1, -1, 0, 0, 0, 0, 0, 0]);
        let inv = one_minus_q.inv().unwrap();
        assert_eq!(inv, LaurentQSeries::from_i64s(0, &[1; 8]));
        assert_eq!(one_minus_q.mul(&inv), LaurentQSeries::one(8));
    }

    #[test]
    fn truncation_is_tracked_through_products() {
        let a = LaurentQSeries::from_i64s(-1, &[1, 0, 5]); // trunc 2
        let b = LaurentQSeries::from_i64s(0, &[1, 1, 1, 1, 1, 1]); // trunc 6
        let p = a.mul(&b);
        assert_eq!(p.min_exp(), -1);
        assert_eq!(p.trunc_order(), 2);
        assert_eq!(p.get(1), Some(r(6)));
        assert_eq!(p.get(2), None);
        let s = a.add(&b);
        assert_eq!(s.trunc_order(), 2);
    }

    #[test]
    fn leading_zeros_are_stripped() {
        let a = LaurentQSeries::from_i64s(-2, &[0, 0, 3, 4]);
        assert_eq!(a.min_exp(), 0);
        assert_eq!(a.trunc_order(), 2);
        assert_eq!(a.get(-5), Some(r(0)));
    }

    #[test]
    fn zero_series_behaviour() {
        let z = LaurentQSeries::zero(5);
        assert!(z.is_zero());
        assert_eq!(z.inv(), Err(QSeriesError::NotInvertible));
        let a = LaurentQSeries::from_i64s(1, &[2, 3]);
        let p = z.mul(&a);
        assert!(p.is_zero());
        assert_eq!(p.trunc_order(), 6);
    }

    #[test]
    fn rational_division() {
        let a = LaurentQSeries::new(0, vec![r(1), r(0), r(0), r(0)]);
        let b = LaurentQSeries::new(0, vec![r(2), r(1), r(0), r(0)]);
        let c = a.div(&b).unwrap();
        assert_eq!(c.get(0), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(c.get(1), Some(Rational::new((-1).into(), 4.into())));
        assert_eq!(c.get(3), Some(Rational::new((-1).into(), 16.into())));
        assert_eq!(c.mul(&b).truncate(4), a);
    }

    #[test]
    fn negative_power() {
        let a = LaurentQSeries::from_i64s(1, &[1, 1, 0, 0]);
        let p = a.pow(-2).unwrap();
        assert_eq!(p.min_exp(), -2);
        assert_eq!(p.trunc_order(), 2);
        assert_eq!(p.get(-1), Some(r(-2)));
        assert_eq!(p.get(1), Some(r(-4)));
        assert_eq!(a.pow(0).unwrap(), LaurentQSeries::one(4));
    }

    #[test]
    fn serialization_round_trip() {
        let a = LaurentQSeries::new(-1, vec![r(1), r(0), Rational::new((-3).into(), 7.into()), r(0)]);
        let text = a.serialize();
        assert_eq!(text, "qseries min_exp=-1 trunc=3\n-1 1\n1 -3/7\n");
        assert_eq!(LaurentQSeries::parse(&text).unwrap(), a);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match LaurentQSeries::parse("series 1 2\n") {
            Err(QSeriesError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match LaurentQSeries::parse("qseries min_exp=0 trunc=3\n0 1\n1 x/2\n") {
            Err(QSeriesError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(LaurentQSeries::parse("qseries min_exp=0 trunc=3\n5 1\n").is_err());
    }

    #[test]
    fn display_form() {
        let a = LaurentQSeries::from_i64s(-1, &[1, 744, 196884]);
        assert_eq!(a.to_string(), "q^-1 + 744 + 196884*q + O(q^2)");
    }
}
