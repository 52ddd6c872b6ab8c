//! Truncated Laurent series in a local parameter `t`.
//!
//! A series knows its absolute precision: every coefficient of `t^k` with
//! `k < abs` is exact, nothing is known beyond. `abs == None` marks an exact
//! (finite) series.

use std::fmt;

use super::field::{FieldElem, Scalar};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Series<C: Scalar> {
    one: C,
    /// Exponent of `coeffs[0]`; equals `abs` for a series zero to precision.
    start: i64,
    /// Leading coefficient is nonzero whenever the vector is nonempty.
    coeffs: Vec<C>,
    abs: Option<i64>,
}

impl<C: Scalar> Series<C> {
    fn build(one: &C, start: i64, mut coeffs: Vec<C>, abs: Option<i64>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let (start, coeffs) = match lead {
            Some(k) => {
                coeffs.drain(..k);
                (start + k as i64, coeffs)
            }
            None => (abs.unwrap_or(0), Vec::new()),
        };
        let mut s = Series {
            one: one.clone(),
            start,
            coeffs,
            abs,
        };
        if let Some(a) = abs {
            let keep = (a - s.start).max(0) as usize;
            s.coeffs.truncate(keep);
            if s.coeffs.is_empty() {
                s.start = a;
            }
        }
        while s.coeffs.last().is_some_and(|c| c.is_zero()) {
            s.coeffs.pop();
        }
        s
    }

    pub fn zero(one: &C) -> Self {
        Series::build(one, 0, Vec::new(), None)
    }

    /// Zero known up to (excluding) `t^abs`.
    pub fn zero_to(one: &C, abs: i64) -> Self {
        Series::build(one, abs, Vec::new(), Some(abs))
    }

    pub fn constant(c: C) -> Self {
        let one = c.one_like();
        Series::build(&one, 0, vec![c], None)
    }

    /// `c·t^k`, exact.
    pub fn monomial(c: C, k: i64) -> Self {
        let one = c.one_like();
        Series::build(&one, k, vec![c], None)
    }

    /// Series with coefficients `coeffs[i]` at `t^(start + i)`.
    pub fn from_coeffs(one: &C, start: i64, coeffs: Vec<C>, abs: Option<i64>) -> Self {
        Series::build(one, start, coeffs, abs)
    }

    pub fn one_elem(&self) -> &C {
        &self.one
    }

    pub fn abs(&self) -> Option<i64> {
        self.abs
    }

    pub fn is_exact(&self) -> bool {
        self.abs.is_none()
    }

    /// True for the exact zero series.
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.abs.is_none()
    }

    /// Valuation, or `None` when the series vanishes to its precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Lower bound for the valuation (exact when nonzero to precision).
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Number of known coefficients from the leading term on.
    pub fn rel_prec(&self) -> Option<i64> {
        self.abs.map(|a| a - self.start)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> Result<C> {
        if let Some(a) = self.abs {
            if k >= a {
                return Err(Error::PrecisionExhausted(format!(
                    "coefficient t^{k} requested, precision {a}"
                )));
            }
        }
        if k < self.start {
            return Ok(self.one.zero_like());
        }
        Ok(self
            .coeffs
            .get((k - self.start) as usize)
            .cloned()
            .unwrap_or_else(|| self.one.zero_like()))
    }

    /// Drops all terms at or beyond `t^abs`.
    pub fn truncate(&self, abs: i64) -> Self {
        let a = self.abs.map_or(abs, |s| s.min(abs));
        Series::build(&self.one, self.start, self.coeffs.clone(), Some(a))
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|c| c.negated()).collect();
        Series::build(&self.one, self.start, c, self.abs)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Series::zero(&self.one);
        }
        let c = self.coeffs.iter().map(|c| c.times(k)).collect();
        Series::build(&self.one, self.start, c, self.abs)
    }

    pub fn add(&self, o: &Self) -> Self {
        let abs = min_opt(self.abs, o.abs);
        let lo = self.start.min(o.start);
        let hi_a = self.start + self.coeffs.len() as i64;
        let hi_b = o.start + o.coeffs.len() as i64;
        let mut hi = hi_a.max(hi_b);
        if let Some(a) = abs {
            hi = hi.min(a);
        }
        if hi <= lo {
            return Series::build(&self.one, lo, Vec::new(), abs);
        }
        let c = (lo..hi)
            .map(|k| {
                let x = self.coeff_raw(k);
                let y = o.coeff_raw(k);
                x.plus(&y)
            })
            .collect();
        Series::build(&self.one, lo, c, abs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn coeff_raw(&self, k: i64) -> C {
        if k < self.start {
            return self.one.zero_like();
        }
        self.coeffs
            .get((k - self.start) as usize)
            .cloned()
            .unwrap_or_else(|| self.one.zero_like())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Series::zero(&self.one);
        }
        let abs = min_opt(self.abs.map(|a| a + o.start), o.abs.map(|a| a + self.start));
        let start = self.start + o.start;
        let mut n = (self.coeffs.len() + o.coeffs.len()).saturating_sub(1);
        if let Some(a) = abs {
            n = n.min((a - start).max(0) as usize);
        }
        let mut c = vec![self.one.zero_like(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] = c[i + j].plus(&x.times(y));
            }
        }
        Series::build(&self.one, start, c, abs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::constant(self.one.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse with at most `rel` known coefficients.
    pub fn inv(&self, rel: usize) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| {
            Error::PrecisionExhausted("inverting a series that vanishes to precision".into())
        })?;
        let n = match self.rel_prec() {
            Some(r) => (r as usize).min(rel),
            None => rel,
        };
        let a0inv = self.coeffs[0].inverse().ok_or(Error::DivisionByZero)?;
        let mut b: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(a0inv.clone());
                continue;
            }
            let mut s = self.one.zero_like();
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = s.plus(&self.coeffs[i].times(&b[k - i]));
            }
            b.push(s.times(&a0inv).negated());
        }
        Ok(Series::build(&self.one, -v, b, Some(-v + n as i64)))
    }

    /// Square root whose leading coefficient is `lead` (which must square to
    /// the leading coefficient of `self`), with at most `rel` coefficients.
    pub fn sqrt_with_lead(&self, lead: &C, rel: usize) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| {
            Error::PrecisionExhausted("square root of a series that vanishes to precision".into())
        })?;
        if v % 2 != 0 {
            return Err(Error::NotSquare("series of odd valuation".into()));
        }
        if lead.times(lead) != self.coeffs[0] {
            return Err(Error::NotSquare(format!("{:?}", self.coeffs[0])));
        }
        let n = match self.rel_prec() {
            Some(r) => (r as usize).min(rel),
            None => rel,
        };
        let two = self.one.plus(&self.one);
        let inv2s0 = two.times(lead).inverse().ok_or(Error::DivisionByZero)?;
        let mut s: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                s.push(lead.clone());
                continue;
            }
            let mut acc = self.coeff_raw(v + k as i64);
            for i in 1..k {
                acc = acc.minus(&s[i].times(&s[k - i]));
            }
            s.push(acc.times(&inv2s0));
        }
        Ok(Series::build(&self.one, v / 2, s, Some(v / 2 + n as i64)))
    }

    /// Evaluates a polynomial over K at this series.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let mut acc = Series::zero(&self.one);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Series::constant(self.one.embed(c)));
        }
        acc
    }

    /// Known coefficients from `t^lo` to `t^(hi-1)`, failing if the series is
    /// not known that far.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Vec<C>> {
        (lo..hi).map(|k| self.coeff(k)).collect()
    }
}

impl Series<FieldElem> {
    /// Exact series of a polynomial in `t`.
    pub fn from_poly(p: &Poly) -> Self {
        let one = p.field().one();
        Series::build(&one, 0, p.coeffs().to_vec(), None)
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Scalar> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}*t^{}", c, self.start + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        match self.abs {
            Some(a) => write!(f, " + O(t^{a})"),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{BaseField, QuadElem};
    use proptest::prelude::*;

    fn q() -> BaseField {
        BaseField::Rational
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let one = q().one();
        let s = Series::from_coeffs(&one, 0, vec![one.clone(), -&one], None);
        let i = s.inv(6).unwrap();
        for k in 0..6 {
            assert_eq!(i.coeff(k).unwrap(), one);
        }
        assert!(i.coeff(6).is_err());
        let prod = s.mul(&i);
        assert_eq!(prod.valuation(), Some(0));
        assert_eq!(prod.abs(), Some(6));
        for k in 1..6 {
            assert!(prod.coeff(k).unwrap().is_zero());
        }
    }

    #[test]
    fn sqrt_of_one_plus_t() {
        let f = q();
        let one = f.one();
        let s = Series::from_coeffs(&one, 0, vec![one.clone(), one.clone()], None);
        let r = s.sqrt_with_lead(&one, 5).unwrap();
        // binomial series (1+t)^(1/2): 1, 1/2, -1/8, 1/16, -5/128
        let expect = [(1, 1), (1, 2), (-1, 8), (1, 16), (-5, 128)];
        for (k, (a, b)) in expect.iter().enumerate() {
            assert_eq!(r.coeff(k as i64).unwrap(), f.from_ratio(*a, *b).unwrap());
        }
        let back = r.mul(&r);
        assert_eq!(back.truncate(5), s.truncate(5));
    }

    #[test]
    fn cancellation_lowers_relative_precision() {
        let one = q().one();
        let a = Series::from_coeffs(
            &one,
            0,
            vec![one.clone(), one.clone(), one.clone()],
            Some(3),
        );
        let b = Series::from_coeffs(&one, 0, vec![one.clone(), one.clone()], None);
        let d = a.sub(&b);
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.rel_prec(), Some(1));
        let z = d.sub(&d);
        assert_eq!(z.valuation(), None);
        assert_eq!(z.abs(), Some(3));
    }

    #[test]
    fn quadratic_coefficients() {
        let f = BaseField::prime(7).unwrap();
        let c = f.from_i64(3);
        let one = QuadElem::new(f.one(), f.zero(), c.clone());
        let r = QuadElem::root(&c);
        let s = Series::from_coeffs(&one, 0, vec![r.clone(), one.clone()], None);
        let inv = s.inv(4).unwrap();
        let p = s.mul(&inv);
        assert_eq!(p.coeff(0).unwrap(), one);
        assert!(p.coeff(3).unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(c in prop::collection::vec(-20i64..20, 1..6)) {
            let f = q();
            let one = f.one();
            let mut v: Vec<FieldElem> = vec![one.clone()];
            v.extend(c.iter().map(|&x| f.from_i64(x)));
            let base = Series::from_coeffs(&one, 0, v, None);
            let sq = base.mul(&base);
            let r = sq.sqrt_with_lead(&one, 8).unwrap();
            prop_assert_eq!(r.truncate(8), base.truncate(8));
        }
    }
}
