//! Rational functions in `x` over K.

use std::fmt;

use super::field::{BaseField, FieldElem};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let l = den.lead().inv().unwrap();
        Ok(RatFunc {
            num: num.scale(&l),
            den: den.scale(&l),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let f = p.field();
        RatFunc {
            num: p,
            den: Poly::one(f),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn zero(field: BaseField) -> Self {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: BaseField) -> Self {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> BaseField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &FieldElem) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Degree of the numerator minus degree of the denominator (`None` for 0).
    pub fn degree(&self) -> Option<i64> {
        self.num.degree().map(|d| d as i64 - self.den.deg_i64())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let q = BaseField::Rational;
        let a = Poly::from_i64s(q, &[-1, 0, 1]);
        let b = Poly::from_i64s(q, &[2, 2]);
        let r = RatFunc::new(a, b).unwrap();
        assert_eq!(r.to_string(), "(1/2)*x - 1/2");
        assert_eq!(r.den().degree(), Some(0));
        let s = r.sub(&r);
        assert!(s.is_zero());
        assert!(s.inv().is_err());
    }
}
