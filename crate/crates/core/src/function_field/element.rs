//! Elements `a(x) + b(x)·y` of the function field.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{FieldElem, Poly, RatFunc};
use crate::error::{Error, Result};

use super::curve::Curve;
use super::expr::{parse_expr, Expr};

/// A polynomial element `A(x) + B(x)·y` of K[x] ⊕ K[x]·y, the numerator of a
/// function over some denominator in K[x].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Numer {
    pub a: Poly,
    pub b: Poly,
}

impl Numer {
    pub fn new(a: Poly, b: Poly) -> Self {
        Numer { a, b }
    }

    pub fn from_poly(a: Poly) -> Self {
        let f = a.field();
        Numer {
            a,
            b: Poly::zero(f),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Numer) -> Numer {
        Numer::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Numer) -> Numer {
        Numer::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn scale(&self, c: &FieldElem) -> Numer {
        Numer::new(self.a.scale(c), self.b.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> Numer {
        Numer::new(&self.a * p, &self.b * p)
    }

    /// Product reduced with `y^2 = D`; `d` is `None` on the rational curve.
    pub fn mul(&self, o: &Numer, d: Option<&Poly>) -> Numer {
        let mut a = &self.a * &o.a;
        if let Some(d) = d {
            a = &a + &(&(&self.b * &o.b) * d);
        }
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        Numer::new(a, b)
    }

    pub fn conj(&self) -> Numer {
        Numer::new(self.a.clone(), -&self.b)
    }

    /// `A^2 - B^2 D`, the norm down to K[x].
    pub fn norm(&self, d: Option<&Poly>) -> Poly {
        let aa = &self.a * &self.a;
        match d {
            Some(d) => &aa - &(&(&self.b * &self.b) * d),
            None => aa,
        }
    }

    /// Exact division by a polynomial dividing both parts.
    pub fn div_poly(&self, p: &Poly) -> Option<Numer> {
        Some(Numer::new(self.a.div_exact(p)?, self.b.div_exact(p)?))
    }

    pub fn content_gcd(&self) -> Poly {
        self.a.gcd(&self.b)
    }
}

/// An element of the function field of a curve.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFElement {
    curve: Arc<Curve>,
    a: RatFunc,
    b: RatFunc,
}

impl FFElement {
    pub fn new(curve: &Arc<Curve>, a: RatFunc, b: RatFunc) -> Result<Self> {
        if curve.is_rational() && !b.is_zero() {
            return Err(Error::invalid("y is not defined on the rational curve"));
        }
        Ok(FFElement {
            curve: curve.clone(),
            a,
            b,
        })
    }

    pub fn from_ratfunc(curve: &Arc<Curve>, a: RatFunc) -> Self {
        let f = curve.field();
        FFElement {
            curve: curve.clone(),
            a,
            b: RatFunc::zero(f),
        }
    }

    pub fn constant(curve: &Arc<Curve>, c: FieldElem) -> Self {
        FFElement::from_ratfunc(curve, RatFunc::constant(c))
    }

    pub fn zero(curve: &Arc<Curve>) -> Self {
        FFElement::constant(curve, curve.field().zero())
    }

    pub fn one(curve: &Arc<Curve>) -> Self {
        FFElement::constant(curve, curve.field().one())
    }

    pub fn x(curve: &Arc<Curve>) -> Self {
        FFElement::from_ratfunc(curve, RatFunc::from_poly(Poly::x(curve.field())))
    }

    pub fn y(curve: &Arc<Curve>) -> Result<Self> {
        let f = curve.field();
        FFElement::new(curve, RatFunc::zero(f), RatFunc::one(f))
    }

    pub fn from_numer(curve: &Arc<Curve>, n: &Numer, den: &Poly) -> Result<Self> {
        FFElement::new(
            curve,
            RatFunc::new(n.a.clone(), den.clone())?,
            RatFunc::new(n.b.clone(), den.clone())?,
        )
    }

    /// Common denominator form: returns `(N, q)` with `self = N / q`, `q` monic.
    pub fn to_numer(&self) -> (Numer, Poly) {
        let q = lcm(self.a.den(), self.b.den());
        let a = self.a.num() * &q.div_exact(self.a.den()).unwrap();
        let b = self.b.num() * &q.div_exact(self.b.den()).unwrap();
        (Numer::new(a, b), q)
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.den().is_one() && self.a.num().is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check(&self, o: &FFElement) {
        assert!(self.curve == o.curve, "elements live on different curves");
    }

    pub fn add(&self, o: &FFElement) -> FFElement {
        self.check(o);
        FFElement {
            curve: self.curve.clone(),
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
        }
    }

    pub fn sub(&self, o: &FFElement) -> FFElement {
        self.check(o);
        FFElement {
            curve: self.curve.clone(),
            a: self.a.sub(&o.a),
            b: self.b.sub(&o.b),
        }
    }

    pub fn neg(&self) -> FFElement {
        FFElement {
            curve: self.curve.clone(),
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> FFElement {
        FFElement {
            curve: self.curve.clone(),
            a: self.a.scale(c),
            b: self.b.scale(c),
        }
    }

    pub fn mul(&self, o: &FFElement) -> FFElement {
        self.check(o);
        let mut a = self.a.mul(&o.a);
        if let Some(d) = self.curve.d() {
            let bb = self.b.mul(&o.b).mul(&RatFunc::from_poly(d.clone()));
            a = a.add(&bb);
        }
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        FFElement {
            curve: self.curve.clone(),
            a,
            b,
        }
    }

    pub fn conj(&self) -> FFElement {
        FFElement {
            curve: self.curve.clone(),
            a: self.a.clone(),
            b: self.b.neg(),
        }
    }

    /// `a^2 - b^2 D` in K(x).
    pub fn norm(&self) -> RatFunc {
        let aa = self.a.mul(&self.a);
        match self.curve.d() {
            Some(d) => aa.sub(&self.b.mul(&self.b).mul(&RatFunc::from_poly(d.clone()))),
            None => aa,
        }
    }

    pub fn inv(&self) -> Result<FFElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm().inv()?;
        Ok(FFElement {
            curve: self.curve.clone(),
            a: self.a.mul(&n),
            b: self.b.neg().mul(&n),
        })
    }

    pub fn div(&self, o: &FFElement) -> Result<FFElement> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FFElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FFElement::one(&self.curve);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Evaluates a syntax tree on `curve`.
    pub fn from_expr(curve: &Arc<Curve>, e: &Expr) -> Result<FFElement> {
        Ok(match e {
            Expr::Int(n) => FFElement::constant(curve, curve.field().from_bigint(n)),
            Expr::X => FFElement::x(curve),
            Expr::Y => {
                FFElement::y(curve).map_err(|_| Error::invalid("`y` used on the rational curve"))?
            }
            Expr::Neg(a) => FFElement::from_expr(curve, a)?.neg(),
            Expr::Add(a, b) => {
                FFElement::from_expr(curve, a)?.add(&FFElement::from_expr(curve, b)?)
            }
            Expr::Sub(a, b) => {
                FFElement::from_expr(curve, a)?.sub(&FFElement::from_expr(curve, b)?)
            }
            Expr::Mul(a, b) => {
                FFElement::from_expr(curve, a)?.mul(&FFElement::from_expr(curve, b)?)
            }
            Expr::Div(a, b) => {
                FFElement::from_expr(curve, a)?.div(&FFElement::from_expr(curve, b)?)?
            }
            Expr::Pow(a, k) => FFElement::from_expr(curve, a)?.pow(*k)?,
        })
    }

    pub fn parse(curve: &Arc<Curve>, s: &str) -> Result<FFElement> {
        FFElement::from_expr(curve, &parse_expr(s)?)
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b).div_exact(&a.gcd(b)).unwrap().monic()
}

fn fmt_ratfunc(r: &RatFunc) -> String {
    if r.den().is_one() {
        r.num().to_string()
    } else {
        format!("({})/({})", r.num(), r.den())
    }
}

/// Formats as an expression accepted by [`FFElement::parse`].
impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_ratfunc(&self.a));
        }
        let ypart = if self.b.den().is_one() && self.b.num().is_one() {
            "y".to_string()
        } else if self.b.den().is_one() {
            format!("({})*y", self.b.num())
        } else {
            format!("({})*y/({})", self.b.num(), self.b.den())
        };
        if self.a.is_zero() {
            f.write_str(&ypart)
        } else {
            write!(f, "{} + {ypart}", fmt_ratfunc(&self.a))
        }
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;
    use proptest::prelude::*;

    fn elliptic() -> Arc<Curve> {
        Curve::parse("y^2 = x^3 - x", BaseField::Rational).unwrap()
    }

    #[test]
    fn y_squared_reduces() {
        let c = elliptic();
        let y = FFElement::y(&c).unwrap();
        assert_eq!(y.mul(&y), FFElement::parse(&c, "x^3 - x").unwrap());
        let a = FFElement::parse(&c, "1 + y").unwrap();
        let b = FFElement::parse(&c, "1 - y").unwrap();
        assert_eq!(a.mul(&b), FFElement::parse(&c, "1 - x^3 + x").unwrap());
    }

    #[test]
    fn y_rejected_on_rational_curve() {
        let c = Curve::rational(BaseField::Rational);
        assert!(FFElement::parse(&c, "x + y").is_err());
        assert_eq!(FFElement::parse(&c, "1/0"), Err(Error::DivisionByZero));
    }

    fn arb_elem() -> impl Strategy<Value = String> {
        let atom = prop_oneof![
            Just("x".to_string()),
            Just("y".to_string()),
            (-5i64..6).prop_map(|n| format!("({n})")),
        ];
        atom.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} * {b})")),
                (inner.clone(), inner).prop_map(|(a, b)| format!("({a} - {b})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn inverse_and_display_roundtrip(s in arb_elem()) {
            let c = elliptic();
            let f = FFElement::parse(&c, &s).unwrap();
            prop_assume!(!f.is_zero());
            let g = f.inv().unwrap();
            prop_assert_eq!(f.mul(&g), FFElement::one(&c));
            let back = FFElement::parse(&c, &g.to_string()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
