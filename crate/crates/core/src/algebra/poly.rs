//! Dense univariate polynomials over K.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{BaseField, FieldElem};

/// A polynomial in `x` with coefficients stored lowest degree first and no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: BaseField,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: BaseField, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: BaseField, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: BaseField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: BaseField) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        let field = c.field();
        Poly::new(field, vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let field = c.field();
        let mut v = vec![field.zero(); k];
        v.push(c);
        Poly::new(field, v)
    }

    pub fn x(field: BaseField) -> Self {
        Poly::monomial(field.one(), 1)
    }

    /// `x - a`.
    pub fn linear_root(a: &FieldElem) -> Self {
        Poly::new(a.field(), vec![-a, a.one_like()])
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Order of vanishing at `x = 0`.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scales to leading coefficient 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.lead().inv() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(self.field, v)
    }

    pub fn eval(&self, a: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Poly::new(self.field, v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().inv() {
            Some(i) if !r0.is_zero() => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            _ => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    /// Multiplicity of `p` (non-constant) as a factor of `self` (nonzero).
    pub fn multiplicity(&self, p: &Poly) -> usize {
        assert!(!p.is_constant());
        if self.is_zero() {
            return usize::MAX;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            k += 1;
        }
        k
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Formats the polynomial in the variable `var`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = !c.has_canonical_sign() && matches!(c, FieldElem::Q(_));
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                let s = mag.to_string();
                if s.contains('/') {
                    out.push_str(&format!("({s})*{mono}"));
                } else {
                    out.push_str(&format!("{s}*{mono}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        Poly::new(self.field, v)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect();
        Poly::new(self.field, v)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &'a Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut v = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp() -> BaseField {
        BaseField::prime(101).unwrap()
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-50i64..50, 0..7).prop_map(|c| Poly::from_i64s(fp(), &c))
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.deg_i64() < b.deg_i64());
        }

        #[test]
        fn xgcd_bezout(a in arb_poly(), b in arb_poly()) {
            let (g, s, t) = a.xgcd(&b);
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            if !g.is_zero() {
                prop_assert!(g.divides(&a) && g.divides(&b));
            }
        }

        #[test]
        fn compose_evaluates(a in arb_poly(), b in arb_poly(), x in 0i64..101) {
            let x = fp().from_i64(x);
            prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
        }
    }

    #[test]
    fn display_over_q() {
        let q = BaseField::Rational;
        let p = Poly::new(
            q,
            vec![
                q.from_i64(-1),
                q.zero(),
                q.from_ratio(1, 2).unwrap(),
                q.one(),
            ],
        );
        assert_eq!(p.to_string(), "x^3 + (1/2)*x^2 - 1");
    }

    #[test]
    fn multiplicity_counts_repeated_factors() {
        let f = fp();
        let lin = Poly::from_i64s(f, &[-3, 1]);
        let p = &lin.pow(3) * &Poly::from_i64s(f, &[1, 0, 1]);
        assert_eq!(p.multiplicity(&lin), 3);
        assert!(!p.is_squarefree());
    }
}
