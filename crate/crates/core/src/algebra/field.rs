//! The base field K and the coefficient rings used by local expansions.
//!
//! K is either the rationals (reduced big fractions) or a prime field of odd
//! characteristic. Elements carry their field with them so that a value is
//! self-describing; mixing elements of different fields is a logic error and
//! panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default prime used when the caller does not choose one.
pub const DEFAULT_PRIME: u64 = 10007;

/// The base field K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BaseField {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl BaseField {
    /// The prime field of order `p`. Characteristic 2 is rejected.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::invalid("characteristic 2 is not supported"));
        }
        if p >= 1 << 62 {
            return Err(Error::invalid(format!(
                "prime {p} is too large (limit 2^62)"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(BaseField::Prime { p })
    }

    pub fn default_prime() -> Self {
        BaseField::Prime { p: DEFAULT_PRIME }
    }

    /// Re-validates a deserialized field description.
    pub fn validated(self) -> Result<Self> {
        match self {
            BaseField::Rational => Ok(self),
            BaseField::Prime { p } => BaseField::prime(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rational => 0,
            BaseField::Prime { p } => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match *self {
            BaseField::Rational => FieldElem::Q(BigRational::from_integer(BigInt::from(n))),
            BaseField::Prime { p } => FieldElem::Fp {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match *self {
            BaseField::Rational => FieldElem::Q(BigRational::from_integer(n.clone())),
            BaseField::Prime { p } => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElem::Fp {
                    v: r.to_u64().expect("reduced residue fits"),
                    p,
                }
            }
        }
    }

    /// `num / den` in K; fails when `den` vanishes in K.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElem> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parses a decimal integer or `a/b` fraction.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num).map_err(|_| Error::invalid(format!("bad scalar `{s}`")))?;
        let d = BigInt::from_str(den).map_err(|_| Error::invalid(format!("bad scalar `{s}`")))?;
        self.from_bigint(&n).checked_div(&self.from_bigint(&d))
    }

    /// Iterates over all elements of a prime field in canonical order.
    /// Returns `None` for the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElem>> {
        match *self {
            BaseField::Rational => None,
            BaseField::Prime { p } => Some((0..p).map(move |v| FieldElem::Fp { v, p })),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "Q"),
            BaseField::Prime { p } => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for BaseField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(BaseField::Rational);
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("fp:"))
            .ok_or_else(|| Error::invalid(format!("field must be `Q` or `Fp:<p>`, got `{s}`")))?;
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::invalid(format!("bad prime `{rest}`")))?;
        BaseField::prime(p)
    }
}

/// An element of K.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> BaseField {
        match self {
            FieldElem::Q(_) => BaseField::Rational,
            FieldElem::Fp { p, .. } => BaseField::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_one(),
            FieldElem::Fp { v, .. } => *v == 1,
        }
    }

    pub fn zero_like(&self) -> FieldElem {
        self.field().zero()
    }

    pub fn one_like(&self) -> FieldElem {
        self.field().one()
    }

    fn binop(
        &self,
        o: &FieldElem,
        q: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        fp: impl FnOnce(u64, u64, u64) -> u64,
    ) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(q(a, b)),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: p2 }) if p == p2 => {
                FieldElem::Fp {
                    v: fp(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("field mismatch: {:?} vs {:?}", self.field(), o.field()),
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Q(q) => FieldElem::Q(q.recip()),
            FieldElem::Fp { v, p } => FieldElem::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, o: &FieldElem) -> Result<FieldElem> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e` for a signed exponent; `None` for a negative power of zero.
    pub fn powi(&self, e: i64) -> Option<FieldElem> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs()))
        }
    }

    /// Whether the element is a square in K (zero counts as a square).
    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// A square root in K, if one exists. The root returned is the one with
    /// canonical sign (see [`FieldElem::has_canonical_sign`]).
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match self {
            FieldElem::Q(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = exact_isqrt(q.numer())?;
                let d = exact_isqrt(q.denom())?;
                Some(FieldElem::Q(BigRational::new(n, d)))
            }
            FieldElem::Fp { v, p } => {
                let r = tonelli_shanks(*v, *p)?;
                let r = r.min(p - r);
                Some(FieldElem::Fp { v: r, p: *p })
            }
        }
    }

    /// Sign convention used to pick one of `±a` deterministically: positive
    /// rationals, and residues in `[0, (p-1)/2]`.
    pub fn has_canonical_sign(&self) -> bool {
        match self {
            FieldElem::Q(q) => !q.is_negative(),
            FieldElem::Fp { v, p } => *v <= (p - 1) / 2,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Q(q) => Some(q),
            FieldElem::Fp { .. } => None,
        }
    }

    /// Whether the element is an integer (always true in a prime field).
    pub fn is_integral(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_integer(),
            FieldElem::Fp { .. } => true,
        }
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order used for deterministic choices: numeric order on
/// the rationals, representative order on residues.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => a.cmp(b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) => (p, a).cmp(&(q, b)),
            (FieldElem::Q(_), FieldElem::Fp { .. }) => Ordering::Less,
            (FieldElem::Fp { .. }, FieldElem::Q(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $q:expr, $fp:expr) => {
        impl<'a> $tr<&'a FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $method(self, o: &'a FieldElem) -> FieldElem {
                self.binop(o, $q, $fp)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, o: FieldElem) -> FieldElem {
                (&self).$method(&o)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, o: &'a FieldElem) -> FieldElem {
                (&self).$method(o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, |a, b, p| {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
});
forward_binop!(Sub, sub, |a, b| a - b, |a, b, p| if a >= b {
    a - b
} else {
    a + p - b
});
forward_binop!(Mul, mul, |a, b| a * b, mul_mod);

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    /// Panics on division by zero; use [`FieldElem::checked_div`] otherwise.
    fn div(self, o: &'a FieldElem) -> FieldElem {
        self.checked_div(o).expect("division by zero in K")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Q(q) => FieldElem::Q(-q),
            FieldElem::Fp { v, p } => FieldElem::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Arithmetic needed from the coefficients of a local expansion: either K
/// itself or a quadratic extension K(√c).
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn square_root(&self) -> Option<Self>;
    /// Embeds an element of K using `self` as the context.
    fn embed(&self, c: &FieldElem) -> Self;
    /// Coordinates over K (one for K, two for a quadratic extension).
    fn components(&self) -> Vec<FieldElem>;
}

impl Scalar for FieldElem {
    fn zero_like(&self) -> Self {
        FieldElem::zero_like(self)
    }
    fn one_like(&self) -> Self {
        FieldElem::one_like(self)
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn square_root(&self) -> Option<Self> {
        self.sqrt()
    }
    fn embed(&self, c: &FieldElem) -> Self {
        c.clone()
    }
    fn components(&self) -> Vec<FieldElem> {
        vec![self.clone()]
    }
}

/// `re + im·√c` in K(√c), with `c` a non-square of K.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub re: FieldElem,
    pub im: FieldElem,
    pub c: FieldElem,
}

impl QuadElem {
    pub fn new(re: FieldElem, im: FieldElem, c: FieldElem) -> Self {
        QuadElem { re, im, c }
    }

    /// The generator √c.
    pub fn root(c: &FieldElem) -> Self {
        QuadElem::new(c.zero_like(), c.one_like(), c.clone())
    }

    pub fn norm(&self) -> FieldElem {
        &(&self.re * &self.re) - &(&self.c * &(&self.im * &self.im))
    }

    fn with(&self, re: FieldElem, im: FieldElem) -> Self {
        QuadElem::new(re, im, self.c.clone())
    }

    fn canonical_sign(&self) -> bool {
        if !self.re.is_zero() {
            self.re.has_canonical_sign()
        } else {
            self.im.has_canonical_sign()
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))", self.re, self.im, self.c)
    }
}

impl Scalar for QuadElem {
    fn zero_like(&self) -> Self {
        self.with(self.re.zero_like(), self.re.zero_like())
    }
    fn one_like(&self) -> Self {
        self.with(self.re.one_like(), self.re.zero_like())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.with(&self.re + &o.re, &self.im + &o.im)
    }
    fn minus(&self, o: &Self) -> Self {
        self.with(&self.re - &o.re, &self.im - &o.im)
    }
    fn times(&self, o: &Self) -> Self {
        let re = &(&self.re * &o.re) + &(&self.c * &(&self.im * &o.im));
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        self.with(re, im)
    }
    fn negated(&self) -> Self {
        self.with(-&self.re, -&self.im)
    }
    fn inverse(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(self.with(&self.re * &n, -(&self.im * &n)))
    }
    fn square_root(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let zero = self.re.zero_like();
        let two = self.re.field().from_i64(2);
        let root = if self.im.is_zero() {
            // a = u^2 or a = c v^2
            if let Some(u) = self.re.sqrt() {
                self.with(u, zero)
            } else {
                let v = self.re.checked_div(&self.c).ok()?.sqrt()?;
                self.with(zero, v)
            }
        } else {
            // (u + v√c)^2 = a + b√c  ⇒  u^2 = (a ± √(a^2 - c b^2)) / 2, v = b / 2u
            let n = self.norm().sqrt()?;
            let mut found = None;
            for cand in [&self.re + &n, &self.re - &n] {
                let half = cand.checked_div(&two).ok()?;
                if let Some(u) = half.sqrt() {
                    if !u.is_zero() {
                        let v = self.im.checked_div(&(&two * &u)).ok()?;
                        found = Some(self.with(u, v));
                        break;
                    }
                }
            }
            found?
        };
        debug_assert!(root.times(&root) == *self);
        Some(if root.canonical_sign() {
            root
        } else {
            root.negated()
        })
    }
    fn embed(&self, c: &FieldElem) -> Self {
        self.with(c.clone(), c.zero_like())
    }
    fn components(&self) -> Vec<FieldElem> {
        vec![self.re.clone(), self.im.clone()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two_and_composites() {
        assert!(BaseField::prime(2).is_err());
        assert!(BaseField::prime(15).is_err());
        assert!(BaseField::prime(10007).is_ok());
        assert!("Fp:2".parse::<BaseField>().is_err());
        assert_eq!("Q".parse::<BaseField>().unwrap(), BaseField::Rational);
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = BaseField::Rational;
        let a = q.from_ratio(6, -4).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!((&a + &q.from_ratio(3, 2).unwrap()).to_string(), "0");
        assert!(q.from_ratio(1, 0).is_err());
    }

    #[test]
    fn prime_field_sqrt_and_inverse() {
        let f = BaseField::prime(10007).unwrap();
        for v in [2i64, 3, 5, 1234, 10006] {
            let a = f.from_i64(v);
            assert_eq!(&a * &a.inv().unwrap(), f.one());
            if let Some(r) = a.sqrt() {
                assert_eq!(&r * &r, a);
            }
        }
        // 10007 ≡ 3 mod 4, so -1 is not a square
        assert!(f.from_i64(-1).sqrt().is_none());
        let f13 = BaseField::prime(13).unwrap();
        for v in 0..13 {
            let a = f13.from_i64(v);
            let brute = (0..13).any(|r| (r * r) % 13 == v);
            assert_eq!(a.is_square(), brute, "v = {v}");
        }
    }

    #[test]
    fn rational_sqrt() {
        let q = BaseField::Rational;
        assert_eq!(
            q.from_ratio(9, 4).unwrap().sqrt().unwrap().to_string(),
            "3/2"
        );
        assert!(q.from_i64(2).sqrt().is_none());
        assert!(q.from_i64(-1).sqrt().is_none());
    }

    #[test]
    fn quadratic_extension_sqrt() {
        // F_7(√3) = F_49: exactly half of the units are squares
        let f = BaseField::prime(7).unwrap();
        let c = f.from_i64(3);
        assert!(!c.is_square());
        let elems: Vec<QuadElem> = (0..49)
            .map(|k| QuadElem::new(f.from_i64(k / 7), f.from_i64(k % 7), c.clone()))
            .collect();
        let mut squares = 0;
        for z in &elems {
            let brute = elems.iter().any(|w| w.times(w) == *z);
            match z.square_root() {
                Some(r) => {
                    assert_eq!(r.times(&r), *z);
                    squares += 1;
                }
                None => assert!(!brute, "{z:?}"),
            }
        }
        assert_eq!(squares, 25);
        // Q(√-1): 2i = (1 + i)^2
        let q = BaseField::Rational;
        let z = QuadElem::new(q.zero(), q.from_i64(2), q.from_i64(-1));
        let r = z.square_root().unwrap();
        assert_eq!(r.times(&r), z);
        let not_sq = QuadElem::new(q.from_i64(3), q.zero(), q.from_i64(-1));
        assert!(not_sq.square_root().is_none());
    }
}
