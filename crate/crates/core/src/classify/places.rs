//! Choosing a place of degree 1 to filter by.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::factor::int_prime_factors;
use crate::algebra::{BaseField, FieldElem};
use crate::function_field::place::{places_at_infinity, places_over_point};
use crate::function_field::{Curve, Place};

/// Search bound on numerator and denominator of rational `x`-coordinates.
const HEIGHT: i64 = 40;
/// Number of `x`-values tried over a prime field.
const FP_TRIES: u64 = 20_000;

/// Outcome of the search for a degree-1 place.
#[derive(Clone, Debug)]
pub enum PlaceSearch {
    Found(Place),
    /// Proven absent, e.g. by local solvability of a conic.
    None,
    /// Not found within the search range.
    NotFound,
}

/// The designated place at infinity when it has degree 1; otherwise the
/// first degree-1 finite place by increasing height of `x`.
pub fn default_place(curve: &Arc<Curve>) -> PlaceSearch {
    if let Some(p) = places_at_infinity(curve)
        .into_iter()
        .find(|p| p.degree() == 1)
    {
        return PlaceSearch::Found(p);
    }
    let field = curve.field();
    match field {
        BaseField::Prime { p } => {
            for a in 0..p.min(FP_TRIES) {
                if let Some(pl) = rational_over(curve, &field.from_i64(a as i64)) {
                    return PlaceSearch::Found(pl);
                }
            }
            PlaceSearch::NotFound
        }
        BaseField::Rational => {
            let d = curve
                .d()
                .expect("the projective line has a rational place at infinity");
            if d.degree() == Some(2) {
                let c: Vec<BigRational> = (0..3)
                    .map(|i| d.coeff(i).as_rational().unwrap().clone())
                    .collect();
                // y^2 = a X^2 + k with X = x + b/(2a).
                let a = c[2].clone();
                let k = &c[0] - &c[1] * &c[1] / (BigRational::from_integer(4.into()) * &a);
                if conic_has_point(&a, &k) == Some(false) {
                    return PlaceSearch::None;
                }
            }
            for x in small_rationals(HEIGHT) {
                if let Some(pl) = rational_over(curve, &FieldElem::Q(x)) {
                    return PlaceSearch::Found(pl);
                }
            }
            PlaceSearch::NotFound
        }
    }
}

fn rational_over(curve: &Arc<Curve>, a: &FieldElem) -> Option<Place> {
    places_over_point(curve, a)
        .into_iter()
        .find(|p| p.degree() == 1)
}

/// Rationals `u/v` with `max(|u|, v) ≤ h`, by increasing height, then by
/// absolute value, positive first.
fn small_rationals(h: i64) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    for height in 1..=h {
        let mut level = Vec::new();
        for v in 1..=height {
            for u in 0..=height {
                if u.max(v) != height || u.gcd(&v) != 1 || u == 0 {
                    continue;
                }
                level.push(BigRational::new(u.into(), v.into()));
            }
        }
        level.sort();
        for r in level {
            out.push(-r.clone());
            out.push(r);
        }
    }
    out.sort_by(|a, b| {
        let ha = a.numer().abs().max(a.denom().clone());
        let hb = b.numer().abs().max(b.denom().clone());
        ha.cmp(&hb).then(a.abs().cmp(&b.abs())).then(b.cmp(a))
    });
    out
}

/// Whether `Y^2 = a X^2 + k Z^2` has a nontrivial rational solution, by
/// checking the Hilbert symbol `(a, k)_v` at every place of Q. `None` when
/// an integer could not be factored.
pub fn conic_has_point(a: &BigRational, k: &BigRational) -> Option<bool> {
    let a = squarefree_integer(a)?;
    let k = squarefree_integer(k)?;
    if a.is_negative() && k.is_negative() {
        return Some(false);
    }
    let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
    for n in [&a, &k] {
        for (p, _) in int_prime_factors(n)? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    Some(primes.iter().all(|p| hilbert(&a, &k, p) == 1))
}

/// The squarefree integer in the square class of a nonzero rational.
fn squarefree_integer(r: &BigRational) -> Option<BigInt> {
    let n = r.numer() * r.denom();
    let mut out = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in int_prime_factors(&n)? {
        if e % 2 == 1 {
            out *= p;
        }
    }
    Some(out)
}

fn split_p(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut e = 0;
    let mut m = n.clone();
    while (&m % p).is_zero() {
        m /= p;
        e += 1;
    }
    (e, m)
}

fn legendre(u: &BigInt, p: &BigInt) -> i32 {
    let r = u.mod_floor(p).modpow(&((p - 1u32) / 2u32), p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_p` for squarefree integers and a prime `p`.
fn hilbert(a: &BigInt, b: &BigInt, p: &BigInt) -> i32 {
    let (alpha, u) = split_p(a, p);
    let (beta, v) = split_p(b, p);
    if *p == BigInt::from(2) {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
        let eps = |x: &BigInt| ((m8(x) - 1) / 2) % 2;
        let omega = |x: &BigInt| {
            let r = m8(x);
            ((r * r - 1) / 8) % 2
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let eps_p = ((p - 1u32) / 2u32).is_odd();
    let mut s = if eps_p && alpha % 2 == 1 && beta % 2 == 1 {
        -1
    } else {
        1
    };
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Brute-force search for a primitive solution with small entries.
    fn small_solution(a: i64, k: i64) -> bool {
        for x in 0..=30i64 {
            for z in 0..=30i64 {
                if x == 0 && z == 0 {
                    continue;
                }
                let rhs = a * x * x + k * z * z;
                if rhs >= 0 {
                    let r = (rhs as f64).sqrt() as i64;
                    if (r - 1..=r + 1).any(|y| y >= 0 && y * y == rhs) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn conic_solvability_matches_search() {
        for a in -12i64..=12 {
            for k in -12i64..=12 {
                if a == 0 || k == 0 {
                    continue;
                }
                let local = conic_has_point(&q(a), &q(k)).unwrap();
                // Solvable conics over Q always have a point this small for
                // such tiny coefficients.
                assert_eq!(local, small_solution(a, k), "a={a} k={k}");
            }
        }
    }

    #[test]
    fn default_places() {
        let c = Curve::parse("y^2 = -x^2 - 1", BaseField::Rational).unwrap();
        assert!(matches!(default_place(&c), PlaceSearch::None));
        let c = Curve::parse("y^2 = 3*x^2 + 1", BaseField::Rational).unwrap();
        match default_place(&c) {
            PlaceSearch::Found(p) => assert_eq!(p.id(), "P(0,1)"),
            other => panic!("{other:?}"),
        }
        let c = Curve::parse("y^2 = x^3 - x", BaseField::Rational).unwrap();
        assert!(matches!(default_place(&c), PlaceSearch::Found(p) if p.id() == "Pinf"));
        let f = BaseField::prime(10007).unwrap();
        let c = Curve::parse("y^2 = 5*x^4 + 3", f).unwrap();
        assert!(matches!(default_place(&c), PlaceSearch::Found(p) if p.degree() == 1));
    }
}
