//! Factorization of univariate polynomials over K.
//!
//! Over a prime field the factorization is complete (squarefree split,
//! distinct-degree split, Cantor–Zassenhaus). Over the rationals linear
//! factors are found by the rational root test and quartics are split into
//! quadratics when possible; remaining factors of degree at most three are
//! irreducible, larger ones are reported as not certified.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{is_prime_u64, mul_mod, BaseField, FieldElem};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A monic factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub mult: usize,
    /// False only over the rationals, for factors of degree ≥ 4 that could
    /// not be split or proven irreducible.
    pub irreducible: bool,
}

/// Factors a nonzero polynomial into monic factors, sorted by degree and
/// then coefficients. Constants give an empty list.
pub fn factor(f: &Poly) -> Vec<Factor> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    match f.field() {
        BaseField::Prime { p } => {
            for (g, m) in squarefree_fp(&f.monic(), p) {
                for h in distinct_degree(&g, p) {
                    for k in equal_degree(&h.0, h.1, p) {
                        out.push(Factor {
                            poly: k,
                            mult: m,
                            irreducible: true,
                        });
                    }
                }
            }
        }
        BaseField::Rational => {
            for (g, m) in squarefree_q(&f.monic()) {
                for (k, ok) in split_q(&g) {
                    out.push(Factor {
                        poly: k,
                        mult: m,
                        irreducible: ok,
                    });
                }
            }
        }
    }
    sort_factors(&mut out);
    out
}

/// Like [`factor`] but fails if some factor is not certified irreducible.
pub fn irreducible_factors(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    factor(f)
        .into_iter()
        .map(|fa| {
            if fa.irreducible {
                Ok((fa.poly, fa.mult))
            } else {
                Err(Error::Unsplit(fa.poly.to_string()))
            }
        })
        .collect()
}

/// Distinct roots of `f` in K, in canonical order.
pub fn roots(f: &Poly) -> Vec<FieldElem> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut r: Vec<FieldElem> = factor(f)
        .into_iter()
        .filter(|fa| fa.poly.degree() == Some(1))
        .map(|fa| -&fa.poly.coeff(0))
        .collect();
    r.sort();
    r
}

fn sort_factors(v: &mut [Factor]) {
    v.sort_by(|a, b| {
        (
            a.poly.degree(),
            a.poly.coeffs().iter().rev().collect::<Vec<_>>(),
        )
            .cmp(&(
                b.poly.degree(),
                b.poly.coeffs().iter().rev().collect::<Vec<_>>(),
            ))
            .then(a.mult.cmp(&b.mult))
    });
}

fn squarefree_fp(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_fp(&pth_root(f, p), p) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if !z.is_constant() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).unwrap();
    }
    if !c.is_constant() {
        for (g, m) in squarefree_fp(&pth_root(&c, p), p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn pth_root(f: &Poly, p: u64) -> Poly {
    let v = f.coeffs().iter().step_by(p as usize).cloned().collect();
    Poly::new(f.field(), v)
}

fn pow_mod_poly(base: &Poly, e: &BigUint, m: &Poly) -> Poly {
    let mut acc = Poly::one(m.field());
    let b = base.rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mul_mod(&acc, m);
        if e.bit(i) {
            acc = acc.mul_mod(&b, m);
        }
    }
    acc
}

/// Splits a squarefree monic `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod_poly(&h, &pe, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_constant() {
            out.push((g.clone(), d));
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
        }
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of irreducibles of degree `d`.
fn equal_degree(f: &Poly, d: usize, p: u64) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (n as u64) << 8 ^ p);
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = Poly::new(
            field,
            (0..n)
                .map(|_| field.from_i64(rng.gen_range(0..p) as i64))
                .collect(),
        );
        if a.is_constant() {
            continue;
        }
        let g = f.gcd(&a);
        let g = if !g.is_constant() && g.degree() != f.degree() {
            g
        } else {
            let b = &pow_mod_poly(&a, &e, f) - &Poly::one(field);
            f.gcd(&b)
        };
        if !g.is_constant() && g.degree() != f.degree() {
            let h = f.div_exact(&g).unwrap().monic();
            let mut out = equal_degree(&g, d, p);
            out.extend(equal_degree(&h, d, p));
            return out;
        }
    }
}

fn squarefree_q(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.div_exact(&a0).unwrap();
    let mut c = d.div_exact(&a0).unwrap();
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&dd);
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        b = b.div_exact(&a).unwrap();
        c = dd.div_exact(&a).unwrap();
        dd = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Clears denominators and content: the primitive integer multiple of `f`
/// with positive leading coefficient.
pub fn primitive_integer(f: &Poly) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients"))
        .collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| (*q * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn poly_from_ints(ints: &[BigInt]) -> Poly {
    let q = BaseField::Rational;
    Poly::new(q, ints.iter().map(|c| q.from_bigint(c)).collect())
}

/// Splits a squarefree monic rational polynomial; the flag marks certified
/// irreducible factors.
fn split_q(f: &Poly) -> Vec<(Poly, bool)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    if let Some(rs) = rational_roots(&rest) {
        for r in rs {
            let lin = Poly::linear_root(&r);
            rest = rest.div_exact(&lin).unwrap();
            out.push((lin, true));
        }
    } else {
        out.push((rest, false));
        return out;
    }
    match rest.degree() {
        Some(0) | None => {}
        Some(1..=3) => out.push((rest, true)),
        Some(4) => match split_quartic(&rest) {
            Some((a, b)) => {
                out.push((a, true));
                out.push((b, true));
            }
            None => out.push((rest, true)),
        },
        Some(_) => out.push((rest, false)),
    }
    out
}

/// All rational roots of a nonzero rational polynomial, or `None` when the
/// coefficients are too large to enumerate candidates.
pub fn rational_roots(f: &Poly) -> Option<Vec<FieldElem>> {
    let ints = primitive_integer(f);
    let mut roots = Vec::new();
    let mut ints = ints;
    // strip x^k
    let z = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if z > 0 {
        roots.push(BaseField::Rational.zero());
        ints.drain(..z);
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let num = int_divisors(&a0)?;
    let den = int_divisors(&an)?;
    if num.len() * den.len() > 400_000 {
        return None;
    }
    let g = poly_from_ints(&ints);
    let q = BaseField::Rational;
    for d in &den {
        for n in &num {
            if !n.gcd(d).is_one() {
                continue;
            }
            for s in [n.clone(), -n] {
                let r = FieldElem::Q(BigRational::new(s, d.clone()));
                if g.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    let _ = q;
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Splits a monic rational quartic without rational roots into two monic
/// quadratics, if possible.
fn split_quartic(f: &Poly) -> Option<(Poly, Poly)> {
    let ints = primitive_integer(f);
    let lead = ints[4].clone();
    // g(x) = lead^3 f(x / lead) is monic with integer coefficients
    let c: Vec<BigInt> = (0..4).map(|i| &ints[i] * lead.pow(3 - i as u32)).collect();
    let (c0, c1, c2, s) = (&c[0], &c[1], &c[2], &c[3]);
    let divs = int_divisors(&c0.abs())?;
    for b0 in &divs {
        for b in [b0.clone(), -b0] {
            let d = c0 / &b;
            let cands: Vec<(BigInt, BigInt)> = if d != b {
                let num = c1 - &b * s;
                let den = &d - &b;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let a = num / den;
                let cc = s - &a;
                vec![(a, cc)]
            } else {
                if &b * s != *c1 {
                    continue;
                }
                let disc = s * s - BigInt::from(4) * (c2 - &b - &d);
                if disc.is_negative() {
                    continue;
                }
                let r = disc.sqrt();
                if &r * &r != disc || !((s + &r) % 2i32).is_zero() {
                    continue;
                }
                vec![((s + &r) / 2i32, (s - &r) / 2i32)]
            };
            for (a, cc) in cands {
                if &a * &cc + &b + &d == *c2 && &a * &d + &b * &cc == *c1 {
                    // undo the scaling: h(x) = x^2 + a x + b  ↦  x^2 + (a/l) x + b/l^2
                    let q = BaseField::Rational;
                    let l = q.from_bigint(&lead);
                    let mk = |a: &BigInt, b: &BigInt| {
                        Poly::new(
                            q,
                            vec![
                                &q.from_bigint(b) / &(&l * &l),
                                &q.from_bigint(a) / &l,
                                q.one(),
                            ],
                        )
                    };
                    let mut p1 = mk(&a, &b);
                    let mut p2 = mk(&cc, &d);
                    if p2.coeffs().iter().rev().lt(p1.coeffs().iter().rev()) {
                        std::mem::swap(&mut p1, &mut p2);
                    }
                    return Some((p1, p2));
                }
            }
        }
    }
    None
}

/// Prime factorization of `|n|`, or `None` when `n` is zero or cannot be
/// factored with trial division and Pollard rho on 64-bit cofactors.
pub fn int_prime_factors(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return None;
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    let mut q = 2u64;
    while q < 100_000 && m.to_u64().is_none() {
        let bq = BigInt::from(q);
        let mut e = 0;
        while (&m % &bq).is_zero() {
            m /= &bq;
            e += 1;
        }
        if e > 0 {
            primes.push((bq, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let m = m.to_u64()?;
    let mut small = Vec::new();
    factor_u64(m, &mut small);
    for p in small {
        let bp = BigInt::from(p);
        match primes.iter_mut().find(|(x, _)| *x == bp) {
            Some(e) => e.1 += 1,
            None => primes.push((bp, 1)),
        }
    }
    primes.sort();
    Some(primes)
}

/// Positive divisors of `n ≠ 0`, when `n` can be factored.
pub fn int_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in int_prime_factors(n)? {
        let cur = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(cur.iter().map(|d| d * &pk));
        }
        if divs.len() > 200_000 {
            return None;
        }
    }
    divs.sort();
    Some(divs)
}

fn factor_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(q) {
            out.push(q);
            return factor_u64(n / q, out);
        }
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product(fs: &[Factor], field: BaseField) -> Poly {
        fs.iter()
            .fold(Poly::one(field), |acc, f| &acc * &f.poly.pow(f.mult as u32))
    }

    proptest! {
        #[test]
        fn fp_factorization_reconstructs(c in prop::collection::vec(0i64..31, 2..9)) {
            let f = BaseField::prime(31).unwrap();
            let p = Poly::from_i64s(f, &c);
            prop_assume!(!p.is_constant());
            let fs = factor(&p);
            prop_assert_eq!(product(&fs, f), p.monic());
            for fa in &fs {
                // irreducible: no roots for degree 2 and 3 factors
                if matches!(fa.poly.degree(), Some(2) | Some(3)) {
                    prop_assert!((0..31).all(|v| !fa.poly.eval(&f.from_i64(v)).is_zero()));
                }
            }
        }

        #[test]
        fn q_roots_found(r in prop::collection::vec((-9i64..9, 1i64..5), 1..4), extra in 0i64..3) {
            let q = BaseField::Rational;
            let mut p = Poly::from_i64s(q, &[2 + extra, 0, 1]);
            for (a, b) in &r {
                p = &p * &Poly::from_i64s(q, &[-a, *b]);
            }
            let fs = factor(&p);
            prop_assert_eq!(product(&fs, q), p.monic());
            let rs = roots(&p);
            for (a, b) in &r {
                prop_assert!(rs.contains(&q.from_ratio(*a, *b).unwrap()));
            }
        }
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        let q = BaseField::Rational;
        let p = &Poly::from_i64s(q, &[2, 0, 1]) * &Poly::from_i64s(q, &[3, 1, 2]);
        let fs = irreducible_factors(&p).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(f, m)| f.degree() == Some(2) && *m == 1));
        let irr = Poly::from_i64s(q, &[-2, 0, 0, 0, 1]);
        assert_eq!(irreducible_factors(&irr).unwrap().len(), 1);
    }

    #[test]
    fn inseparable_input_over_fp() {
        let f = BaseField::prime(5).unwrap();
        // (x^5 - 1) = (x - 1)^5 in F_5
        let p = Poly::from_i64s(f, &[-1, 0, 0, 0, 0, 1]);
        let fs = factor(&p);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].mult, 5);
    }

    #[test]
    fn integer_divisors() {
        let d = int_divisors(&BigInt::from(360)).unwrap();
        assert_eq!(d.len(), 24);
        let big = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        assert_eq!(int_divisors(&big).unwrap().len(), 4);
    }
}
