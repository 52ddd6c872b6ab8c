//! Normal forms of genus-0 spaces with `γ = 1`.
//!
//! After a good choice of place `R`, such a space is `s·T` with `1 ∈ T ⊆
//! L(nR)`, so `T` is a space of polynomials of degree at most `n` in any
//! `u` with `(u)_∞ = R`. The degree set of `T` is then a progression with
//! one hole, next to either end.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::factor::roots;
use crate::algebra::linalg::{kernel, rref, Row};
use crate::algebra::{FieldElem, Poly};
use crate::error::{Error, Result};
use crate::function_field::{principal_divisor, Divisor, FFElement, Place};
use crate::riemann_roch::{linearly_equivalent, rr_space};
use crate::subspace::{express, Subspace};

/// `s` and `R` with `s^{-1} S ⊆ L(nR)` and `1 ∈ s^{-1} S`.
#[derive(Clone, Debug)]
pub struct GoodPlace {
    pub s: FFElement,
    pub place: Place,
    /// The hyperplane coordinates `λ_{-1}, …, λ_{n-1}`, when the first
    /// place was not already good.
    pub lambda: Option<Vec<FieldElem>>,
    /// The root `a` used for `(t - a)^n ∈ tS`.
    pub root: Option<FieldElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormType {
    /// `1, t, …, t^{n-2}, (t+α)t^{n-1}`
    I,
    /// `1, (t+α)t, (t+α)t^2, …, (t+α)t^{n-1}`
    II,
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub kind: FormType,
    pub t: FFElement,
    pub alpha: FieldElem,
}

impl CanonicalForm {
    pub fn basis(&self, n: usize) -> Result<Vec<FFElement>> {
        let t = &self.t;
        let one = FFElement::one(t.curve());
        let ta = t.add(&FFElement::constant(t.curve(), self.alpha.clone()));
        let mut out = vec![one];
        match self.kind {
            FormType::I => {
                for k in 1..=n as i64 - 2 {
                    out.push(t.pow(k)?);
                }
                out.push(ta.mul(&t.pow(n as i64 - 1)?));
            }
            FormType::II => {
                for k in 1..n as i64 {
                    out.push(ta.mul(&t.pow(k)?));
                }
            }
        }
        Ok(out)
    }

    pub fn span(&self, n: usize) -> Result<Subspace> {
        Subspace::span(&self.basis(n)?)
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Finds `s ∈ S` and a degree-1 place `R` with `s^{-1}S ⊆ L(nR)`, starting
/// from the degree-1 place `p`. Returns `None` when the polynomial whose
/// roots give `R` has no root in K.
pub fn normalize_good_place(s: &Subspace, p: &Place) -> Result<Option<GoodPlace>> {
    let curve = s.curve();
    let n = s.dim();
    let (sn, e1) = s.normalize_at(p)?;
    let d = sn.divisor()?;
    let cp = d.coeff_at(p);
    if cp == n as i64 && d.degree() == n as i64 {
        return Ok(Some(GoodPlace {
            s: e1,
            place: p.clone(),
            lambda: None,
            root: None,
        }));
    }
    let rest = d.sub(&Divisor::from_place(p, n as i64 - 1));
    let q = match rest.terms().collect::<Vec<_>>()[..] {
        [(q, 1)] if q.degree() == 1 && cp == n as i64 - 1 => q.clone(),
        _ => {
            return Err(Error::TheoremViolation(format!(
                "D_S = {d} is not of the form (n-1)P + Q"
            )))
        }
    };
    // (t) = Q - P, so L((n-1)P + Q) has basis 1/t, 1, t, …, t^{n-1}.
    let t = linearly_equivalent(&Divisor::from_place(p, 1), &Divisor::from_place(&q, 1))?
        .ok_or_else(|| Error::TheoremViolation("two rational places are not equivalent".into()))?;
    let laurent: Vec<FFElement> = (-1..n as i64).map(|k| t.pow(k)).collect::<Result<_>>()?;
    let coords: Vec<Row> = sn
        .basis()
        .iter()
        .map(|f| express(&laurent, f))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::TheoremViolation("S does not lie in L((n-1)P + Q)".into()))?;
    let field = curve.field();
    let lam = kernel(field, &coords, n + 1);
    if lam.len() != 1 {
        return Err(Error::TheoremViolation(
            "S is not a hyperplane of L((n-1)P + Q)".into(),
        ));
    }
    let lambda = lam[0].clone();
    if lambda[0].is_zero() {
        let s_el = e1.div(&t)?;
        return Ok(Some(GoodPlace {
            s: s_el,
            place: p.clone(),
            lambda: Some(lambda),
            root: None,
        }));
    }
    // φ(a) = Σ_k λ_{k-1} C(n, k) (-a)^{n-k}
    let mut phi = vec![field.zero(); n + 1];
    for (k, l) in lambda.iter().enumerate() {
        let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
        phi[n - k] = l * &field.from_bigint(&(binomial(n, k) * sign));
    }
    let phi = Poly::new(field, phi);
    let Some(a) = roots(&phi).into_iter().next() else {
        return Ok(None);
    };
    let ta = t.sub(&FFElement::constant(curve, a.clone()));
    let s_norm = ta.pow(n as i64)?.div(&t)?;
    if !sn.contains(&s_norm) {
        return Err(Error::TheoremViolation("(t - a)^n / t is not in S".into()));
    }
    let zeros = principal_divisor(&ta)?;
    let r = zeros
        .terms()
        .find(|(_, k)| *k > 0)
        .map(|(pl, _)| pl.clone())
        .ok_or_else(|| Error::TheoremViolation("t - a has no zero".into()))?;
    Ok(Some(GoodPlace {
        s: e1.mul(&s_norm),
        place: r,
        lambda: Some(lambda),
        root: Some(a),
    }))
}

/// Type I or II form of `T` with `1 ∈ T ⊆ L(nR)`, or `None` when the
/// needed root is not in K.
pub fn canonical_form_g0(t_space: &Subspace, r: &Place) -> Result<Option<CanonicalForm>> {
    let curve = t_space.curve();
    let field = curve.field();
    let n = t_space.dim();
    let lr = rr_space(curve, &Divisor::from_place(r, 1))?;
    let u = lr
        .space
        .as_ref()
        .and_then(|s| s.basis().into_iter().find(|f| !f.is_constant()))
        .ok_or_else(|| Error::TheoremViolation("L(R) has no nonconstant function".into()))?;
    let powers: Vec<FFElement> = (0..=n as i64).map(|k| u.pow(k)).collect::<Result<_>>()?;
    // Columns by decreasing degree so pivots read off the degree set.
    let rows: Vec<Row> = t_space
        .basis()
        .iter()
        .map(|f| {
            express(&powers, f).map(|mut c| {
                c.reverse();
                c
            })
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Hypothesis("the space is not inside L(nR)".into()))?;
    let (ech, pivots) = rref(&rows, n + 1);
    let degrees: Vec<usize> = pivots.iter().map(|&c| n - c).collect();
    // Row with leading degree k, as a polynomial in u.
    let poly_of = |k: usize| -> Poly {
        let i = degrees.iter().position(|&d| d == k).unwrap();
        let mut c = ech[i].clone();
        c.reverse();
        Poly::new(field, c)
    };
    let type_i: Vec<usize> = (0..=n - 2).chain([n]).collect();
    let type_ii: Vec<usize> = std::iter::once(0).chain(2..=n).collect();
    let mut sorted = degrees.clone();
    sorted.sort_unstable();
    let form = if sorted == type_i {
        let pn = poly_of(n);
        CanonicalForm {
            kind: FormType::I,
            t: u,
            alpha: pn.coeff(n - 1),
        }
    } else if sorted == type_ii {
        let p2 = poly_of(2);
        let p3 = poly_of(3);
        // p3 = (u + a) p2 + b u + c
        let (_, rem) = p3.div_rem(&p2);
        let b = rem.coeff(1);
        let p2b = &p2 + &Poly::constant(b);
        let rs = roots(&p2b);
        let Some(beta) = rs.iter().find(|r| r.is_zero()).or(rs.first()).cloned() else {
            return Ok(None);
        };
        let other = -(&p2b.coeff(1) + &beta);
        let t = u.sub(&FFElement::constant(curve, beta.clone()));
        CanonicalForm {
            kind: FormType::II,
            t,
            alpha: &beta - &other,
        }
    } else {
        return Err(Error::TheoremViolation(format!(
            "degree set {sorted:?} is not a progression with one hole"
        )));
    };
    if form.span(n)? != *t_space {
        return Err(Error::TheoremViolation(
            "canonical basis does not span the space".into(),
        ));
    }
    Ok(Some(form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;
    use crate::function_field::Curve;

    fn line() -> std::sync::Arc<Curve> {
        Curve::rational(BaseField::Rational)
    }

    fn form(gens: &[&str]) -> CanonicalForm {
        let c = line();
        let s = Subspace::parse(&c, gens).unwrap();
        canonical_form_g0(&s, &Place::from_id(&c, "Pinf").unwrap())
            .unwrap()
            .unwrap()
    }

    #[test]
    fn type_one() {
        let f = form(&["1", "x", "x^2", "(x+3)*x^3"]);
        assert_eq!(f.kind, FormType::I);
        assert_eq!(f.alpha, BaseField::Rational.from_i64(3));
        assert_eq!(f.t.to_string(), "x");
    }

    #[test]
    fn type_two() {
        let f = form(&["1", "(x+1)*x", "(x+1)*x^2", "(x+1)*x^3"]);
        assert_eq!(f.kind, FormType::II);
        assert_eq!(f.alpha, BaseField::Rational.from_i64(1));
        let f = form(&["1", "x^2", "x^3", "x^4"]);
        assert_eq!(f.kind, FormType::II);
        assert!(f.alpha.is_zero());
        let f = form(&["1", "(x+7)*(x+2)", "(x+7)*(x+2)^2", "(x+7)*(x+2)^3"]);
        assert_eq!(f.kind, FormType::II);
        assert_eq!(f.span(4).unwrap().dim(), 4);
    }

    #[test]
    fn already_good() {
        let c = line();
        let s = Subspace::parse(&c, &["1", "x^2", "x^3", "x^4"]).unwrap();
        let p = Place::from_id(&c, "Pinf").unwrap();
        let g = normalize_good_place(&s, &p).unwrap().unwrap();
        assert_eq!(g.place.id(), "Pinf");
        assert!(g.lambda.is_none());
    }

    #[test]
    fn shortcut_when_one_over_t_is_present() {
        let c = line();
        let s = Subspace::parse(&c, &["1/x", "1", "x", "x^2", "x^4"]).unwrap();
        let p = Place::from_id(&c, "Pinf").unwrap();
        let g = normalize_good_place(&s, &p).unwrap().unwrap();
        assert_eq!(g.place.id(), "Pinf");
        assert!(g.root.is_none());
        let t = s.scale_by(&g.s.inv().unwrap()).unwrap();
        let d = t.divisor().unwrap();
        assert_eq!(d, Divisor::parse(&c, "5*Pinf").unwrap());
    }

    #[test]
    fn root_branch_over_prime_field() {
        let f = BaseField::prime(10007).unwrap();
        let c = Curve::rational(f);
        let p = Place::from_id(&c, "Pinf").unwrap();
        // The hyperplane a_{-1} = a_3 of span(1/x, 1, x, x^2, x^3).
        let s = Subspace::parse(&c, &["1", "x", "x^2", "x^3 + 1/x"]).unwrap();
        assert_eq!(s.gamma(), 1);
        let g = normalize_good_place(&s, &p).unwrap().unwrap();
        let a = g.root.clone().unwrap();
        let lam = g.lambda.clone().unwrap();
        let n = 4;
        let phi = |a: &FieldElem| {
            let mut acc = f.zero();
            for (k, l) in lam.iter().enumerate() {
                let c = f.from_bigint(&binomial(n, k));
                let term = &(l * &c) * &(-a).pow((n - k) as u64);
                acc = &acc + &term;
            }
            acc
        };
        assert!(phi(&a).is_zero());
        let all_roots: Vec<u64> = (0..10007)
            .filter(|&v| phi(&f.from_i64(v as i64)).is_zero())
            .collect();
        assert_eq!(all_roots.len(), 2);
        let t = s.scale_by(&g.s.inv().unwrap()).unwrap();
        assert!(t.contains(&FFElement::one(&c)));
        assert_eq!(t.divisor().unwrap(), Divisor::from_place(&g.place, 4));
        let cf = canonical_form_g0(&t, &g.place).unwrap().unwrap();
        assert_eq!(cf.span(4).unwrap(), t);
    }

    #[test]
    fn no_root_over_prime_field() {
        // The hyperplane a_{-1} + a_3 = 0 gives the polynomial a^4 + 1 up to
        // scaling, which has no root modulo 10007.
        let f = BaseField::prime(10007).unwrap();
        let c = Curve::rational(f);
        let p = Place::from_id(&c, "Pinf").unwrap();
        let s = Subspace::parse(&c, &["1", "x", "x^2", "x^3 - 1/x"]).unwrap();
        assert_eq!(s.gamma(), 1);
        assert!((0..10007i64).all(|v| !(&f.from_i64(v).pow(4) + &f.one()).is_zero()));
        assert!(normalize_good_place(&s, &p).unwrap().is_none());
    }
}
