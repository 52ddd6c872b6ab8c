//! Divisors: finite integer combinations of places.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::factor::irreducible_factors;
use crate::algebra::Poly;
use crate::error::{Error, Result};

use super::curve::Curve;
use super::element::FFElement;
use super::place::{places_above, places_at_infinity, Place};

#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    curve: Arc<Curve>,
    terms: BTreeMap<String, (Place, i64)>,
}

/// One `{place_id, coeff, degree}` entry of the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub place_id: String,
    pub coeff: i64,
    pub degree: u32,
}

impl Divisor {
    pub fn zero(curve: &Arc<Curve>) -> Self {
        Divisor {
            curve: curve.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_place(p: &Place, k: i64) -> Self {
        let mut d = Divisor::zero(p.curve());
        d.add_place(p, k);
        d
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn add_place(&mut self, p: &Place, k: i64) {
        if k == 0 {
            return;
        }
        let e = self
            .terms
            .entry(p.id().to_string())
            .or_insert_with(|| (p.clone(), 0));
        e.1 += k;
        if e.1 == 0 {
            self.terms.remove(p.id());
        }
    }

    pub fn coeff(&self, id: &str) -> i64 {
        self.terms.get(id).map_or(0, |t| t.1)
    }

    pub fn coeff_at(&self, p: &Place) -> i64 {
        self.coeff(p.id())
    }

    /// Places in the support with their coefficients, ordered by id.
    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.values().map(|(p, k)| (p, *k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms().map(|(p, k)| k * p.degree() as i64).sum()
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut r = self.clone();
        for (p, k) in o.terms() {
            r.add_place(p, k);
        }
        r
    }

    pub fn scale(&self, m: i64) -> Divisor {
        let mut r = Divisor::zero(&self.curve);
        for (p, k) in self.terms() {
            r.add_place(p, k * m);
        }
        r
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.neg())
    }

    /// Coefficientwise `self ≥ o`.
    pub fn ge(&self, o: &Divisor) -> bool {
        self.sub(o).terms().all(|(_, k)| k >= 0)
    }

    pub fn is_effective(&self) -> bool {
        self.terms().all(|(_, k)| k > 0)
    }

    /// Parses sums like `5*O`, `3*Pinf + 2*P(1)`, `P(0,0) - O`, or `0`.
    pub fn parse(curve: &Arc<Curve>, s: &str) -> Result<Divisor> {
        let mut d = Divisor::zero(curve);
        let src = s.trim();
        if src == "0" || src.is_empty() {
            return Ok(d);
        }
        for (sign, body) in split_terms(src)? {
            let body = body.trim();
            let (k, id) = match body.split_once('*') {
                Some((k, id)) if !k.contains('(') && !k.contains('[') => {
                    let k: i64 = k.trim().parse().map_err(|_| {
                        Error::invalid(format!("bad coefficient in divisor term `{body}`"))
                    })?;
                    (k, id.trim())
                }
                _ => (1, body),
            };
            let p = Place::from_id(curve, id)?;
            d.add_place(&p, sign * k);
        }
        Ok(d)
    }

    pub fn to_terms(&self) -> Vec<DivisorTerm> {
        self.terms()
            .map(|(p, k)| DivisorTerm {
                place_id: p.id().to_string(),
                coeff: k,
                degree: p.degree(),
            })
            .collect()
    }

    pub fn from_terms(curve: &Arc<Curve>, terms: &[DivisorTerm]) -> Result<Divisor> {
        let mut d = Divisor::zero(curve);
        for t in terms {
            let p = Place::from_id(curve, &t.place_id)?;
            if p.degree() != t.degree {
                return Err(Error::invalid(format!(
                    "place {} has degree {}, not {}",
                    t.place_id,
                    p.degree(),
                    t.degree
                )));
            }
            d.add_place(&p, t.coeff);
        }
        Ok(d)
    }
}

/// Splits at top-level `+`/`-`; a sign directly after `Pinf` or `]` belongs
/// to the place id.
fn split_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1;
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            let t = cur.trim_end();
            let glued = cur.ends_with("Pinf") || cur.ends_with(']');
            if glued && !t.is_empty() {
                cur.push(ch);
                continue;
            }
            if !t.is_empty() {
                out.push((sign, t.to_string()));
            } else if !out.is_empty() || !cur.trim().is_empty() {
                return Err(Error::invalid(format!("malformed divisor `{s}`")));
            }
            sign = if ch == '-' { -1 } else { 1 };
            cur.clear();
            continue;
        }
        if depth < 0 {
            return Err(Error::invalid(format!(
                "unbalanced brackets in divisor `{s}`"
            )));
        }
        cur.push(ch);
    }
    if depth != 0 || cur.trim().is_empty() {
        return Err(Error::invalid(format!("malformed divisor `{s}`")));
    }
    out.push((sign, cur.trim().to_string()));
    Ok(out)
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, k)) in self.terms().enumerate() {
            let mag = k.abs();
            match (i, k < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag == 1 {
                write!(f, "{}", p.id())?;
            } else {
                write!(f, "{mag}*{}", p.id())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All places above the irreducible factors of the given polynomials,
/// deduplicated, followed by the places at infinity.
pub fn candidate_places(curve: &Arc<Curve>, polys: &[Poly]) -> Result<Vec<Place>> {
    let mut factors: Vec<Poly> = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        for (q, _) in irreducible_factors(p)? {
            if !factors.contains(&q) {
                factors.push(q);
            }
        }
    }
    let mut out = Vec::new();
    for q in &factors {
        out.extend(places_above(curve, q)?);
    }
    out.extend(places_at_infinity(curve));
    Ok(out)
}

/// The divisor `(f)` of a nonzero function.
pub fn principal_divisor(f: &FFElement) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::invalid("the zero function has no divisor"));
    }
    let curve = f.curve();
    let (n, q) = f.to_numer();
    let norm = n.norm(curve.d());
    let mut d = Divisor::zero(curve);
    for p in candidate_places(curve, &[q, norm])? {
        let v = p.valuation(f).unwrap();
        d.add_place(&p, v);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;

    #[test]
    fn parse_and_format() {
        let c = Curve::parse("y^2 = x^3 - x", BaseField::Rational).unwrap();
        let d = Divisor::parse(&c, "P(0,0) - O").unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.to_string(), "P(0,0) - Pinf");
        let d = Divisor::parse(&c, "5*O").unwrap();
        assert_eq!(d.to_string(), "5*Pinf");
        let again = Divisor::parse(&c, &d.to_string()).unwrap();
        assert_eq!(again, d);
        assert!(Divisor::parse(&c, "P(2,1)").is_err());
        assert_eq!(Divisor::parse(&c, "P(2)").unwrap().degree(), 2);
        assert!(Divisor::parse(&c, "3*").is_err());
        let c4 = Curve::parse("y^2 = x^4 + 1", BaseField::Rational).unwrap();
        let d = Divisor::parse(&c4, "Pinf+ - Pinf- + 2*P(0,-1)").unwrap();
        assert_eq!(d.coeff("Pinf+"), 1);
        assert_eq!(d.coeff("Pinf-"), -1);
        assert_eq!(d.coeff("P(0,-1)"), 2);
    }

    #[test]
    fn principal_divisors() {
        let q = BaseField::Rational;
        let line = Curve::rational(q);
        let x = FFElement::parse(&line, "x").unwrap();
        assert_eq!(principal_divisor(&x).unwrap().to_string(), "P(0) - Pinf");
        let c = Curve::parse("y^2 = x^3 - x", q).unwrap();
        let y = FFElement::parse(&c, "y").unwrap();
        let d = principal_divisor(&y).unwrap();
        assert_eq!(
            d,
            Divisor::parse(&c, "P(0,0) + P(1,0) + P(-1,0) - 3*O").unwrap()
        );
    }
}
