//! Riemann-Roch spaces `L(D) = {f : (f) + D ≥ 0}` on the supported models.
//!
//! Every `f ∈ L(D)` is written `(A + B·y) / h` where `h ∈ K[x]` clears the
//! finite poles allowed by `D`. Since `K[x, y]` is integrally closed for
//! squarefree `D(x)`, the numerator is a polynomial element, and its pole
//! orders at infinity bound `deg A` and `deg B` exactly. The remaining
//! conditions are linear in the Laurent coefficients at each place.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::linalg::{kernel, Row};
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::function_field::place::places_at_infinity;
use crate::function_field::{principal_divisor, Curve, Divisor, FFElement, Numer, Place};
use crate::subspace::{Layout, Subspace};

#[derive(Clone, Debug)]
pub struct RRResult {
    /// `None` when `L(D) = 0`.
    pub space: Option<Subspace>,
    pub divisor: Divisor,
    pub dim: usize,
    /// The Riemann-Roch prediction, when `deg D` is outside `[0, 2g-2]`.
    pub expected_dim: Option<i64>,
    pub genus: usize,
}

impl RRResult {
    pub fn to_report(&self) -> RRReport {
        RRReport {
            divisor: self.divisor.to_string(),
            degree: self.divisor.degree(),
            genus: self.genus,
            dim: self.dim,
            expected_dim: self.expected_dim,
            basis: self
                .space
                .as_ref()
                .map(|s| s.basis_strings())
                .unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RRReport {
    pub divisor: String,
    pub degree: i64,
    pub genus: usize,
    pub dim: usize,
    pub expected_dim: Option<i64>,
    pub basis: Vec<String>,
}

/// `deg D + 1 - g` above `2g - 2`, `0` below `0`.
pub fn riemann_roch_dim(deg: i64, genus: usize) -> Option<i64> {
    let g = genus as i64;
    if deg < 0 {
        Some(0)
    } else if deg > 2 * g - 2 {
        Some(deg + 1 - g)
    } else {
        None
    }
}

/// A basis of `L(D)`, checked against the Riemann-Roch formula.
pub fn rr_space(curve: &Arc<Curve>, d: &Divisor) -> Result<RRResult> {
    if d.curve() != curve {
        return Err(Error::Mismatch("divisor lives on a different curve".into()));
    }
    let field = curve.field();
    let genus = curve.genus();
    let expected_dim = riemann_roch_dim(d.degree(), genus);

    // h = ∏ p^k with k = max over places P | p of ⌈d_P / e_P⌉.
    let mut exps: BTreeMap<String, (Poly, i64)> = BTreeMap::new();
    for (p, k) in d.terms() {
        if let Some(below) = p.below() {
            let need = if k > 0 { (k + p.e() - 1) / p.e() } else { 0 };
            let e = exps
                .entry(below.to_string())
                .or_insert_with(|| (below.clone(), 0));
            e.1 = e.1.max(need);
        }
    }
    let mut h = Poly::one(field);
    for (p, k) in exps.values() {
        h = &h * &p.pow(*k as u32);
    }

    // Pole budget of the numerator at each infinite place.
    let infinite = places_at_infinity(curve);
    let budgets: Vec<(Place, i64)> = infinite
        .iter()
        .map(|p| {
            let m = d.coeff_at(p) - p.val_poly(&h).unwrap();
            (p.clone(), m)
        })
        .collect();
    let m = budgets.iter().map(|b| b.1).max().unwrap();
    let empty = || -> Result<RRResult> {
        check(expected_dim, 0)?;
        Ok(RRResult {
            space: None,
            divisor: d.clone(),
            dim: 0,
            expected_dim,
            genus,
        })
    };
    if m < 0 {
        return empty();
    }
    let e = curve.e_inf();
    let da = (m / e) as usize;
    let db = if curve.is_rational() || m < curve.pole_y() {
        None
    } else {
        Some(((m - curve.pole_y()) / e) as usize)
    };
    let layout = Layout::new(curve, da, db);
    let monos: Vec<Numer> = (0..layout.len())
        .map(|c| {
            let mut r: Row = vec![field.zero(); layout.len()];
            r[c] = field.one();
            layout.numer(field, &r)
        })
        .collect();

    // One block of conditions per place: coefficients below the target
    // order must vanish.
    let mut targets: Vec<(Place, i64)> = budgets.iter().map(|(p, m)| (p.clone(), -m)).collect();
    let mut seen: Vec<String> = Vec::new();
    for (p, _) in d.terms() {
        if let Some(below) = p.below() {
            let key = below.to_string();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            for q in crate::function_field::place::places_above(curve, below)? {
                let t = q.val_poly(&h).unwrap() - d.coeff_at(&q);
                if t > 0 {
                    targets.push((q, t));
                }
            }
        }
    }
    let mut cols: Vec<Row> = vec![Vec::new(); monos.len()];
    for (p, t) in &targets {
        let lo = monos.iter().map(|n| p.val_lower_bound(n)).min().unwrap();
        for (c, n) in monos.iter().enumerate() {
            cols[c].extend(p.expand_rows(n, lo, *t)?);
        }
    }
    let nrows = cols[0].len();
    let matrix: Vec<Row> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ker = kernel(field, &matrix, monos.len());
    if ker.is_empty() {
        return empty();
    }
    let ns: Vec<Numer> = ker.iter().map(|v| layout.numer(field, v)).collect();
    let space = Subspace::from_numers(curve, ns, h)?;
    check(expected_dim, space.dim())?;
    Ok(RRResult {
        dim: space.dim(),
        space: Some(space),
        divisor: d.clone(),
        expected_dim,
        genus,
    })
}

fn check(expected: Option<i64>, dim: usize) -> Result<()> {
    match expected {
        Some(e) if e != dim as i64 => Err(Error::TheoremViolation(format!(
            "dim L(D) = {dim} but Riemann-Roch predicts {e}"
        ))),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MumfordReport {
    pub product_dim: usize,
    pub sum_dim: usize,
    /// `L(D)L(D') = L(D + D')`.
    pub equal: bool,
    /// `deg D ≥ 2g` and `deg D' ≥ 2g + 1`.
    pub hypotheses: bool,
}

/// Compares `L(D)·L(D')` with `L(D + D')`.
pub fn mumford_check(curve: &Arc<Curve>, d1: &Divisor, d2: &Divisor) -> Result<MumfordReport> {
    let g = curve.genus() as i64;
    let hypotheses = d1.degree() >= 2 * g && d2.degree() > 2 * g;
    let a = rr_space(curve, d1)?;
    let b = rr_space(curve, d2)?;
    let c = rr_space(curve, &d1.add(d2))?;
    let prod = match (&a.space, &b.space) {
        (Some(x), Some(y)) => Some(x.product(y)?),
        _ => None,
    };
    let product_dim = prod.as_ref().map_or(0, |s| s.dim());
    let equal = prod == c.space;
    if hypotheses && !equal {
        return Err(Error::TheoremViolation(format!(
            "L({d1})L({d2}) has dimension {product_dim}, L(D + D') has {}",
            c.dim
        )));
    }
    Ok(MumfordReport {
        product_dim,
        sum_dim: c.dim,
        equal,
        hypotheses,
    })
}

/// A function `f` with `(f) = H - G`, or `None` when `G` and `H` are not
/// linearly equivalent.
pub fn linearly_equivalent(g: &Divisor, h: &Divisor) -> Result<Option<FFElement>> {
    if g.curve() != h.curve() {
        return Err(Error::Mismatch("divisors on different curves".into()));
    }
    if g.degree() != h.degree() {
        return Ok(None);
    }
    let r = rr_space(g.curve(), &g.sub(h))?;
    match (r.dim, r.space) {
        (1, Some(s)) => {
            let f = s.basis().remove(0);
            if principal_divisor(&f)? != h.sub(g) {
                return Err(Error::TheoremViolation(
                    "witness has the wrong divisor".into(),
                ));
            }
            Ok(Some(f))
        }
        (0, _) => Ok(None),
        (k, _) => Err(Error::TheoremViolation(format!(
            "a degree-0 divisor has dim L = {k}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;

    fn curve(s: &str) -> Arc<Curve> {
        if s == "rational" {
            Curve::rational(BaseField::Rational)
        } else {
            Curve::parse(s, BaseField::Rational).unwrap()
        }
    }

    fn l(c: &Arc<Curve>, d: &str) -> RRResult {
        rr_space(c, &Divisor::parse(c, d).unwrap()).unwrap()
    }

    #[test]
    fn projective_line() {
        let c = curve("rational");
        let r = l(&c, "4*Pinf");
        assert_eq!(
            r.space.unwrap(),
            Subspace::parse(&c, &["1", "x", "x^2", "x^3", "x^4"]).unwrap()
        );
        let r = l(&c, "P(0) + P(1) - Pinf");
        assert_eq!(r.dim, 2);
        assert_eq!(l(&c, "P(0) - 2*Pinf").dim, 0);
        assert_eq!(l(&c, "0").dim, 1);
        assert_eq!(l(&c, "P[x^2 + 1]").dim, 3);
    }

    #[test]
    fn elliptic_five_o() {
        let c = curve("y^2 = x^3 - x");
        let r = l(&c, "5*O");
        assert_eq!(r.genus, 1);
        assert_eq!(
            r.space.unwrap(),
            Subspace::parse(&c, &["1", "x", "y", "x^2", "x*y"]).unwrap()
        );
        assert_eq!(l(&c, "O").dim, 1);
        assert_eq!(l(&c, "P(0,0) - O").dim, 0);
        assert_eq!(l(&c, "2*P(0,0)").dim, 2);
        assert_eq!(l(&c, "P(2) + O").dim, 3);
    }

    #[test]
    fn split_infinity() {
        let c = curve("y^2 = x^4 + 1");
        for (d, k) in [
            ("Pinf+", 1),
            ("2*Pinf+", 2),
            ("Pinf+ + Pinf-", 2),
            ("3*Pinf-", 3),
            ("Pinf+ - Pinf-", 0),
        ] {
            assert_eq!(l(&c, d).dim, k, "{d}");
        }
    }

    #[test]
    fn mumford() {
        let e = curve("y^2 = x^3 - x");
        let d = |s: &str| Divisor::parse(&e, s).unwrap();
        let r = mumford_check(&e, &d("2*O"), &d("3*O")).unwrap();
        assert!(r.equal && r.hypotheses);
        let r = mumford_check(&e, &d("O"), &d("O")).unwrap();
        assert!(!r.equal && !r.hypotheses);
        assert_eq!((r.product_dim, r.sum_dim), (1, 2));
        let p = curve("rational");
        let d = |s: &str| Divisor::parse(&p, s).unwrap();
        assert!(mumford_check(&p, &d("2*Pinf"), &d("3*Pinf")).unwrap().equal);
    }

    #[test]
    fn linear_equivalence() {
        let p = curve("rational");
        let d = |s: &str| Divisor::parse(&p, s).unwrap();
        let f = linearly_equivalent(&d("P(0)"), &d("Pinf"))
            .unwrap()
            .unwrap();
        assert_eq!(principal_divisor(&f).unwrap(), d("Pinf - P(0)"));
        let e = curve("y^2 = x^3 - x");
        let d = |s: &str| Divisor::parse(&e, s).unwrap();
        assert!(linearly_equivalent(&d("P(0,0)"), &d("O"))
            .unwrap()
            .is_none());
        let w = linearly_equivalent(&d("2*P(0,0)"), &d("2*O"))
            .unwrap()
            .unwrap();
        assert_eq!(principal_divisor(&w).unwrap(), d("2*O - 2*P(0,0)"));
        let g = d("P(1,0) + O");
        let one = linearly_equivalent(&g, &g).unwrap().unwrap();
        assert!(principal_divisor(&one).unwrap().is_zero());
    }
}
