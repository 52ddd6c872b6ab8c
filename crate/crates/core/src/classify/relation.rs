//! Algebraic relations between the second and third filtered basis elements.

use serde::Serialize;

use crate::algebra::mpoly::{is_smooth_plane_curve, MPoly, Mono};
use crate::algebra::FieldElem;
use crate::error::{Error, Result};
use crate::function_field::{FFElement, Place};
use crate::subspace::{dependencies, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Quadratic,
    Cubic,
}

/// `G(x, y) = 0` for `x = e_2`, `y = e_3` of the normalized filtered basis.
#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    pub x: FFElement,
    pub y: FFElement,
    pub poly: MPoly,
    /// The pairs `(L_i, Q_i)` with `e_4·L_i(x, y) = Q_i(x, y)`.
    pub pairs: Option<[(MPoly, MPoly); 2]>,
    /// Smoothness of the projective closure of `G = 0`.
    pub smooth: bool,
    pub dim_s2s3: usize,
}

impl Relation {
    /// Genus of `K(x, y)`: a conic or a singular cubic is rational.
    pub fn genus(&self) -> usize {
        match (self.kind, self.smooth) {
            (RelationKind::Cubic, true) => 1,
            _ => 0,
        }
    }

    pub fn to_report(&self) -> RelationReport {
        RelationReport {
            kind: self.kind,
            x: self.x.to_string(),
            y: self.y.to_string(),
            poly: self.poly.to_string(),
            pairs: self.pairs.as_ref().map(|p| {
                p.iter()
                    .map(|(l, q)| [l.to_string(), q.to_string()])
                    .collect()
            }),
            smooth: self.smooth,
            genus: self.genus(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub kind: RelationKind,
    pub x: String,
    pub y: String,
    pub poly: String,
    pub pairs: Option<Vec<[String; 2]>>,
    pub smooth: bool,
    pub genus: usize,
}

/// `Σ c_k X^{i_k} Y^{j_k}`.
fn combine(cs: &[(&FieldElem, u32, u32)], field: crate::algebra::BaseField) -> MPoly {
    let mut p = MPoly::zero(field, 2);
    for &(c, i, j) in cs {
        if !c.is_zero() {
            p = p.add(&MPoly::term(c.clone(), &[i, j]));
        }
    }
    p
}

/// Evaluates a polynomial in `X, Y` at two functions.
pub fn eval_at(p: &MPoly, x: &FFElement, y: &FFElement) -> Result<FFElement> {
    let mut acc = FFElement::zero(x.curve());
    for (Mono(e), c) in p.terms() {
        let t = x.pow(e[0] as i64)?.mul(&y.pow(e[1] as i64)?).scale(c);
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// A relation among `1, x, x², y, xy`, or else among those and `y²`.
pub fn quadratic_relation(x: &FFElement, y: &FFElement) -> Result<Option<MPoly>> {
    let field = x.curve().field();
    let one = FFElement::one(x.curve());
    let mut elems = vec![one, x.clone(), x.mul(x), y.clone(), x.mul(y)];
    let mut ker = dependencies(&elems);
    if ker.is_empty() {
        elems.push(y.mul(y));
        ker = dependencies(&elems);
    }
    let Some(k) = ker.first() else {
        return Ok(None);
    };
    let zero = field.zero();
    let k5 = k.get(5).unwrap_or(&zero);
    Ok(Some(combine(
        &[
            (&k[0], 0, 0),
            (&k[1], 1, 0),
            (&k[2], 2, 0),
            (&k[3], 0, 1),
            (&k[4], 1, 1),
            (k5, 0, 2),
        ],
        field,
    )))
}

/// Finds the relation of the normalized space at a degree-1 place.
pub fn find_relation(s: &Subspace, p: &Place) -> Result<Relation> {
    let n = s.dim();
    if n < 3 {
        return Err(Error::Hypothesis(format!(
            "relation finding needs dim S ≥ 3, got {n}"
        )));
    }
    let gamma = s.gamma();
    if gamma > 1 {
        return Err(Error::Hypothesis(format!(
            "relation finding needs γ ≤ 1, got {gamma}"
        )));
    }
    let (sn, _) = s.normalize_at(p)?;
    let e = sn.filtered_basis(p)?.elements();
    let c = e[0].clone();
    let x = e[1].div(&c)?;
    let y = e[2].div(&c)?;
    let field = s.curve().field();
    let one = FFElement::one(s.curve());
    let s2s3 = Subspace::span(&[one.clone(), x.clone(), x.mul(&x), y.clone(), x.mul(&y)])?;
    let dim_s2s3 = s2s3.dim();

    if let Some(q) = quadratic_relation(&x, &y)? {
        if !eval_at(&q, &x, &y)?.is_zero() {
            return Err(Error::TheoremViolation(
                "quadratic relation does not vanish".into(),
            ));
        }
        let smooth = is_smooth_plane_curve(&q, 2);
        return Ok(Relation {
            kind: RelationKind::Quadratic,
            x,
            y,
            poly: q,
            pairs: None,
            smooth,
            dim_s2s3,
        });
    }
    if n < 4 {
        return Err(Error::Hypothesis("a cubic relation needs dim S ≥ 4".into()));
    }
    let w = e[3].div(&c)?;
    let elems = [
        one,
        x.clone(),
        y.clone(),
        w.clone(),
        x.mul(&x),
        x.mul(&y),
        x.mul(&w),
        y.mul(&y),
        y.mul(&w),
    ];
    let ker = dependencies(&elems);
    if ker.len() != 2 {
        return Err(Error::TheoremViolation(format!(
            "expected two relations in S_3S_4, found {}",
            ker.len()
        )));
    }
    let pair = |k: &Vec<FieldElem>| {
        let l = combine(&[(&k[3], 0, 0), (&k[6], 1, 0), (&k[8], 0, 1)], field);
        let q = combine(
            &[
                (&k[0], 0, 0),
                (&k[1], 1, 0),
                (&k[2], 0, 1),
                (&k[4], 2, 0),
                (&k[5], 1, 1),
                (&k[7], 0, 2),
            ],
            field,
        )
        .scale(&field.from_i64(-1));
        (l, q)
    };
    let (l1, q1) = pair(&ker[0]);
    let (l2, q2) = pair(&ker[1]);
    if l1.is_zero() || l2.is_zero() {
        return Err(Error::TheoremViolation(
            "a relation with e_4 has no e_4 term".into(),
        ));
    }
    let g = l1.mul(&q2).sub(&l2.mul(&q1));
    if g.total_degree() != Some(3) {
        return Err(Error::TheoremViolation(format!(
            "eliminating e_4 gave degree {:?}, not 3",
            g.total_degree()
        )));
    }
    if !eval_at(&g, &x, &y)?.is_zero() {
        return Err(Error::TheoremViolation(
            "cubic relation does not vanish".into(),
        ));
    }
    let smooth = is_smooth_plane_curve(&g, 3);
    Ok(Relation {
        kind: RelationKind::Cubic,
        x,
        y,
        poly: g,
        pairs: Some([(l1, q1), (l2, q2)]),
        smooth,
        dim_s2s3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;
    use crate::function_field::Curve;

    #[test]
    fn elliptic_space_gives_smooth_cubic() {
        let c = Curve::parse("y^2 = x^3 - x", BaseField::Rational).unwrap();
        let s = Subspace::parse(&c, &["1", "x", "y", "x^2", "x*y"]).unwrap();
        let o = Place::from_id(&c, "O").unwrap();
        let r = find_relation(&s, &o).unwrap();
        assert_eq!(r.kind, RelationKind::Cubic);
        assert!(r.smooth);
        assert_eq!(r.genus(), 1);
        assert_eq!(r.dim_s2s3, 5);
        assert_eq!(r.poly.total_degree(), Some(3));
    }

    #[test]
    fn hole_progression_gives_conic() {
        let c = Curve::rational(BaseField::Rational);
        let s = Subspace::parse(&c, &["1", "x", "x^2", "x^4"]).unwrap();
        let r = find_relation(&s, &Place::from_id(&c, "Pinf").unwrap()).unwrap();
        assert_eq!(r.kind, RelationKind::Quadratic);
        assert_eq!(r.genus(), 0);
        assert_eq!(r.dim_s2s3, 4);
    }

    #[test]
    fn genus_zero_cubic_is_singular() {
        let c = Curve::rational(BaseField::Rational);
        let s = Subspace::parse(&c, &["1", "x^2", "x^3", "x^4"]).unwrap();
        let r = find_relation(&s, &Place::from_id(&c, "Pinf").unwrap()).unwrap();
        assert_eq!(r.kind, RelationKind::Cubic);
        assert!(!r.smooth);
        assert_eq!(r.genus(), 0);
    }

    #[test]
    fn conic_without_rational_points() {
        let c = Curve::parse("y^2 = -x^2 - 1", BaseField::Rational).unwrap();
        let x = FFElement::x(&c);
        let y = FFElement::y(&c).unwrap();
        let q = quadratic_relation(&x, &y).unwrap().unwrap();
        assert!(eval_at(&q, &x, &y).unwrap().is_zero());
        assert_eq!(q.total_degree(), Some(2));
    }
}
