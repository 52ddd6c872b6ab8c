//! Places of a curve, realized as Laurent parametrizations `t ↦ (ξ(t), η(t))`.
//!
//! `ξ` is always an exact Laurent polynomial in `t`; `η = sqrt(D(ξ))` is
//! expanded on demand to whatever precision a computation needs, with the
//! branch fixed by a stored leading coefficient. Places whose residue field
//! is a quadratic extension of K carry coefficients in K(√c).

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::factor::irreducible_factors;
use crate::algebra::{BaseField, FieldElem, Poly, QuadElem, Scalar, Series};
use crate::error::{Error, Result};

use super::curve::Curve;
use super::element::{FFElement, Numer};
use super::expr::parse_expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaceKind {
    FiniteRationalLine,
    FiniteSplit,
    FiniteRamified,
    FiniteInert,
    Infinite,
    InfiniteSplit,
    InfiniteRamified,
    InfiniteInert,
}

#[derive(Clone)]
struct Local<C: Scalar> {
    xi: Series<C>,
    /// `D(ξ)`, exact; absent on the rational curve.
    dxi: Option<Series<C>>,
    eta_lead: Option<C>,
}

#[derive(Clone)]
enum Chart {
    K(Local<FieldElem>),
    Quad(Local<QuadElem>),
}

#[derive(Clone)]
pub struct Place {
    curve: Arc<Curve>,
    id: String,
    degree: u32,
    e: i64,
    kind: PlaceKind,
    /// Monic irreducible polynomial below the place; `None` at infinity.
    below: Option<Poly>,
    chart: Chart,
}

impl PartialEq for Place {
    fn eq(&self, o: &Self) -> bool {
        self.id == o.id && self.curve == o.curve
    }
}

impl Eq for Place {}

impl Hash for Place {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.id.hash(h);
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

fn eval_scalar<C: Scalar>(p: &Poly, x: &C) -> C {
    let mut acc = x.zero_like();
    for c in p.coeffs().iter().rev() {
        acc = acc.times(x).plus(&x.embed(c));
    }
    acc
}

impl<C: Scalar> Local<C> {
    fn new(curve: &Curve, xi: Series<C>, eta_lead: Option<C>) -> Self {
        let dxi = curve.d().map(|d| xi.eval_poly(d));
        Local { xi, dxi, eta_lead }
    }

    fn eta_order(&self) -> i64 {
        self.dxi.as_ref().and_then(|d| d.valuation()).unwrap_or(0) / 2
    }

    fn eta(&self, rel: usize) -> Result<Series<C>> {
        let d = self.dxi.as_ref().expect("quadratic curve");
        d.sqrt_with_lead(self.eta_lead.as_ref().unwrap(), rel.max(1))
    }

    /// `N(ξ, η)` known up to `t^abs`.
    fn expand(&self, n: &Numer, abs: i64) -> Result<Series<C>> {
        let a = self.xi.eval_poly(&n.a);
        if n.b.is_zero() {
            return Ok(a.truncate(abs));
        }
        let b = self.xi.eval_poly(&n.b);
        let ob = b.valuation().unwrap();
        let rel = abs - ob - self.eta_order();
        let eta = self.eta(rel.max(1) as usize)?;
        Ok(a.add(&b.mul(&eta)).truncate(abs))
    }
}

impl Place {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Ramification index over the place of K(x) below.
    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn kind(&self) -> PlaceKind {
        self.kind
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn is_infinite(&self) -> bool {
        self.below.is_none()
    }

    pub fn below(&self) -> Option<&Poly> {
        self.below.as_ref()
    }

    /// Valuation of a polynomial in `x`; `None` for zero.
    pub fn val_poly(&self, p: &Poly) -> Option<i64> {
        if p.is_zero() {
            return None;
        }
        Some(match &self.below {
            Some(q) => self.e * p.multiplicity(q) as i64,
            None => -self.e * p.deg_i64(),
        })
    }

    /// Lower bound on `v_P(N)` for a polynomial element.
    pub fn val_lower_bound(&self, n: &Numer) -> i64 {
        match &self.below {
            Some(_) => 0,
            None => -self.pole_bound(n),
        }
    }

    fn pole_bound(&self, n: &Numer) -> i64 {
        let pa = self.e * n.a.deg_i64().max(0);
        let pb = if n.b.is_zero() {
            0
        } else {
            self.e * n.b.deg_i64() + self.curve.pole_y()
        };
        pa.max(pb)
    }

    /// Upper bound on `v_P(N)` for a nonzero polynomial element, from the norm.
    fn val_upper_bound(&self, n: &Numer) -> i64 {
        let norm = n.norm(self.curve.d());
        let vn = self.val_poly(&norm).expect("nonzero norm");
        match &self.below {
            Some(_) => vn,
            None => vn + self.pole_bound(n),
        }
    }

    /// Valuation of `A + B·y`; `None` for zero.
    pub fn valuation_numer(&self, n: &Numer) -> Option<i64> {
        if n.is_zero() {
            return None;
        }
        if n.b.is_zero() {
            return self.val_poly(&n.a);
        }
        let hi = self.val_upper_bound(n) + 1;
        let v = match &self.chart {
            Chart::K(l) => l.expand(n, hi).ok().and_then(|s| s.valuation()),
            Chart::Quad(l) => l.expand(n, hi).ok().and_then(|s| s.valuation()),
        };
        Some(v.expect("nonzero element vanishes beyond its norm bound"))
    }

    /// `v_P(f)`; `None` for zero.
    pub fn valuation(&self, f: &FFElement) -> Option<i64> {
        let (n, q) = f.to_numer();
        Some(self.valuation_numer(&n)? - self.val_poly(&q).unwrap())
    }

    /// Coefficients of `t^lo, …, t^(hi-1)` in the expansion of `N`, each
    /// written as `degree` coordinates over K.
    pub fn expand_rows(&self, n: &Numer, lo: i64, hi: i64) -> Result<Vec<FieldElem>> {
        if hi <= lo {
            return Ok(Vec::new());
        }
        if n.is_zero() {
            return Ok(vec![
                self.curve.field().zero();
                ((hi - lo) * self.degree as i64) as usize
            ]);
        }
        let mut out = Vec::new();
        match &self.chart {
            Chart::K(l) => {
                for c in l.expand(n, hi)?.window(lo, hi)? {
                    out.push(c);
                }
            }
            Chart::Quad(l) => {
                for c in l.expand(n, hi)?.window(lo, hi)? {
                    out.extend(c.components());
                }
            }
        }
        Ok(out)
    }

    /// Leading coefficient of `N` at the place as K-coordinates, with its order.
    pub fn leading(&self, n: &Numer) -> Option<(i64, Vec<FieldElem>)> {
        let v = self.valuation_numer(n)?;
        let rows = self.expand_rows(n, v, v + 1).ok()?;
        Some((v, rows))
    }

    /// Rational value of an element of valuation ≥ 0 at a degree-1 place.
    pub fn residue(&self, f: &FFElement) -> Option<FieldElem> {
        if self.degree != 1 {
            return None;
        }
        let (n, q) = f.to_numer();
        let vq = self.val_poly(&q).unwrap();
        let vn = self.valuation_numer(&n)?;
        if vn > vq {
            return Some(self.curve.field().zero());
        }
        if vn < vq {
            return None;
        }
        let a = self.expand_rows(&n, vn, vn + 1).ok()?;
        let b = self.expand_rows(&Numer::from_poly(q), vq, vq + 1).ok()?;
        Some(&a[0] / &b[0])
    }
}

fn finite_k(
    curve: &Arc<Curve>,
    id: String,
    kind: PlaceKind,
    below: Poly,
    e: i64,
    xi: Series<FieldElem>,
    lead: Option<FieldElem>,
) -> Place {
    Place {
        curve: curve.clone(),
        id,
        degree: 1,
        e,
        kind,
        below: Some(below),
        chart: Chart::K(Local::new(curve, xi, lead)),
    }
}

fn quad_place(
    curve: &Arc<Curve>,
    id: String,
    kind: PlaceKind,
    below: Option<Poly>,
    degree: u32,
    e: i64,
    xi: Series<QuadElem>,
    lead: Option<QuadElem>,
) -> Place {
    Place {
        curve: curve.clone(),
        id,
        degree,
        e,
        kind,
        below,
        chart: Chart::Quad(Local::new(curve, xi, lead)),
    }
}

/// The places at infinity, in canonical order.
pub fn places_at_infinity(curve: &Arc<Curve>) -> Vec<Place> {
    let f = curve.field();
    let one = f.one();
    let Some(d) = curve.d() else {
        let xi = Series::monomial(one, -1);
        return vec![Place {
            curve: curve.clone(),
            id: "Pinf".into(),
            degree: 1,
            e: 1,
            kind: PlaceKind::Infinite,
            below: None,
            chart: Chart::K(Local::new(curve, xi, None)),
        }];
    };
    let l = d.lead();
    let deg = d.degree().unwrap() as u64;
    if deg % 2 == 1 {
        let xi = Series::monomial(l.clone(), -2);
        let lead = l.pow(deg.div_ceil(2));
        return vec![Place {
            curve: curve.clone(),
            id: "Pinf".into(),
            degree: 1,
            e: 2,
            kind: PlaceKind::InfiniteRamified,
            below: None,
            chart: Chart::K(Local::new(curve, xi, Some(lead))),
        }];
    }
    match l.sqrt() {
        Some(s) => [("Pinf+", s.clone()), ("Pinf-", -&s)]
            .into_iter()
            .map(|(id, lead)| Place {
                curve: curve.clone(),
                id: id.into(),
                degree: 1,
                e: 1,
                kind: PlaceKind::InfiniteSplit,
                below: None,
                chart: Chart::K(Local::new(
                    curve,
                    Series::monomial(one.clone(), -1),
                    Some(lead),
                )),
            })
            .collect(),
        None => {
            let qone = QuadElem::new(one.clone(), f.zero(), l.clone());
            let xi = Series::monomial(qone, -1);
            vec![quad_place(
                curve,
                "Pinf".into(),
                PlaceKind::InfiniteInert,
                None,
                2,
                1,
                xi,
                Some(QuadElem::root(&l)),
            )]
        }
    }
}

fn elem_id(c: &FieldElem) -> String {
    c.to_string()
}

/// The places above `x = a`.
pub fn places_over_point(curve: &Arc<Curve>, a: &FieldElem) -> Vec<Place> {
    let f = curve.field();
    let one = f.one();
    let below = Poly::linear_root(a);
    let xi_line = Series::from_coeffs(&one, 0, vec![a.clone(), one.clone()], None);
    let Some(d) = curve.d() else {
        return vec![finite_k(
            curve,
            format!("P({})", elem_id(a)),
            PlaceKind::FiniteRationalLine,
            below,
            1,
            xi_line,
            None,
        )];
    };
    let da = d.eval(a);
    if da.is_zero() {
        let dp = d.derivative().eval(a);
        let xi = Series::from_coeffs(&one, 0, vec![a.clone(), f.zero(), dp.clone()], None);
        return vec![finite_k(
            curve,
            format!("P({},0)", elem_id(a)),
            PlaceKind::FiniteRamified,
            below,
            2,
            xi,
            Some(dp),
        )];
    }
    match da.sqrt() {
        Some(r) => [r.clone(), -&r]
            .into_iter()
            .map(|b| {
                finite_k(
                    curve,
                    format!("P({},{})", elem_id(a), elem_id(&b)),
                    PlaceKind::FiniteSplit,
                    below.clone(),
                    1,
                    xi_line.clone(),
                    Some(b),
                )
            })
            .collect(),
        None => {
            let qa = QuadElem::new(a.clone(), f.zero(), da.clone());
            let qone = qa.one_like();
            let xi = Series::from_coeffs(&qone, 0, vec![qa, qone.clone()], None);
            vec![quad_place(
                curve,
                format!("P[{below}]"),
                PlaceKind::FiniteInert,
                Some(below),
                2,
                1,
                xi,
                Some(QuadElem::root(&da)),
            )]
        }
    }
}

/// The places above a monic irreducible `p` of degree 1 or 2.
pub fn places_above(curve: &Arc<Curve>, p: &Poly) -> Result<Vec<Place>> {
    let p = p.monic();
    match p.degree() {
        Some(1) => return Ok(places_over_point(curve, &-&p.coeff(0))),
        Some(2) => {}
        _ => {
            return Err(Error::UnsupportedPlace(format!(
                "places above {p} have residue degree above 2"
            )))
        }
    }
    let f = curve.field();
    let two = f.from_i64(2);
    let (b, c) = (p.coeff(1), p.coeff(0));
    let disc = &(&b * &b) - &(&f.from_i64(4) * &c);
    if disc.is_square() {
        return Err(Error::invalid(format!("{p} is not irreducible")));
    }
    let theta = QuadElem::new(-&(&b / &two), &f.one() / &two, disc.clone());
    let qone = theta.one_like();
    let line = Series::from_coeffs(&qone, 0, vec![theta.clone(), qone.clone()], None);
    let Some(d) = curve.d() else {
        return Ok(vec![quad_place(
            curve,
            format!("P[{p}]"),
            PlaceKind::FiniteRationalLine,
            Some(p.clone()),
            2,
            1,
            line,
            None,
        )]);
    };
    let dt = eval_scalar(d, &theta);
    if dt.is_zero() {
        let dp = eval_scalar(&d.derivative(), &theta);
        let xi = Series::from_coeffs(
            &qone,
            0,
            vec![theta.clone(), qone.zero_like(), dp.clone()],
            None,
        );
        return Ok(vec![quad_place(
            curve,
            format!("P[{p}]"),
            PlaceKind::FiniteRamified,
            Some(p.clone()),
            2,
            2,
            xi,
            Some(dp),
        )]);
    }
    match dt.square_root() {
        Some(r) => Ok([("+", r.clone()), ("-", r.negated())]
            .into_iter()
            .map(|(s, lead)| {
                quad_place(
                    curve,
                    format!("P[{p}]{s}"),
                    PlaceKind::FiniteSplit,
                    Some(p.clone()),
                    2,
                    1,
                    line.clone(),
                    Some(lead),
                )
            })
            .collect()),
        None => Err(Error::UnsupportedPlace(format!(
            "the place above {p} is inert of degree 4"
        ))),
    }
}

/// Every place above the roots of a nonzero polynomial, plus the places at
/// infinity when `with_infinity` is set.
pub fn places_dividing(curve: &Arc<Curve>, p: &Poly, with_infinity: bool) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    if !p.is_constant() {
        for (q, _) in irreducible_factors(p)? {
            out.extend(places_above(curve, &q)?);
        }
    }
    if with_infinity {
        out.extend(places_at_infinity(curve));
    }
    Ok(out)
}

/// Degree-1 places with `x`-coordinate among `xs`, then those at infinity.
pub fn rational_places_over(
    curve: &Arc<Curve>,
    xs: impl IntoIterator<Item = FieldElem>,
) -> Vec<Place> {
    let mut out: Vec<Place> = places_at_infinity(curve)
        .into_iter()
        .filter(|p| p.degree == 1)
        .collect();
    for a in xs {
        out.extend(
            places_over_point(curve, &a)
                .into_iter()
                .filter(|p| p.degree == 1),
        );
    }
    out
}

fn parse_scalar(field: BaseField, s: &str) -> Result<FieldElem> {
    let e = parse_expr(s)?;
    let f = FFElement::from_expr(&Curve::rational(field), &e)?;
    if !f.a().den().is_one() || !f.a().num().is_constant() {
        return Err(Error::invalid(format!("`{s}` is not a constant")));
    }
    Ok(f.a().num().coeff(0))
}

fn pick(mut places: Vec<Place>, suffix: Option<char>, id: &str) -> Result<Place> {
    match (places.len(), suffix) {
        (1, None) => Ok(places.remove(0)),
        (2, Some('+')) => Ok(places.remove(0)),
        (2, Some('-')) => Ok(places.remove(1)),
        (2, None) => Err(Error::invalid(format!(
            "place `{id}` is ambiguous: {} and {}",
            places[0].id, places[1].id
        ))),
        _ => Err(Error::invalid(format!("no place matches `{id}`"))),
    }
}

impl Place {
    /// Looks up a place by its identifier. `O` is accepted for the single
    /// place at infinity.
    pub fn from_id(curve: &Arc<Curve>, id: &str) -> Result<Place> {
        let id = id.trim();
        let field = curve.field();
        if id == "O" || id == "Pinf" || id == "Pinf+" || id == "Pinf-" {
            let inf = places_at_infinity(curve);
            let suffix = id.strip_prefix("Pinf").and_then(|s| s.chars().next());
            return pick(inf, suffix, id);
        }
        if let Some(body) = id.strip_prefix("P(").and_then(|s| s.strip_suffix(')')) {
            let parts: Vec<&str> = body.split(',').collect();
            let a = parse_scalar(field, parts[0])?;
            let over = places_over_point(curve, &a);
            return match parts.len() {
                1 => pick(over, None, id),
                2 => {
                    if curve.is_rational() {
                        return Err(Error::invalid(format!(
                            "`{id}` names a point on a curve with y"
                        )));
                    }
                    let b = parse_scalar(field, parts[1])?;
                    let d = curve.d().unwrap();
                    if &b * &b != d.eval(&a) {
                        return Err(Error::invalid(format!(
                            "({a}, {b}) does not lie on {}",
                            curve.model()
                        )));
                    }
                    over.into_iter()
                        .find(|p| match &p.chart {
                            Chart::K(l) => {
                                l.eta_lead.as_ref() == Some(&b)
                                    || (b.is_zero() && p.kind == PlaceKind::FiniteRamified)
                            }
                            Chart::Quad(_) => false,
                        })
                        .ok_or_else(|| Error::invalid(format!("no place matches `{id}`")))
                }
                _ => Err(Error::invalid(format!("malformed place id `{id}`"))),
            };
        }
        if let Some(rest) = id.strip_prefix("P[") {
            let close = rest
                .rfind(']')
                .ok_or_else(|| Error::invalid(format!("malformed place id `{id}`")))?;
            let suffix = match &rest[close + 1..] {
                "" => None,
                "+" => Some('+'),
                "-" => Some('-'),
                other => return Err(Error::invalid(format!("bad place suffix `{other}`"))),
            };
            let e = parse_expr(&rest[..close])?;
            let f = FFElement::from_expr(&Curve::rational(field), &e)?;
            if !f.a().den().is_one() || f.a().num().is_constant() {
                return Err(Error::invalid(format!(
                    "`{}` is not a nonconstant polynomial",
                    &rest[..close]
                )));
            }
            let p = f.a().num().monic();
            let fs = irreducible_factors(&p)?;
            if fs.len() != 1 || fs[0].1 != 1 {
                return Err(Error::invalid(format!("{p} is not irreducible")));
            }
            return pick(places_above(curve, &p)?, suffix, id);
        }
        Err(Error::invalid(format!("unknown place id `{id}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rational
    }

    fn el(c: &Arc<Curve>, s: &str) -> FFElement {
        FFElement::parse(c, s).unwrap()
    }

    #[test]
    fn elliptic_infinity() {
        let c = Curve::parse("y^2 = x^3 - x", q()).unwrap();
        let inf = places_at_infinity(&c);
        assert_eq!(inf.len(), 1);
        let o = &inf[0];
        assert_eq!(o.kind(), PlaceKind::InfiniteRamified);
        assert_eq!(o.valuation(&el(&c, "x")), Some(-2));
        assert_eq!(o.valuation(&el(&c, "y")), Some(-3));
        assert_eq!(o.valuation(&el(&c, "x*y")), Some(-5));
        assert_eq!(o.valuation(&el(&c, "y - x^2")), Some(-4));
        assert_eq!(o.valuation(&el(&c, "x/y")), Some(1));
    }

    #[test]
    fn rational_line_valuations() {
        let c = Curve::rational(q());
        let inf = Place::from_id(&c, "Pinf").unwrap();
        assert_eq!(inf.valuation(&el(&c, "x^3 + 1/x")), Some(-3));
        assert_eq!(inf.valuation(&el(&c, "1")), Some(0));
        let p0 = Place::from_id(&c, "P(0)").unwrap();
        assert_eq!(p0.valuation(&el(&c, "x^3 + 1/x")), Some(-1));
        let i = Place::from_id(&c, "P[x^2 + 1]").unwrap();
        assert_eq!(i.degree(), 2);
        assert_eq!(i.valuation(&el(&c, "(x^2+1)^3/x")), Some(3));
    }

    #[test]
    fn conic_infinity_is_inert_over_q() {
        let c = Curve::parse("y^2 = -x^2 - 1", q()).unwrap();
        let inf = places_at_infinity(&c);
        assert_eq!(inf.len(), 1);
        assert_eq!(inf[0].degree(), 2);
        assert_eq!(inf[0].kind(), PlaceKind::InfiniteInert);
        assert_eq!(inf[0].valuation(&el(&c, "y")), Some(-1));
        assert_eq!(inf[0].valuation(&el(&c, "y - x")), Some(-1));
        // over F_5, -1 = 2^2 so infinity splits
        let c5 = Curve::parse("y^2 = -x^2 - 1", BaseField::prime(5).unwrap()).unwrap();
        let inf = places_at_infinity(&c5);
        assert_eq!(inf.len(), 2);
        let v: Vec<_> = inf
            .iter()
            .map(|p| p.valuation(&el(&c5, "y - 2*x")))
            .collect();
        assert!(v.contains(&Some(1)) && v.contains(&Some(-1)), "{v:?}");
    }

    #[test]
    fn ramified_finite_point() {
        let c = Curve::parse("y^2 = x^3 - x", q()).unwrap();
        let p = Place::from_id(&c, "P(0,0)").unwrap();
        assert_eq!(p.e(), 2);
        assert_eq!(p.valuation(&el(&c, "x")), Some(2));
        assert_eq!(p.valuation(&el(&c, "y")), Some(1));
        assert_eq!(p.valuation(&el(&c, "y + x")), Some(1));
        // y^2 + x = x^3
        assert_eq!(p.valuation(&el(&c, "y^2 + x")), Some(6));
    }

    #[test]
    fn split_points_distinguish_branches() {
        let c = Curve::parse("y^2 = x^3 + 1", q()).unwrap();
        let p = Place::from_id(&c, "P(2,3)").unwrap();
        let m = Place::from_id(&c, "P(2,-3)").unwrap();
        let f = el(&c, "y - 3");
        assert_eq!(p.valuation(&f), Some(1));
        assert_eq!(m.valuation(&f), Some(0));
        // y - 3 - 2(x - 2) is tangent: slope dy/dx = 3x^2/2y = 2 at (2,3)
        assert_eq!(p.valuation(&el(&c, "y - 3 - 2*(x - 2)")), Some(2));
    }

    #[test]
    fn degree_two_places_over_quadratics() {
        let c = Curve::parse("y^2 = x^3 - x", q()).unwrap();
        // x^2 + 1: D(i) = -2i, sqrt exists in Q(i)? (1 - i)^2 = -2i, yes
        let ps = places_above(&c, &Poly::from_i64s(q(), &[1, 0, 1])).unwrap();
        assert_eq!(ps.len(), 2);
        let f = el(&c, "x^2 + 1");
        for p in &ps {
            assert_eq!(p.valuation(&f), Some(1));
            assert_eq!(p.degree(), 2);
        }
        // y - (x - 1) vanishes at exactly one of the two: (x-1)^2 = x^2-2x+1 = -2x at x^2=-1,
        // and y^2 = x^3 - x = -2x at x^2 = -1
        let g = el(&c, "y - x + 1");
        let vs: Vec<_> = ps.iter().map(|p| p.valuation(&g).unwrap()).collect();
        assert_eq!(vs.iter().filter(|&&v| v > 0).count(), 1);
        let r = Place::from_id(&c, "P[x^2 - 2]");
        assert!(r.is_ok() || matches!(r, Err(Error::UnsupportedPlace(_))));
    }

    #[test]
    fn ids_roundtrip() {
        let c = Curve::parse("y^2 = x^3 + 1", BaseField::prime(13).unwrap()).unwrap();
        for p in rational_places_over(&c, (0..13).map(|v| c.field().from_i64(v))) {
            assert_eq!(Place::from_id(&c, p.id()).unwrap().id(), p.id());
        }
        assert_eq!(Place::from_id(&c, "O").unwrap().id(), "Pinf");
    }

    #[test]
    fn ramification_degree_sum_is_two() {
        let c = Curve::parse("y^2 = x^4 + 3*x + 1", BaseField::prime(31).unwrap()).unwrap();
        for a in 0..31 {
            let ps = places_over_point(&c, &c.field().from_i64(a));
            let s: i64 = ps.iter().map(|p| p.e() * p.degree() as i64).sum();
            assert_eq!(s, 2);
        }
        let s: i64 = places_at_infinity(&c)
            .iter()
            .map(|p| p.e() * p.degree() as i64)
            .sum();
        assert_eq!(s, 2);
    }
}
