//! Finite-dimensional K-subspaces of the function field.
//!
//! A subspace is stored as `V / q`: a monic denominator `q ∈ K[x]` and a
//! space `V` of polynomial elements `A + B·y`, with `q` coprime to the
//! content of `V`. `V` is kept in reduced row echelon form over monomial
//! columns ordered by descending pole order at infinity, which makes the
//! representation unique.

pub mod lattice;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::linalg::{rref, Echelon, Row};
use crate::algebra::{FieldElem, Poly};
use crate::error::{Error, Result};
use crate::function_field::divisor::candidate_places;
use crate::function_field::{Curve, Divisor, FFElement, Numer, Place};

pub use lattice::{lattice, LatticeReport};

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    curve: Arc<Curve>,
    den: Poly,
    basis: Vec<Numer>,
}

/// Monomial column layout for numerators with `deg A ≤ da`, `deg B ≤ db`.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    /// `(is_y, i)` for `x^i` or `x^i·y`, by descending weight.
    cols: Vec<(bool, usize)>,
    da: usize,
    db: Option<usize>,
}

impl Layout {
    pub(crate) fn new(curve: &Curve, da: usize, db: Option<usize>) -> Self {
        let d = curve.deg_d();
        let mut cols: Vec<(usize, bool, usize)> = (0..=da).map(|i| (2 * i, false, i)).collect();
        if let Some(db) = db {
            cols.extend((0..=db).map(|i| (2 * i + d, true, i)));
        }
        cols.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Layout {
            cols: cols.into_iter().map(|(_, y, i)| (y, i)).collect(),
            da,
            db,
        }
    }

    pub(crate) fn for_numers<'a>(curve: &Curve, ns: impl IntoIterator<Item = &'a Numer>) -> Self {
        let mut da = 0;
        let mut db: Option<usize> = None;
        for n in ns {
            da = da.max(n.a.degree().unwrap_or(0));
            if let Some(k) = n.b.degree() {
                db = Some(db.map_or(k, |x| x.max(k)));
            }
        }
        Layout::new(curve, da, db)
    }

    pub(crate) fn len(&self) -> usize {
        self.cols.len()
    }

    pub(crate) fn row(&self, n: &Numer) -> Row {
        debug_assert!(n.a.degree().unwrap_or(0) <= self.da);
        self.cols
            .iter()
            .map(|&(y, i)| if y { n.b.coeff(i) } else { n.a.coeff(i) })
            .collect()
    }

    pub(crate) fn numer(&self, field: crate::algebra::BaseField, row: &[FieldElem]) -> Numer {
        let mut a = vec![field.zero(); self.da + 1];
        let mut b = vec![field.zero(); self.db.map_or(0, |x| x + 1)];
        for (&(y, i), c) in self.cols.iter().zip(row) {
            if y {
                b[i] = c.clone();
            } else {
                a[i] = c.clone();
            }
        }
        Numer::new(Poly::new(field, a), Poly::new(field, b))
    }
}

/// Canonical basis of the span of `ns / den`.
fn canonicalize(curve: &Arc<Curve>, ns: Vec<Numer>, den: Poly) -> Result<Subspace> {
    let field = curve.field();
    let mut g = den.clone();
    for n in &ns {
        g = g.gcd(&n.a).gcd(&n.b);
        if g.is_one() {
            break;
        }
    }
    let (ns, den) = if g.is_constant() {
        (ns, den)
    } else {
        let ns = ns.iter().map(|n| n.div_poly(&g).unwrap()).collect();
        (ns, den.div_exact(&g).unwrap())
    };
    let l = den.lead().inv().ok_or(Error::DivisionByZero)?;
    let den = den.scale(&l);
    let layout = Layout::for_numers(curve, &ns);
    let rows: Vec<Row> = ns.iter().map(|n| layout.row(&n.scale(&l))).collect();
    let (r, _) = rref(&rows, layout.len());
    if r.is_empty() {
        return Err(Error::invalid("the span of the given elements is zero"));
    }
    let basis = r.iter().map(|row| layout.numer(field, row)).collect();
    Ok(Subspace {
        curve: curve.clone(),
        den,
        basis,
    })
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b).div_exact(&a.gcd(b)).unwrap().monic()
}

impl Subspace {
    /// The K-span of `elems`. Fails on an empty or all-zero list.
    pub fn span(elems: &[FFElement]) -> Result<Subspace> {
        let first = elems
            .first()
            .ok_or_else(|| Error::invalid("empty generator list"))?;
        let curve = first.curve().clone();
        if elems.iter().any(|e| **e.curve() != *curve) {
            return Err(Error::Mismatch("generators on different curves".into()));
        }
        let parts: Vec<(Numer, Poly)> = elems.iter().map(|e| e.to_numer()).collect();
        let den = parts
            .iter()
            .fold(Poly::one(curve.field()), |acc, (_, q)| lcm(&acc, q));
        let ns = parts
            .iter()
            .map(|(n, q)| n.mul_poly(&den.div_exact(q).unwrap()))
            .collect();
        canonicalize(&curve, ns, den)
    }

    /// Span of polynomial elements over a common denominator.
    pub fn from_numers(curve: &Arc<Curve>, ns: Vec<Numer>, den: Poly) -> Result<Subspace> {
        canonicalize(curve, ns, den)
    }

    /// Parses each expression on `curve` and spans them.
    pub fn parse(curve: &Arc<Curve>, exprs: &[&str]) -> Result<Subspace> {
        let elems = exprs
            .iter()
            .map(|s| FFElement::parse(curve, s))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(&elems)
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn numers(&self) -> &[Numer] {
        &self.basis
    }

    pub fn basis(&self) -> Vec<FFElement> {
        self.basis
            .iter()
            .map(|n| FFElement::from_numer(&self.curve, n, &self.den).unwrap())
            .collect()
    }

    /// Basis elements as expression strings.
    pub fn basis_strings(&self) -> Vec<String> {
        self.basis().iter().map(|e| e.to_string()).collect()
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.curve != o.curve {
            return Err(Error::Mismatch("subspaces on different curves".into()));
        }
        Ok(())
    }

    /// The product space `ST`.
    pub fn product(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let d = self.curve.d();
        let mut ns = Vec::with_capacity(self.dim() * o.dim());
        for a in &self.basis {
            for b in &o.basis {
                ns.push(a.mul(b, d));
            }
        }
        canonicalize(&self.curve, ns, &self.den * &o.den)
    }

    pub fn square(&self) -> Subspace {
        self.product(self).unwrap()
    }

    /// `dim S^2 - 2 dim S + 1`.
    pub fn gamma(&self) -> i64 {
        self.square().dim() as i64 - 2 * self.dim() as i64 + 1
    }

    /// `f·S` for a nonzero function `f`.
    pub fn scale_by(&self, f: &FFElement) -> Result<Subspace> {
        if f.is_zero() {
            return Err(Error::invalid("scaling by zero"));
        }
        let (n, q) = f.to_numer();
        let d = self.curve.d();
        let ns = self.basis.iter().map(|b| b.mul(&n, d)).collect();
        canonicalize(&self.curve, ns, &self.den * &q)
    }

    /// `(N/q)^{-1} S` where `q` is the space's own denominator: the span of
    /// `M·N̄ / Norm N` over the basis numerators `M`.
    fn divide_by_own(&self, n: &Numer) -> Result<Subspace> {
        let d = self.curve.d();
        let conj = n.conj();
        let ns = self.basis.iter().map(|b| b.mul(&conj, d)).collect();
        canonicalize(&self.curve, ns, n.norm(d))
    }

    /// Whether `f` lies in the subspace.
    pub fn contains(&self, f: &FFElement) -> bool {
        if f.is_zero() {
            return true;
        }
        let (n, q) = f.to_numer();
        let Some(m) = self.den.div_exact(&q) else {
            return false;
        };
        let target = n.mul_poly(&m);
        let layout = Layout::for_numers(&self.curve, self.basis.iter().chain([&target]));
        let mut e = Echelon::new(layout.len());
        for b in &self.basis {
            e.insert(layout.row(b));
        }
        e.contains(&layout.row(&target))
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.curve == o.curve && self.basis().iter().all(|f| o.contains(f))
    }

    /// Sum of two subspaces.
    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let den = lcm(&self.den, &o.den);
        let ma = den.div_exact(&self.den).unwrap();
        let mb = den.div_exact(&o.den).unwrap();
        let mut ns: Vec<Numer> = self.basis.iter().map(|n| n.mul_poly(&ma)).collect();
        ns.extend(o.basis.iter().map(|n| n.mul_poly(&mb)));
        canonicalize(&self.curve, ns, den)
    }

    /// Coordinates of `f` in [`Subspace::basis`], if it lies in the space.
    pub fn coordinates(&self, f: &FFElement) -> Option<Vec<FieldElem>> {
        let field = self.curve.field();
        if f.is_zero() {
            return Some(vec![field.zero(); self.dim()]);
        }
        let (n, q) = f.to_numer();
        let m = self.den.div_exact(&q)?;
        let target = n.mul_poly(&m);
        let layout = Layout::for_numers(&self.curve, self.basis.iter().chain([&target]));
        let basis: Vec<Row> = self.basis.iter().map(|b| layout.row(b)).collect();
        crate::algebra::linalg::coordinates(field, &basis, &layout.row(&target))
    }

    /// A uniform bound `H` with `v_P(N) < H` for every nonzero `N ∈ V`.
    fn valuation_ceiling(&self, p: &Place) -> i64 {
        let d = self.curve.deg_d() as i64;
        let mut da = 0i64;
        let mut db = -1i64;
        let mut m = 0i64;
        for n in &self.basis {
            da = da.max(n.a.deg_i64());
            db = db.max(n.b.deg_i64());
            m = m.max(-p.val_lower_bound(n));
        }
        let norm_deg = if db >= 0 {
            (2 * da).max(2 * db + d)
        } else {
            2 * da
        };
        if p.is_infinite() {
            m + 1
        } else {
            p.e() * norm_deg + 1
        }
    }

    /// Filtered basis at a degree-1 place.
    pub fn filtered_basis(&self, p: &Place) -> Result<FilteredBasis> {
        if p.degree() != 1 {
            return Err(Error::Hypothesis(format!(
                "filtered bases need a place with residue field K; {} has degree {}",
                p.id(),
                p.degree()
            )));
        }
        if *p.curve() != self.curve {
            return Err(Error::Mismatch(
                "place and subspace on different curves".into(),
            ));
        }
        let field = self.curve.field();
        let lo = self
            .basis
            .iter()
            .map(|n| p.val_lower_bound(n))
            .min()
            .unwrap();
        let hi = self.valuation_ceiling(p);
        let n = self.dim();
        let width = (hi - lo) as usize;
        let mut rows = Vec::with_capacity(n);
        for (i, b) in self.basis.iter().enumerate() {
            let mut r = p.expand_rows(b, lo, hi)?;
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            rows.push(r);
        }
        let (r, pivots) = rref(&rows, width + n);
        if pivots.len() != n || pivots.iter().any(|&c| c >= width) {
            return Err(Error::TheoremViolation(
                "valuation window too small for the filtered basis".into(),
            ));
        }
        let vq = p.val_poly(&self.den).unwrap();
        let mut items: Vec<(i64, Numer)> = r
            .iter()
            .zip(&pivots)
            .map(|(row, &c)| {
                let mut acc = Numer::new(Poly::zero(field), Poly::zero(field));
                for (k, b) in self.basis.iter().enumerate() {
                    let coef = &row[width + k];
                    if !coef.is_zero() {
                        acc = acc.add(&b.scale(coef));
                    }
                }
                (lo + c as i64 - vq, acc)
            })
            .collect();
        items.sort_by_key(|a| std::cmp::Reverse(a.0));
        Ok(FilteredBasis {
            place: p.clone(),
            den: self.den.clone(),
            valuations: items.iter().map(|x| x.0).collect(),
            numers: items.into_iter().map(|x| x.1).collect(),
        })
    }

    /// `v_P(S)` in decreasing order.
    pub fn valuation_set(&self, p: &Place) -> Result<Vec<i64>> {
        Ok(self.filtered_basis(p)?.valuations)
    }

    /// `min v_P(S)`, valid at any place.
    pub fn min_valuation(&self, p: &Place) -> i64 {
        let vq = p.val_poly(&self.den).unwrap();
        self.basis
            .iter()
            .map(|n| p.valuation_numer(n).unwrap())
            .min()
            .unwrap()
            - vq
    }

    /// `e_1^{-1} S`, where `e_1` is the head of the filtered basis at `p`.
    /// Returns the normalized space and `e_1`.
    pub fn normalize_at(&self, p: &Place) -> Result<(Subspace, FFElement)> {
        let fb = self.filtered_basis(p)?;
        let head = fb.numers[0].clone();
        let s = self.divide_by_own(&head)?;
        let e1 = FFElement::from_numer(&self.curve, &head, &self.den)?;
        Ok((s, e1))
    }

    /// The smallest divisor `D` with `S ⊆ L(D)`.
    pub fn divisor(&self) -> Result<Divisor> {
        let d = self.curve.d();
        let mut g = Poly::zero(self.curve.field());
        for n in &self.basis {
            g = g.gcd(&n.norm(d));
        }
        let mut out = Divisor::zero(&self.curve);
        for p in candidate_places(&self.curve, &[self.den.clone(), g])? {
            out.add_place(&p, -self.min_valuation(&p));
        }
        Ok(out)
    }

    /// Whether `S` separates the degree-1 places `p` and `q`.
    pub fn separates(&self, p: &Place, q: &Place) -> Result<bool> {
        if p == q {
            return Err(Error::invalid("separation needs two distinct places"));
        }
        let up = self.filtered_basis(p)?.upper_hyperplane(&self.curve)?;
        let uq = self.filtered_basis(q)?.upper_hyperplane(&self.curve)?;
        Ok(up != uq)
    }
}

/// Coefficient rows of `elems` over a common denominator and column layout.
fn common_rows(elems: &[FFElement]) -> Vec<Row> {
    let Some(first) = elems.first() else {
        return Vec::new();
    };
    let curve = first.curve();
    let parts: Vec<(Numer, Poly)> = elems.iter().map(|e| e.to_numer()).collect();
    let den = parts
        .iter()
        .fold(Poly::one(curve.field()), |acc, (_, q)| lcm(&acc, q));
    let ns: Vec<Numer> = parts
        .iter()
        .map(|(n, q)| n.mul_poly(&den.div_exact(q).unwrap()))
        .collect();
    let layout = Layout::for_numers(curve, &ns);
    ns.iter().map(|n| layout.row(n)).collect()
}

/// All linear relations `Σ c_i·elems[i] = 0`, as a basis of coefficient rows.
pub fn dependencies(elems: &[FFElement]) -> Vec<Row> {
    let Some(first) = elems.first() else {
        return Vec::new();
    };
    let rows = common_rows(elems);
    let ncols = rows[0].len();
    crate::algebra::linalg::left_kernel(first.curve().field(), &rows, ncols)
}

/// Coordinates of `v` in the linearly independent family `basis`.
pub fn express(basis: &[FFElement], v: &FFElement) -> Option<Vec<FieldElem>> {
    let first = basis.first()?;
    let mut all = basis.to_vec();
    all.push(v.clone());
    let mut rows = common_rows(&all);
    let target = rows.pop().unwrap();
    crate::algebra::linalg::coordinates(first.curve().field(), &rows, &target)
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{}>", self.basis_strings().join(", "))
    }
}

/// A basis `e_1, …, e_n` with `v(e_1) > … > v(e_n)` at a place.
#[derive(Clone, Debug)]
pub struct FilteredBasis {
    place: Place,
    den: Poly,
    numers: Vec<Numer>,
    valuations: Vec<i64>,
}

impl FilteredBasis {
    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn valuations(&self) -> &[i64] {
        &self.valuations
    }

    pub fn numers(&self) -> &[Numer] {
        &self.numers
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn elements(&self) -> Vec<FFElement> {
        self.numers
            .iter()
            .map(|n| FFElement::from_numer(self.place.curve(), n, &self.den).unwrap())
            .collect()
    }

    /// `S_k = span(e_1, …, e_k)`.
    pub fn prefix(&self, curve: &Arc<Curve>, k: usize) -> Result<Subspace> {
        Subspace::from_numers(curve, self.numers[..k].to_vec(), self.den.clone())
    }

    /// `{u : v(u) > min v(S)}`, or the zero space as `None`.
    fn upper_hyperplane(&self, curve: &Arc<Curve>) -> Result<Option<Subspace>> {
        let n = self.numers.len();
        if n == 1 {
            return Ok(None);
        }
        Ok(Some(self.prefix(curve, n - 1)?))
    }

    pub fn to_report(&self) -> FilteredBasisReport {
        FilteredBasisReport {
            place: self.place.id().to_string(),
            elements: self.elements().iter().map(|e| e.to_string()).collect(),
            valuations: self.valuations.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FilteredBasisReport {
    pub place: String,
    pub elements: Vec<String>,
    pub valuations: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;

    fn q() -> BaseField {
        BaseField::Rational
    }

    #[test]
    fn span_and_dimension() {
        let c = Curve::rational(q());
        assert_eq!(
            Subspace::parse(&c, &["1", "x", "x", "1+x"]).unwrap().dim(),
            2
        );
        assert!(Subspace::parse(&c, &["0", "x - x"]).is_err());
        let e = Curve::parse("y^2 = x^3 - x", q()).unwrap();
        let s = Subspace::parse(&e, &["1", "x", "y", "x^2", "x*y"]).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.square().dim(), 10);
    }

    #[test]
    fn canonical_form_is_unique() {
        let c = Curve::rational(q());
        let a = Subspace::parse(&c, &["1/x", "1"]).unwrap();
        let b = Subspace::parse(&c, &["(x+1)/x", "(2*x + 3)/(3*x)"]).unwrap();
        assert_eq!(a, b);
        let g = FFElement::parse(&c, "(x^2+1)/(x-3)").unwrap();
        assert_eq!(
            a.scale_by(&g).unwrap().scale_by(&g.inv().unwrap()).unwrap(),
            a
        );
    }

    #[test]
    fn counterexample_space() {
        let c = Curve::rational(q());
        let h = Subspace::parse(&c, &["1", "x", "x^2", "x^3 + 1/x"]).unwrap();
        let inf = Place::from_id(&c, "Pinf").unwrap();
        assert_eq!(h.valuation_set(&inf).unwrap(), vec![0, -1, -2, -3]);
        let h2 = h.square();
        assert_eq!(h2.dim(), 8);
        assert!(h2.valuation_set(&inf).unwrap().contains(&1));
        assert_eq!(h.divisor().unwrap().to_string(), "P(0) + 3*Pinf");
    }

    #[test]
    fn elliptic_valuations_and_divisor() {
        let e = Curve::parse("y^2 = x^3 - x", q()).unwrap();
        let s = Subspace::parse(&e, &["1", "x", "y", "x^2", "x*y"]).unwrap();
        let o = Place::from_id(&e, "O").unwrap();
        assert_eq!(s.valuation_set(&o).unwrap(), vec![0, -2, -3, -4, -5]);
        assert_eq!(s.divisor().unwrap().to_string(), "5*Pinf");
    }

    #[test]
    fn normalization_puts_one_in_the_space() {
        let c = Curve::rational(q());
        let s = Subspace::parse(&c, &["x", "x^2", "x^3"]).unwrap();
        let p0 = Place::from_id(&c, "P(0)").unwrap();
        let (n, e1) = s.normalize_at(&p0).unwrap();
        assert!(n.contains(&FFElement::one(&c)));
        assert_eq!(p0.valuation(&e1), Some(3));
        assert_eq!(n.valuation_set(&p0).unwrap(), vec![0, -1, -2]);
    }

    #[test]
    fn separation_examples() {
        let c = Curve::rational(q());
        let one = Subspace::parse(&c, &["1"]).unwrap();
        let p0 = Place::from_id(&c, "P(0)").unwrap();
        let p1 = Place::from_id(&c, "P(1)").unwrap();
        assert!(!one.separates(&p0, &p1).unwrap());
        let l = Subspace::parse(&c, &["1", "x"]).unwrap();
        assert!(l.separates(&p0, &p1).unwrap());
    }
}
