//! Structure of spaces with small combinatorial genus.
//!
//! `classify` runs the whole pipeline on a subspace and returns both the
//! invariants it computed and a normal form that is checked by rebuilding
//! the input from it. Any failed internal check is a
//! [`Error::TheoremViolation`].

pub mod genus0;
pub mod places;
pub mod relation;

use serde::Serialize;

use crate::additive::{structure_2k, HoleProgression, IntSet};
use crate::algebra::FieldElem;
use crate::error::{Error, Result};
use crate::function_field::{Divisor, DivisorTerm, FFElement, Place};
use crate::riemann_roch::rr_space;
use crate::subspace::{lattice, Subspace};

pub use genus0::{canonical_form_g0, normalize_good_place, CanonicalForm, FormType, GoodPlace};
pub use places::{default_place, PlaceSearch};
pub use relation::{find_relation, Relation, RelationKind, RelationReport};

#[derive(Clone, Debug)]
pub enum Form {
    /// `S = a·span(1, x, …, x^{n-1})`
    GeomProgression {
        a: FFElement,
        x: FFElement,
    },
    /// `S = L(D)`
    Genus1RR {
        divisor: Divisor,
    },
    /// `S = scale·span(canonical basis)`
    Genus0 {
        scale: FFElement,
        form: CanonicalForm,
    },
    /// Divisor-level structure only: no suitable place or root over K.
    CodimOneUnnormalized {
        divisor: Divisor,
        reason: String,
    },
    Unclassified {
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub dim: usize,
    pub gamma: i64,
    pub genus: Option<usize>,
    pub divisor: Divisor,
    pub codim: usize,
    pub place: Option<Place>,
    pub p_index: Option<usize>,
    pub heavy_edges: usize,
    pub relation: Option<Relation>,
    pub good_place: Option<GoodPlace>,
    /// Valuations at the good place of the normalized space.
    pub good_valuations: Option<Vec<i64>>,
    pub hole_progression: Option<HoleProgression>,
    /// `dim L(D_S) ≤ dim S + γ - g`, observed for `γ ≥ 2`.
    pub gamma_bound: Option<bool>,
    pub form: Form,
}

impl Form {
    /// The subspace described by the form, for round-trip checks.
    pub fn rebuild(&self, n: usize) -> Result<Option<Subspace>> {
        Ok(match self {
            Form::GeomProgression { a, x } => {
                let b: Vec<FFElement> = (0..n as i64)
                    .map(|k| Ok(a.mul(&x.pow(k)?)))
                    .collect::<Result<_>>()?;
                Some(Subspace::span(&b)?)
            }
            Form::Genus1RR { divisor } => rr_space(divisor.curve(), divisor)?.space,
            Form::Genus0 { scale, form } => Some(form.span(n)?.scale_by(scale)?),
            _ => None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Form::GeomProgression { .. } => "GeomProgression",
            Form::Genus1RR { .. } => "Genus1RR",
            Form::Genus0 { form, .. } if form.kind == FormType::I => "Genus0TypeI",
            Form::Genus0 { .. } => "Genus0TypeII",
            Form::CodimOneUnnormalized { .. } => "CodimOneUnnormalized",
            Form::Unclassified { .. } => "Unclassified",
        }
    }
}

/// Serializable summary of a [`Classification`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub dim: usize,
    pub gamma: i64,
    pub genus: Option<usize>,
    pub divisor: String,
    pub divisor_terms: Vec<DivisorTerm>,
    pub divisor_degree: i64,
    pub codim: usize,
    pub place: Option<String>,
    pub p_index: Option<usize>,
    pub heavy_edges: usize,
    pub relation: Option<RelationReport>,
    pub good_place: Option<String>,
    pub good_valuations: Option<Vec<i64>>,
    pub hole_progression: Option<HoleProgression>,
    pub gamma_bound: Option<bool>,
    pub form: FormReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormReport {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Form {
    pub fn to_report(&self) -> FormReport {
        let mut r = FormReport {
            kind: self.name().into(),
            a: None,
            x: None,
            t: None,
            alpha: None,
            scale: None,
            divisor: None,
            reason: None,
        };
        match self {
            Form::GeomProgression { a, x } => {
                r.a = Some(a.to_string());
                r.x = Some(x.to_string());
            }
            Form::Genus1RR { divisor } => r.divisor = Some(divisor.to_string()),
            Form::Genus0 { scale, form } => {
                r.t = Some(form.t.to_string());
                r.alpha = Some(form.alpha.to_string());
                r.scale = Some(scale.to_string());
            }
            Form::CodimOneUnnormalized { divisor, reason } => {
                r.divisor = Some(divisor.to_string());
                r.reason = Some(reason.clone());
            }
            Form::Unclassified { reason } => r.reason = Some(reason.clone()),
        }
        r
    }
}

impl Classification {
    pub fn to_report(&self) -> ClassificationReport {
        ClassificationReport {
            dim: self.dim,
            gamma: self.gamma,
            genus: self.genus,
            divisor: self.divisor.to_string(),
            divisor_terms: self.divisor.to_terms(),
            divisor_degree: self.divisor.degree(),
            codim: self.codim,
            place: self.place.as_ref().map(|p| p.id().to_string()),
            p_index: self.p_index,
            heavy_edges: self.heavy_edges,
            relation: self.relation.as_ref().map(|r| r.to_report()),
            good_place: self.good_place.as_ref().map(|g| g.place.id().to_string()),
            good_valuations: self.good_valuations.clone(),
            hole_progression: self.hole_progression,
            gamma_bound: self.gamma_bound,
            form: self.form.to_report(),
        }
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}

/// Classifies `S` by combinatorial genus.
pub fn classify(s: &Subspace) -> Result<Classification> {
    let curve = s.curve();
    let n = s.dim();
    let gamma = s.gamma();
    let divisor = s.divisor()?;
    let ld = rr_space(curve, &divisor)?;
    let codim = ld
        .dim
        .checked_sub(n)
        .ok_or_else(|| violation("S is larger than L(D_S)"))?;
    let search = default_place(curve);
    let place = match &search {
        PlaceSearch::Found(p) => Some(p.clone()),
        _ => None,
    };
    let mut out = Classification {
        dim: n,
        gamma,
        genus: None,
        divisor: divisor.clone(),
        codim,
        place: place.clone(),
        p_index: None,
        heavy_edges: 0,
        relation: None,
        good_place: None,
        good_valuations: None,
        hole_progression: None,
        gamma_bound: None,
        form: Form::Unclassified {
            reason: String::new(),
        },
    };
    let unclassified = |mut out: Classification, reason: &str| {
        out.form = Form::Unclassified {
            reason: reason.into(),
        };
        Ok(out)
    };

    if gamma >= 2 {
        let g = curve.genus() as i64;
        out.gamma_bound = Some(ld.dim as i64 <= n as i64 + gamma - g);
        return unclassified(out, "gamma out of theorem scope");
    }
    if gamma < 0 {
        return Err(violation(format!("dim S^2 < 2 dim S - 1 (γ = {gamma})")));
    }

    // deg D_S computed in F is [F : K(S)] times its degree in K(S).
    let expected = n as i64 - 1 + gamma;
    let deg = divisor.degree();
    if deg != expected {
        if expected > 0 && deg % expected == 0 && deg > expected {
            let reason = format!("K(S) is a subfield of index {} in F", deg / expected);
            return unclassified(out, &reason);
        }
        return Err(violation(format!("deg D_S = {deg}, expected {expected}")));
    }

    if gamma == 0 {
        if codim != 0 {
            return Err(violation(format!(
                "γ = 0 but S has codimension {codim} in L(D_S)"
            )));
        }
        out.genus = Some(0);
        let Some(p) = place else {
            out.form = Form::CodimOneUnnormalized {
                divisor,
                reason: no_place_reason(&search),
            };
            return Ok(out);
        };
        out.form = geometric_progression(s, &p)?;
        check_rebuild(&out.form, s)?;
        return Ok(out);
    }

    // γ = 1
    if n < 4 {
        return unclassified(
            out,
            "γ = 1 with dim S = 3 is below the hypothesis dim S ≥ 4",
        );
    }
    let Some(p) = place else {
        out.form = Form::CodimOneUnnormalized {
            divisor,
            reason: no_place_reason(&search),
        };
        return Ok(out);
    };
    let rel = find_relation(s, &p)?;
    let genus = rel.genus();
    if genus != curve.genus() {
        return Err(violation(format!(
            "the relation has genus {genus} but the curve has genus {}",
            curve.genus()
        )));
    }
    let lat = lattice(s, &p)?;
    lat.ensure_consistent()?;
    let want = if rel.dim_s2s3 == 5 { 2 } else { n - 1 };
    if lat.p_index != Some(want) {
        return Err(violation(format!(
            "P-index {:?} but dim S_2S_3 = {}",
            lat.p_index, rel.dim_s2s3
        )));
    }
    out.p_index = lat.p_index;
    out.heavy_edges = lat.heavy_edges.len();
    out.genus = Some(genus);
    out.relation = Some(rel);

    if genus == 1 {
        if codim != 0 {
            return Err(violation(format!(
                "genus 1 but S has codimension {codim} in L(D_S)"
            )));
        }
        out.form = Form::Genus1RR { divisor };
        check_rebuild(&out.form, s)?;
        return Ok(out);
    }
    if codim != 1 {
        return Err(violation(format!(
            "genus 0 but S has codimension {codim} in L(D_S)"
        )));
    }
    let Some(good) = normalize_good_place(s, &p)? else {
        out.form = Form::CodimOneUnnormalized {
            divisor,
            reason: "no root in K for the good-place polynomial".into(),
        };
        return Ok(out);
    };
    let t_space = s.scale_by(&good.s.inv()?)?;
    let vals = t_space.valuation_set(&good.place)?;
    let hp = structure_2k(&IntSet::new(vals.clone())?)?;
    if hp.is_none() {
        return Err(violation(format!(
            "valuations {vals:?} at the good place have no hole"
        )));
    }
    out.good_valuations = Some(vals);
    out.hole_progression = hp;
    let scale = good.s.clone();
    let cf = canonical_form_g0(&t_space, &good.place)?;
    out.good_place = Some(good);
    out.form = match cf {
        Some(form) => Form::Genus0 { scale, form },
        None => Form::CodimOneUnnormalized {
            divisor,
            reason: "the quadratic factor of the degree-2 element has no root in K".into(),
        },
    };
    check_rebuild(&out.form, s)?;
    Ok(out)
}

fn no_place_reason(search: &PlaceSearch) -> String {
    match search {
        PlaceSearch::None => "F has no place of degree 1 over K, so S has no basis in geometric progression or canonical form over K".into(),
        _ => "no place of degree 1 was found within the search range".into(),
    }
}

/// `S = e_1 · span(1, x, …, x^{n-1})` with `x = e_2 / e_1` after
/// normalization at `p`.
fn geometric_progression(s: &Subspace, p: &Place) -> Result<Form> {
    let (sn, e1) = s.normalize_at(p)?;
    let fb = sn.filtered_basis(p)?;
    let e = fb.elements();
    let c: FieldElem = e[0].a().num().coeff(0);
    let a = e1.scale(&c);
    if s.dim() == 1 {
        return Ok(Form::GeomProgression {
            a,
            x: FFElement::one(s.curve()),
        });
    }
    let x = e[1].div(&e[0])?;
    Ok(Form::GeomProgression { a, x })
}

fn check_rebuild(form: &Form, s: &Subspace) -> Result<()> {
    match form.rebuild(s.dim())? {
        Some(r) if r != *s => Err(violation(format!(
            "{} form does not rebuild S",
            form.name()
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;
    use crate::function_field::Curve;

    fn run(curve: &str, gens: &[&str]) -> Classification {
        let c = if curve == "rational" {
            Curve::rational(BaseField::Rational)
        } else {
            Curve::parse(curve, BaseField::Rational).unwrap()
        };
        classify(&Subspace::parse(&c, gens).unwrap()).unwrap()
    }

    #[test]
    fn elliptic_riemann_roch_space() {
        let r = run("y^2 = x^3 - x", &["1", "x", "y", "x^2", "x*y"]);
        assert_eq!(r.gamma, 1);
        assert_eq!(r.genus, Some(1));
        assert_eq!(r.codim, 0);
        assert!(matches!(&r.form, Form::Genus1RR { divisor } if divisor.to_string() == "5*Pinf"));
    }

    #[test]
    fn hole_progression_is_type_two() {
        let r = run("rational", &["1", "x^2", "x^3", "x^4"]);
        match &r.form {
            Form::Genus0 { form, .. } => {
                assert_eq!(form.kind, FormType::II);
                assert!(form.alpha.is_zero());
            }
            f => panic!("{f:?}"),
        }
        assert_eq!(r.p_index, Some(2));
        assert_eq!(r.codim, 1);
    }

    #[test]
    fn geometric_progression_found() {
        let r = run("rational", &["x/(x-1)", "x^2/(x-1)", "x^3/(x-1)"]);
        assert_eq!(r.gamma, 0);
        assert!(matches!(r.form, Form::GeomProgression { .. }));
    }

    #[test]
    fn conic_without_rational_place() {
        let r = run("y^2 = -x^2 - 1", &["1", "x", "y"]);
        assert_eq!(r.gamma, 0);
        assert_eq!(r.divisor.degree(), 2);
        assert_eq!(r.codim, 0);
        assert!(matches!(r.form, Form::CodimOneUnnormalized { .. }));
    }

    #[test]
    fn refusals() {
        let r = run("rational", &["1", "x^3", "x^7", "x^12"]);
        assert!(matches!(r.form, Form::Unclassified { .. }));
        assert!(r.gamma_bound.is_some());
        let r = run("rational", &["1", "x^2", "x^4", "x^8"]);
        assert!(matches!(&r.form, Form::Unclassified { reason } if reason.contains("subfield")));
        let r = run("rational", &["1", "x", "x^3"]);
        assert!(matches!(r.form, Form::Unclassified { .. }));
    }

    #[test]
    fn moebius_image_of_type_one() {
        // span(1, t, t^2, (t+3)t^3) with t = 1/(x-2), times x + 1.
        let gens = [
            "x+1",
            "(x+1)/(x-2)",
            "(x+1)/(x-2)^2",
            "(x+1)*(1/(x-2)+3)/(x-2)^3",
        ];
        let r = run("rational", &gens);
        assert_eq!((r.gamma, r.genus, r.codim), (1, Some(0), 1));
        assert!(matches!(r.form, Form::Genus0 { .. }));
        assert!(matches!(r.p_index, Some(2) | Some(3)));
    }
}
