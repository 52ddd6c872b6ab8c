//! Seeded random instances with known answers.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{BaseField, FieldElem};
use crate::classify::genus0::{CanonicalForm, FormType};
use crate::error::{Error, Result};
use crate::function_field::place::{places_at_infinity, places_over_point};
use crate::function_field::{Curve, Divisor, FFElement, Place};
use crate::riemann_roch::rr_space;
use crate::subspace::Subspace;

use super::instance::InstanceSpec;

/// Attempts before a resampling loop gives up.
pub const RESAMPLE_LIMIT: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    /// `L(D)` for a random effective divisor on rational places.
    Rr,
    /// A codimension-1 subspace of some `L(D)` on the projective line with γ = 1.
    Codim1,
    /// Random elements of bounded degree.
    Free,
}

/// What the generator knows about its output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundTruth {
    pub kind: GenKind,
    pub dim: usize,
    pub genus: Option<usize>,
    pub gamma: Option<i64>,
    pub divisor_degree: Option<i64>,
    pub codim: Option<usize>,
    pub form: Option<FormType>,
    pub alpha: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub spec: InstanceSpec,
    pub truth: GroundTruth,
    pub subspace: Subspace,
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform element of `F_p`, or a small integer over `Q`.
pub fn random_scalar(field: BaseField, rng: &mut impl Rng) -> FieldElem {
    match field {
        BaseField::Prime { p } => field.from_i64(rng.gen_range(0..p) as i64),
        BaseField::Rational => field.from_i64(rng.gen_range(-9..=9)),
    }
}

pub fn random_nonzero(field: BaseField, rng: &mut impl Rng) -> FieldElem {
    loop {
        let c = random_scalar(field, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// `count` distinct degree-1 places, infinite ones included when rational.
pub fn random_rational_places(
    curve: &Arc<Curve>,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Place>> {
    let mut pool: Vec<Place> = places_at_infinity(curve)
        .into_iter()
        .filter(|p| p.degree() == 1)
        .collect();
    let field = curve.field();
    for _ in 0..RESAMPLE_LIMIT {
        if pool.len() >= count + 2 {
            break;
        }
        let a = match field {
            BaseField::Prime { .. } => random_scalar(field, rng),
            BaseField::Rational => field.from_i64(rng.gen_range(-20..=20)),
        };
        for p in places_over_point(curve, &a) {
            if p.degree() == 1 && pool.iter().all(|q| q.id() != p.id()) {
                pool.push(p);
            }
        }
    }
    if pool.len() < count {
        return Err(Error::ResamplingExhausted(RESAMPLE_LIMIT));
    }
    pool.shuffle(rng);
    pool.truncate(count);
    Ok(pool)
}

/// A random effective divisor of degree `n` supported on at most three
/// rational places.
pub fn random_divisor(curve: &Arc<Curve>, n: usize, rng: &mut impl Rng) -> Result<Divisor> {
    let k = rng.gen_range(1..=n.clamp(1, 3));
    let places = random_rational_places(curve, k, rng)?;
    let mut parts = vec![1i64; k];
    for _ in k..n {
        parts[rng.gen_range(0..k)] += 1;
    }
    let mut d = Divisor::zero(curve);
    for (p, m) in places.iter().zip(parts) {
        d.add_place(p, m);
    }
    Ok(d)
}

/// A random Möbius image `(ax + b)/(cx + d)` of `x`.
fn random_mobius(curve: &Arc<Curve>, rng: &mut impl Rng) -> Result<FFElement> {
    let field = curve.field();
    let x = FFElement::x(curve);
    loop {
        let [a, b, c, d] = [0; 4].map(|_| random_scalar(field, rng));
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            continue;
        }
        let k = |u: &FieldElem| FFElement::constant(curve, u.clone());
        let num = x.mul(&k(&a)).add(&k(&b));
        let den = x.mul(&k(&c)).add(&k(&d));
        return num.div(&den);
    }
}

/// A random multiplier `c·(x - e)^j` with `|j| ≤ 2`.
fn random_multiplier(curve: &Arc<Curve>, rng: &mut impl Rng) -> Result<FFElement> {
    let field = curve.field();
    let c = FFElement::constant(curve, random_nonzero(field, rng));
    let e = FFElement::constant(curve, random_scalar(field, rng));
    let j = rng.gen_range(-2..=2);
    Ok(c.mul(&FFElement::x(curve).sub(&e).pow(j)?))
}

/// A canonical genus-0 form of the given type in a random Möbius variable,
/// scaled by a random multiplier.
pub fn random_canonical(
    curve: &Arc<Curve>,
    kind: FormType,
    n: usize,
    rng: &mut impl Rng,
) -> Result<(Subspace, CanonicalForm)> {
    if !curve.is_rational() {
        return Err(Error::Hypothesis(
            "canonical genus-0 forms live on the projective line".into(),
        ));
    }
    let alpha = random_scalar(curve.field(), rng);
    let t = random_mobius(curve, rng)?;
    let form = CanonicalForm { kind, t, alpha };
    let s = random_multiplier(curve, rng)?;
    let basis: Vec<FFElement> = form.basis(n)?.iter().map(|f| f.mul(&s)).collect();
    Ok((Subspace::span(&basis)?, form))
}

fn random_free_element(
    curve: &Arc<Curve>,
    max_deg: usize,
    rng: &mut impl Rng,
) -> Result<FFElement> {
    let field = curve.field();
    let x = FFElement::x(curve);
    let poly = |rng: &mut ChaCha8Rng| -> Result<FFElement> {
        let mut acc = FFElement::zero(curve);
        for k in 0..=rng.gen_range(0..=max_deg) {
            let c = FFElement::constant(curve, random_scalar(field, rng));
            acc = acc.add(&c.mul(&x.pow(k as i64)?));
        }
        Ok(acc)
    };
    let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut f = poly(&mut inner)?;
    if !curve.is_rational() && inner.gen_bool(0.5) {
        f = f.add(&poly(&mut inner)?.mul(&FFElement::y(curve)?));
    }
    if inner.gen_bool(0.3) {
        f = f.mul(&random_multiplier(curve, &mut inner)?);
    }
    Ok(f)
}

/// Random elements of degree at most `max_deg` in `x`, with optional `y`
/// terms and a random multiplier; the span may have dimension below `n`.
pub fn random_subspace(
    curve: &Arc<Curve>,
    n: usize,
    max_deg: usize,
    rng: &mut impl Rng,
) -> Result<Subspace> {
    let elems: Vec<FFElement> = (0..n)
        .map(|_| random_free_element(curve, max_deg, rng))
        .collect::<Result<_>>()?;
    Subspace::span(&elems)
}

fn spec_for(curve: &Arc<Curve>, s: &Subspace, seed: u64) -> InstanceSpec {
    let mut spec = InstanceSpec::new(curve.field(), curve.model(), s.basis_strings());
    spec.seed = Some(seed);
    spec
}

/// A random instance of the given kind together with its known invariants.
pub fn generate_random(
    kind: GenKind,
    curve: &Arc<Curve>,
    n: usize,
    seed: u64,
) -> Result<Generated> {
    let mut rng = rng_for(seed);
    if n < 4 && kind != GenKind::Free {
        return Err(Error::Hypothesis(format!(
            "{kind:?} instances need n ≥ 4, got {n}"
        )));
    }
    let genus = curve.genus();
    let (subspace, truth) = match kind {
        GenKind::Rr => {
            let d = random_divisor(curve, n, &mut rng)?;
            let rr = rr_space(curve, &d)?;
            let s = rr
                .space
                .ok_or_else(|| Error::TheoremViolation(format!("L({d}) is zero")))?;
            let gamma = if genus == 0 { 0 } else { 1 };
            if s.gamma() != gamma {
                return Err(Error::TheoremViolation(format!(
                    "L({d}) has γ = {}, expected {gamma}",
                    s.gamma()
                )));
            }
            let truth = GroundTruth {
                kind,
                dim: s.dim(),
                genus: Some(genus),
                gamma: Some(gamma),
                divisor_degree: Some(n as i64),
                codim: Some(0),
                form: None,
                alpha: None,
            };
            (s, truth)
        }
        GenKind::Codim1 => {
            let mut found = None;
            for _ in 0..RESAMPLE_LIMIT {
                let ft = if rng.gen_bool(0.5) {
                    FormType::I
                } else {
                    FormType::II
                };
                let (s, form) = random_canonical(curve, ft, n, &mut rng)?;
                if s.dim() == n && s.gamma() == 1 {
                    found = Some((s, form));
                    break;
                }
            }
            let (s, form) = found.ok_or(Error::ResamplingExhausted(RESAMPLE_LIMIT))?;
            let truth = GroundTruth {
                kind,
                dim: n,
                genus: Some(0),
                gamma: Some(1),
                divisor_degree: Some(n as i64),
                codim: Some(1),
                form: Some(form.kind),
                alpha: Some(form.alpha.to_string()),
            };
            (s, truth)
        }
        GenKind::Free => {
            let s = random_subspace(curve, n, 3, &mut rng)?;
            let truth = GroundTruth {
                kind,
                dim: s.dim(),
                genus: None,
                gamma: Some(s.gamma()),
                divisor_degree: None,
                codim: None,
                form: None,
                alpha: None,
            };
            (s, truth)
        }
    };
    Ok(Generated {
        spec: spec_for(curve, &subspace, seed),
        truth,
        subspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> BaseField {
        BaseField::default_prime()
    }

    #[test]
    fn elliptic_rr() {
        let c = Curve::parse("y^2 = x^3 - x", fp()).unwrap();
        let g = generate_random(GenKind::Rr, &c, 6, 1).unwrap();
        assert_eq!(g.truth.genus, Some(1));
        assert_eq!(g.subspace.gamma(), 1);
        assert_eq!(g.subspace.dim(), 6);
        assert_eq!(g.spec.build().unwrap().1, g.subspace);
    }

    #[test]
    fn rational_codim1() {
        let c = Curve::rational(fp());
        let g = generate_random(GenKind::Codim1, &c, 5, 2).unwrap();
        assert_eq!(g.subspace.gamma(), 1);
        assert_eq!(g.truth.genus, Some(0));
        assert_eq!(g.subspace.divisor().unwrap().degree(), 5);
        assert_eq!(g.spec.build().unwrap().1, g.subspace);
    }

    #[test]
    fn rational_rr_is_gamma_zero() {
        let c = Curve::rational(fp());
        let g = generate_random(GenKind::Rr, &c, 4, 3).unwrap();
        assert_eq!(g.subspace.gamma(), 0);
        assert_eq!(g.subspace.dim(), 5);
    }

    #[test]
    fn deterministic_in_seed() {
        let c = Curve::parse("y^2 = x^3 - x", fp()).unwrap();
        for kind in [GenKind::Rr, GenKind::Free] {
            let a = generate_random(kind, &c, 5, 9).unwrap();
            let b = generate_random(kind, &c, 5, 9).unwrap();
            assert_eq!(a.spec, b.spec);
        }
        assert!(generate_random(GenKind::Codim1, &c, 5, 9).is_err());
        assert!(generate_random(GenKind::Rr, &c, 3, 9).is_err());
    }

    #[test]
    fn rational_field_instances() {
        let c = Curve::rational(BaseField::Rational);
        let g = generate_random(GenKind::Codim1, &c, 4, 5).unwrap();
        assert_eq!(g.spec.build().unwrap().1, g.subspace);
    }
}
