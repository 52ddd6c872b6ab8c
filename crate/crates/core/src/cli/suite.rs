//! The reproducible acceptance suite, shared by `combgenus verify` and the
//! `acceptance` test target.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::additive::{affine_rank, freiman_lemma_holds, structure_2k, sumset, IntSet};
use crate::algebra::BaseField;
use crate::algebra::FieldElem;
use crate::classify::genus0::FormType;
use crate::classify::{classify, Classification, Form};
use crate::error::{Error, Result};
use crate::function_field::{principal_divisor, Curve, Divisor, FFElement, Place};
use crate::riemann_roch::{mumford_check, rr_space};
use crate::subspace::{lattice, Subspace};

use super::generate::{
    generate_random, random_canonical, random_nonzero, random_rational_places, random_scalar,
    random_subspace, rng_for, GenKind,
};

pub const CRITERIA: [&str; 12] = [
    "geometric progressions have dim S^2 = 2k - 1",
    "hole progressions have gamma 1",
    "elliptic example has dim S^2 = 10",
    "valuations of H = span(1, x, x^2, x^3 + 1/x)",
    "span(1, x, x^3, x^4) has gamma 2",
    "Riemann-Roch dimensions and valuations of L(nO)",
    "L(D)L(D') = L(D + D')",
    "randomized classification of gamma-1 spaces",
    "genus-0 canonical forms round-trip",
    "conic without rational points",
    "additive structure of small sets",
    "property suites on random subspaces",
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Halves the random-instance counts.
    pub quick: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            quick: false,
        }
    }
}

impl SuiteConfig {
    fn count(&self, full: usize) -> usize {
        if self.quick {
            full / 2
        } else {
            full
        }
    }

    /// Independent seed for instance `i` of criterion `id`.
    fn seed_for(&self, id: usize, i: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add((id as u64) << 32)
            .wrapping_add(i as u64)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.checks > 0 && self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "{status} criterion {:>2}: {} ({} checks, {} failures)",
            self.id,
            self.name,
            self.checks,
            self.failures.len()
        )
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        self.check(got == want, || {
            format!("{what}: got {got:?}, expected {want:?}")
        });
    }

    /// Unwraps `r`, recording an error as a failure.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn merge(&mut self, o: Tally) {
        self.checks += o.checks;
        self.failures.extend(o.failures);
    }
}

/// Runs `f` for every index in parallel and merges the tallies in order.
fn par_tally(count: usize, f: impl Fn(usize, &mut Tally) + Sync) -> Tally {
    let parts: Vec<Tally> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            f(i, &mut t);
            t
        })
        .collect();
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

fn fp() -> BaseField {
    BaseField::default_prime()
}

fn span(curve: &Arc<Curve>, gens: &[&str]) -> Result<Subspace> {
    Subspace::parse(curve, gens)
}

fn monomials(exps: impl IntoIterator<Item = usize>) -> Vec<String> {
    exps.into_iter().map(|k| format!("x^{k}")).collect()
}

fn span_strings(curve: &Arc<Curve>, gens: &[String]) -> Result<Subspace> {
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    Subspace::parse(curve, &refs)
}

fn elliptic(field: BaseField) -> Arc<Curve> {
    Curve::parse("y^2 = x^3 - x", field).expect("valid model")
}

fn c1(t: &mut Tally) {
    for field in [fp(), BaseField::Rational] {
        let c = Curve::rational(field);
        for k in 3..=10 {
            if let Some(s) = t.ok(span_strings(&c, &monomials(0..k)), || format!("GP k={k}")) {
                t.eq(
                    s.square().dim(),
                    2 * k - 1,
                    &format!("dim S^2 for k={k} over {field}"),
                );
            }
        }
    }
}

fn c2(t: &mut Tally) {
    for field in [fp(), BaseField::Rational] {
        let c = Curve::rational(field);
        for k in 4..=10 {
            let gens = monomials(std::iter::once(0).chain(2..=k));
            if let Some(s) = t.ok(span_strings(&c, &gens), || format!("hole k={k}")) {
                t.eq(s.gamma(), 1, &format!("gamma for k={k} over {field}"));
            }
        }
    }
}

fn c3(t: &mut Tally) {
    for field in [BaseField::Rational, fp()] {
        let c = elliptic(field);
        if let Some(s) = t.ok(span(&c, &["1", "x", "y", "x^2", "x*y"]), || {
            "elliptic span".into()
        }) {
            t.eq(s.square().dim(), 10, &format!("dim S^2 over {field}"));
            t.eq(s.gamma(), 1, "gamma");
        }
    }
}

fn c4(t: &mut Tally) {
    let c = Curve::rational(BaseField::Rational);
    let Some(h) = t.ok(span(&c, &["1", "x", "x^2", "x^3 + 1/x"]), || "H".into()) else {
        return;
    };
    let p = Place::from_id(&c, "Pinf").expect("Pinf");
    let (Some(vh), Some(vh2)) = (
        t.ok(h.valuation_set(&p), || "v(H)".into()),
        t.ok(h.square().valuation_set(&p), || "v(H^2)".into()),
    ) else {
        return;
    };
    let vh: BTreeSet<i64> = vh.into_iter().collect();
    t.eq(vh.clone(), BTreeSet::from([0, -1, -2, -3]), "v(H)");
    // The spanning set of H^2 has eight elements; see the project notes.
    t.eq(h.square().dim(), 8, "dim H^2");
    let sums: BTreeSet<i64> = vh
        .iter()
        .flat_map(|a| vh.iter().map(move |b| a + b))
        .collect();
    t.check(vh2.contains(&1), || format!("1 not in v(H^2) = {vh2:?}"));
    t.check(!sums.contains(&1), || "1 in v(H) + v(H)".into());
}

fn c5(t: &mut Tally) {
    for field in [BaseField::Rational, fp()] {
        let c = Curve::rational(field);
        if let Some(s) = t.ok(span(&c, &["1", "x", "x^3", "x^4"]), || "span".into()) {
            t.eq(s.gamma(), 2, &format!("gamma over {field}"));
        }
    }
}

fn c6(t: &mut Tally) {
    let c = elliptic(BaseField::Rational);
    let o = Place::from_id(&c, "O").expect("O");
    for n in 1..=12i64 {
        let d = Divisor::from_place(&o, n);
        let Some(rr) = t.ok(rr_space(&c, &d), || format!("L({n}O)")) else {
            continue;
        };
        t.eq(rr.dim, n as usize, &format!("dim L({n}O)"));
        let Some(s) = rr.space else {
            t.check(false, || format!("L({n}O) is zero"));
            continue;
        };
        if let Some(v) = t.ok(s.valuation_set(&o), || format!("v(L({n}O))")) {
            let want: BTreeSet<i64> = std::iter::once(0).chain((2..=n).map(|k| -k)).collect();
            t.eq(
                v.into_iter().collect::<BTreeSet<_>>(),
                want,
                &format!("v_O(L({n}O))"),
            );
        }
    }
}

fn c7(t: &mut Tally) {
    let e = elliptic(BaseField::Rational);
    let line = Curve::rational(BaseField::Rational);
    for (c, id) in [(&e, "O"), (&line, "Pinf")] {
        let p = Place::from_id(c, id).expect("place");
        for m in 2..=6 {
            for n in 3..=6 {
                let (d1, d2) = (Divisor::from_place(&p, m), Divisor::from_place(&p, n));
                if let Some(r) = t.ok(mumford_check(c, &d1, &d2), || format!("{m}{id}, {n}{id}")) {
                    t.check(r.hypotheses && r.equal, || {
                        format!("L({m}{id})L({n}{id}): {r:?}")
                    });
                }
            }
        }
    }
}

fn ground_truth_checks(
    t: &mut Tally,
    tag: &str,
    n: usize,
    genus: usize,
    codim: usize,
    cl: &Classification,
) {
    t.eq(cl.genus, Some(genus), &format!("{tag} genus"));
    t.eq(cl.divisor.degree(), n as i64, &format!("{tag} deg D_S"));
    t.eq(cl.codim, codim, &format!("{tag} codim"));
    t.check(
        matches!(cl.p_index, Some(j) if j == 2 || j == n - 1),
        || format!("{tag} P-index {:?} not in {{2, {}}}", cl.p_index, n - 1),
    );
}

/// Genus-1 models used for random `L(D)`; the last one is split at infinity.
const GENUS1_MODELS: [&str; 3] = ["y^2 = x^3 - x", "y^2 = x^3 + x + 1", "y^2 = x^4 + 3*x + 1"];

fn c8(cfg: &SuiteConfig) -> Tally {
    let count = cfg.count(100);
    let curves: Vec<Arc<Curve>> = GENUS1_MODELS
        .iter()
        .map(|m| Curve::parse(m, fp()).expect("model"))
        .collect();
    let line = Curve::rational(fp());
    let mut t = par_tally(count, |i, t| {
        let n = 5 + i % 4;
        let curve = &curves[i % curves.len()];
        let tag = format!("genus-1 #{i} on {curve}");
        let Some(g) = t.ok(
            generate_random(GenKind::Rr, curve, n, cfg.seed_for(8, i)),
            || tag.clone(),
        ) else {
            return;
        };
        if let Some(cl) = t.ok(classify(&g.subspace), || tag.clone()) {
            ground_truth_checks(t, &tag, n, 1, 0, &cl);
            t.check(matches!(cl.form, Form::Genus1RR { .. }), || {
                format!("{tag}: form {}", cl.form.name())
            });
        }
    });
    t.merge(par_tally(count, |i, t| {
        let n = 4 + i % 5;
        let tag = format!("genus-0 #{i}");
        let Some(g) = t.ok(
            generate_random(GenKind::Codim1, &line, n, cfg.seed_for(80, i)),
            || tag.clone(),
        ) else {
            return;
        };
        t.eq(g.subspace.gamma(), 1, &format!("{tag} gamma"));
        if let Some(cl) = t.ok(classify(&g.subspace), || tag.clone()) {
            ground_truth_checks(t, &tag, n, 0, 1, &cl);
        }
    }));
    t
}

fn c9(cfg: &SuiteConfig) -> Tally {
    let line = Curve::rational(fp());
    let mut t = par_tally(cfg.count(100), |i, t| {
        let kind = if i % 2 == 0 {
            FormType::I
        } else {
            FormType::II
        };
        let n = 4 + (i / 2) % 4;
        let tag = format!("form #{i} ({kind:?}, n={n})");
        let mut rng = rng_for(cfg.seed_for(9, i));
        let Some((s, _)) = t.ok(random_canonical(&line, kind, n, &mut rng), || tag.clone()) else {
            return;
        };
        let Some(cl) = t.ok(classify(&s), || tag.clone()) else {
            return;
        };
        t.check(matches!(cl.form, Form::Genus0 { .. }), || {
            format!("{tag}: form {}", cl.form.name())
        });
        if let Some(rebuilt) = t.ok(cl.form.rebuild(n), || format!("{tag} rebuild")) {
            t.check(rebuilt.as_ref() == Some(&s), || {
                format!("{tag}: rebuilt space differs")
            });
        }
    });
    let q = Curve::rational(BaseField::Rational);
    if let Some(s) = t.ok(span(&q, &["1", "x^2", "x^3", "x^4"]), || "hole span".into()) {
        if let Some(cl) = t.ok(classify(&s), || "classify span(1, x^2, x^3, x^4)".into()) {
            match &cl.form {
                Form::Genus0 { form, .. } => {
                    t.eq(form.kind, FormType::II, "type");
                    t.check(form.alpha.is_zero(), || format!("alpha = {}", form.alpha));
                }
                f => t.check(false, || format!("form {}", f.name())),
            }
        }
    }
    t
}

fn c10(t: &mut Tally) {
    let Some(c) = t.ok(Curve::parse("y^2 = -x^2 - 1", BaseField::Rational), || {
        "conic".into()
    }) else {
        return;
    };
    let Some(s) = t.ok(span(&c, &["1", "x", "y"]), || "span".into()) else {
        return;
    };
    t.eq(s.gamma(), 0, "gamma");
    let Some(cl) = t.ok(classify(&s), || "classify".into()) else {
        return;
    };
    let terms: Vec<(u32, i64)> = cl.divisor.terms().map(|(p, k)| (p.degree(), k)).collect();
    t.eq(terms, vec![(2, 1)], "D_S as (degree, coefficient)");
    t.eq(cl.codim, 0, "codim of S in L(D_S)");
    t.check(matches!(cl.form, Form::CodimOneUnnormalized { .. }), || {
        format!("expected no progression basis, got {}", cl.form.name())
    });
}

fn c11(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    for mask in 0u32..1 << 12 {
        let a: Vec<i64> = std::iter::once(0)
            .chain((1..=12).filter(|k| mask >> (k - 1) & 1 == 1))
            .collect();
        if a.len() < 4 {
            continue;
        }
        let set = IntSet::new(a.clone()).expect("nonempty");
        let doubling = sumset(&set, &set).len() == 2 * set.len();
        if let Some(h) = t.ok(structure_2k(&set), || format!("structure_2k({a:?})")) {
            t.check(h.is_some() == doubling, || {
                format!("{a:?}: structure {h:?}, doubling {doubling}")
            });
            if let Some(h) = h {
                t.eq(h.to_set(), set, "reconstruction");
            }
        }
    }
    t.merge(par_tally(cfg.count(1000), |i, t| {
        let d = 1 + i % 3;
        let mut rng = rng_for(cfg.seed_for(11, i));
        let pts = loop {
            let k = rng.gen_range(d + 1..=12);
            let pts: BTreeSet<Vec<i64>> = (0..k)
                .map(|_| (0..d).map(|_| rng.gen_range(0..6)).collect())
                .collect();
            let pts: Vec<Vec<i64>> = pts.into_iter().collect();
            if affine_rank(&pts).ok() == Some(d) {
                break pts;
            }
        };
        if let Some(ok) = t.ok(freiman_lemma_holds(&pts, d), || format!("Freiman d={d}")) {
            t.check(ok, || format!("Freiman bound fails for {pts:?}"));
        }
    }));
    t
}

fn property_checks(i: usize, cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let curve = if i.is_multiple_of(2) {
        Curve::rational(fp())
    } else {
        elliptic(fp())
    };
    let mut rng = rng_for(cfg.seed_for(12, i));
    let n = rng.gen_range(2..=4);
    let s = random_subspace(&curve, n, 3, &mut rng)?;
    let u = random_subspace(&curve, rng.gen_range(1..=3), 2, &mut rng)?;
    let v = random_subspace(&curve, rng.gen_range(1..=3), 2, &mut rng)?;
    let places = random_rational_places(&curve, 2, &mut rng)?;
    let tag = format!("subspace #{i}");
    let s2 = s.square();
    t.check(s2.dim() + 1 >= 2 * s.dim(), || {
        format!("{tag}: dim S^2 < 2 dim S - 1")
    });
    let uv = u.product(&v)?;
    for p in &places {
        let vs = s.valuation_set(p)?;
        t.eq(vs.len(), s.dim(), &format!("{tag}: |v_P(S)| at {}", p.id()));
        let vs2: BTreeSet<i64> = s2.valuation_set(p)?.into_iter().collect();
        let sums: BTreeSet<i64> = vs
            .iter()
            .flat_map(|a| vs.iter().map(move |b| a + b))
            .collect();
        t.check(sums.is_subset(&vs2), || {
            format!("{tag}: v(S)+v(S) not in v(S^2) at {}", p.id())
        });
        t.eq(
            uv.min_valuation(p),
            u.min_valuation(p) + v.min_valuation(p),
            &format!("{tag}: min v(UV) at {}", p.id()),
        );
        let l = lattice(&s, p)?;
        t.check(l.weights_consistent(), || {
            format!("{tag}: lattice weights at {}", p.id())
        });
        t.check(l.codim1_holds, || {
            format!("{tag}: codim-1 squares at {}", p.id())
        });
    }
    let (p, q) = (&places[0], &places[1]);
    let lhs = uv.separates(p, q)?;
    let rhs = u.separates(p, q)? || v.separates(p, q)?;
    t.eq(
        lhs,
        rhs,
        &format!("{tag}: separation of {} and {}", p.id(), q.id()),
    );
    // Random elements of S may vanish at places of degree above 2, which
    // divisor bookkeeping does not enumerate; those are reported, not
    // counted. Factored elements always stay in the supported range.
    for f in s.basis() {
        match principal_divisor(&f) {
            Ok(d) => t.eq(d.degree(), 0, &format!("{tag}: deg ({f})")),
            Err(Error::UnsupportedPlace(_)) => {}
            Err(e) => return Err(e),
        }
    }
    for _ in 0..3 {
        let f = random_factored_element(&curve, &mut rng)?;
        t.eq(
            principal_divisor(&f)?.degree(),
            0,
            &format!("{tag}: deg ({f})"),
        );
    }
    Ok(())
}

/// A product of powers of `x - a`, of lines `y - l(x)` through two rational
/// points, and on the line of quadratics in `x`, so every zero and pole
/// lies on a place of degree at most 2.
fn random_factored_element(curve: &Arc<Curve>, rng: &mut impl Rng) -> Result<FFElement> {
    let field = curve.field();
    let x = FFElement::x(curve);
    let k = |c: FieldElem| FFElement::constant(curve, c);
    let mut f = FFElement::one(curve);
    for _ in 0..rng.gen_range(1..=4) {
        let factor = match rng.gen_range(0..3) {
            0 => x.sub(&k(random_scalar(field, rng))),
            1 if curve.is_rational() => x
                .mul(&x)
                .add(&x.scale(&random_scalar(field, rng)))
                .add(&k(random_scalar(field, rng))),
            _ if curve.is_rational() => x.sub(&k(random_scalar(field, rng))),
            1 => x.sub(&k(random_scalar(field, rng))),
            _ => {
                let pts = random_rational_places(curve, 2, rng)?;
                let y = FFElement::y(curve)?;
                let coords: Option<Vec<(FieldElem, FieldElem)>> = pts
                    .iter()
                    .filter(|p| !p.is_infinite())
                    .map(|p| Some((p.residue(&x)?, p.residue(&y)?)))
                    .collect();
                match coords.as_deref() {
                    Some([(x1, y1), (x2, y2)]) if x1 != x2 => {
                        let m = &(y2 - y1) / &(x2 - x1);
                        y.sub(&x.sub(&k(x1.clone())).scale(&m)).sub(&k(y1.clone()))
                    }
                    _ => x.sub(&k(random_scalar(field, rng))),
                }
            }
        };
        if factor.is_zero() {
            continue;
        }
        let e = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2);
        f = f.mul(&factor.pow(e)?);
    }
    Ok(f.scale(&random_nonzero(field, rng)))
}

fn c12(cfg: &SuiteConfig) -> Tally {
    par_tally(cfg.count(200), |i, t| {
        let r = property_checks(i, cfg, t);
        t.ok(r, || format!("subspace #{i}"));
    })
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> CriterionResult {
    assert!((1..=CRITERIA.len()).contains(&id), "no criterion {id}");
    let mut t = Tally::default();
    match id {
        1 => c1(&mut t),
        2 => c2(&mut t),
        3 => c3(&mut t),
        4 => c4(&mut t),
        5 => c5(&mut t),
        6 => c6(&mut t),
        7 => c7(&mut t),
        8 => t = c8(cfg),
        9 => t = c9(cfg),
        10 => c10(&mut t),
        11 => t = c11(cfg),
        _ => t = c12(cfg),
    }
    CriterionResult {
        id,
        name: CRITERIA[id - 1],
        checks: t.checks,
        failures: t.failures,
    }
}

/// All criteria, in order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CriterionResult> {
    (1..=CRITERIA.len())
        .into_par_iter()
        .map(|id| run_criterion(id, cfg))
        .collect()
}
