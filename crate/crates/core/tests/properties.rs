use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use combgenus::additive::{structure_2k, sumset, IntSet};
use combgenus::algebra::BaseField;
use combgenus::classify::{classify, Form, FormType};
use combgenus::cli::generate::{random_canonical, random_divisor, random_rational_places, random_subspace, rng_for};
use combgenus::function_field::{principal_divisor, Curve, FFElement};
use combgenus::riemann_roch::{riemann_roch_dim, rr_space};

fn curve(elliptic: bool) -> Arc<Curve> {
    let f = BaseField::default_prime();
    if elliptic {
        Curve::parse("y^2 = x^3 - x", f).unwrap()
    } else {
        Curve::rational(f)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn square_dimension_bound(seed in any::<u64>(), elliptic in any::<bool>(), n in 1usize..5) {
        let c = curve(elliptic);
        let s = random_subspace(&c, n, 3, &mut rng_for(seed)).unwrap();
        prop_assert!(s.square().dim() + 1 >= 2 * s.dim());
        prop_assert!(s.gamma() >= 0);
    }

    #[test]
    fn gamma_is_invariant_under_scaling(seed in any::<u64>(), elliptic in any::<bool>()) {
        let c = curve(elliptic);
        let mut rng = rng_for(seed);
        let s = random_subspace(&c, 3, 2, &mut rng).unwrap();
        let f = random_subspace(&c, 1, 2, &mut rng).unwrap().basis()[0].clone();
        prop_assume!(!f.is_zero());
        let t = s.scale_by(&f).unwrap();
        prop_assert_eq!(t.dim(), s.dim());
        prop_assert_eq!(t.gamma(), s.gamma());
    }

    #[test]
    fn valuations_at_rational_places(seed in any::<u64>(), elliptic in any::<bool>()) {
        let c = curve(elliptic);
        let mut rng = rng_for(seed);
        let u = random_subspace(&c, 3, 3, &mut rng).unwrap();
        let v = random_subspace(&c, 2, 2, &mut rng).unwrap();
        let uv = u.product(&v).unwrap();
        for p in random_rational_places(&c, 2, &mut rng).unwrap() {
            let vu = u.valuation_set(&p).unwrap();
            prop_assert_eq!(vu.len(), u.dim());
            prop_assert_eq!(uv.min_valuation(&p), u.min_valuation(&p) + v.min_valuation(&p));
            let vuv: BTreeSet<i64> = uv.valuation_set(&p).unwrap().into_iter().collect();
            for a in &vu {
                for b in v.valuation_set(&p).unwrap() {
                    prop_assert!(vuv.contains(&(a + b)));
                }
            }
        }
    }

    #[test]
    fn rr_dimension_matches_formula(seed in any::<u64>(), elliptic in any::<bool>(), n in 1usize..8) {
        let c = curve(elliptic);
        let d = random_divisor(&c, n, &mut rng_for(seed)).unwrap();
        let rr = rr_space(&c, &d).unwrap();
        let want = riemann_roch_dim(n as i64, c.genus()).unwrap();
        prop_assert_eq!(rr.dim as i64, want);
        // L(D) has no base points once deg D ≥ 2g.
        if let (Some(s), true) = (rr.space, n >= 2 * c.genus()) {
            prop_assert_eq!(s.divisor().unwrap(), d);
        }
    }

    #[test]
    fn divisor_of_product_is_sum(a in -20i64..20, b in -20i64..20, j in -3i64..4, k in -3i64..4) {
        let c = curve(true);
        let x = FFElement::x(&c);
        let f = x.sub(&FFElement::constant(&c, c.field().from_i64(a))).pow(j).unwrap();
        let g = x.sub(&FFElement::constant(&c, c.field().from_i64(b))).pow(k).unwrap().mul(&FFElement::y(&c).unwrap());
        let df = principal_divisor(&f).unwrap();
        let dg = principal_divisor(&g).unwrap();
        prop_assert_eq!(df.degree(), 0);
        prop_assert_eq!(principal_divisor(&f.mul(&g)).unwrap(), df.add(&dg));
    }

    #[test]
    fn small_doubling_sets(elems in prop::collection::btree_set(-30i64..30, 4..10)) {
        let a = IntSet::new(elems.into_iter().collect()).unwrap();
        let aa = sumset(&a, &a);
        prop_assert!(aa.len() + 1 >= 2 * a.len());
        prop_assert_eq!(aa.len() == 2 * a.len() - 1, a.is_progression());
        match structure_2k(&a).unwrap() {
            Some(h) => {
                prop_assert_eq!(aa.len(), 2 * a.len());
                prop_assert_eq!(h.to_set(), a);
            }
            None => prop_assert_ne!(aa.len(), 2 * a.len()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_forms_round_trip(seed in any::<u64>(), type_one in any::<bool>(), n in 4usize..7) {
        let c = curve(false);
        let kind = if type_one { FormType::I } else { FormType::II };
        let (s, _) = random_canonical(&c, kind, n, &mut rng_for(seed)).unwrap();
        let cl = classify(&s).unwrap();
        prop_assert_eq!(cl.genus, Some(0));
        prop_assert_eq!(cl.codim, 1);
        let is_genus0 = matches!(cl.form, Form::Genus0 { .. });
        prop_assert!(is_genus0, "form {}", cl.form.name());
        prop_assert_eq!(cl.form.rebuild(n).unwrap(), Some(s));
    }
}
