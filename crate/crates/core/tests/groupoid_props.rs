use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use tqftwb_core::cob2::random_term;
use tqftwb_core::cob2::Generator;
use tqftwb_core::frobenius::{evaluate, generator_span};
use tqftwb_core::groupoid::{
    abelian_groupoid, comparison_functor, essential_equivalence_check, essential_equivalence_exhaustive, AbelianModel,
    FiniteGroupoid, GroupoidFunctor, DEFAULT_CHECK_BUDGET,
};

fn order_sum(model: &AbelianModel) -> BigRational {
    (0..model.len())
        .map(|p| BigRational::new(BigInt::from(1), BigInt::from(model.order(p))))
        .sum()
}

fn small_model() -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(2u64..5, 0..3), 1..3)
}

fn build(lists: &[Vec<u64>]) -> AbelianModel {
    let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
    AbelianModel::from_lists(&refs).unwrap()
}

fn projection(g: &FiniteGroupoid, h: &FiniteGroupoid, prod: &FiniteGroupoid) -> GroupoidFunctor {
    let mut objects = vec![0; prod.object_count()];
    let mut arrows = vec![0; prod.arrow_count()];
    for a1 in 0..g.arrow_count() {
        for a2 in 0..h.arrow_count() {
            let p = g.product_arrow(h, a1, a2, prod);
            arrows[p] = a1;
            objects[prod.arrow(p).src] = g.arrow(a1).src;
        }
    }
    GroupoidFunctor { objects, arrows }
}

#[test]
fn model_json_roundtrip() {
    let m = AbelianModel::from_json(r#"{"base": ["p", "q"], "isotropy": {"p": [2], "q": [2, 3]}}"#).unwrap();
    let back = AbelianModel::from_json(&m.to_json().to_string()).unwrap();
    assert_eq!(m, back);
    for bad in [
        "",
        "[]",
        r#"{"base": []}"#,
        r#"{"base": ["p"], "isotropy": {"p": [1]}}"#,
        r#"{"base": ["p", "p"]}"#,
    ] {
        assert!(AbelianModel::from_json(bad).is_err(), "{bad}");
    }
}

#[test]
fn strong_composite_of_eta_eps_is_not_an_equivalence() {
    // eta ; eps on Z/2: the comparison misses an orbit
    let m = AbelianModel::single(&[2]).unwrap();
    let eta = generator_span(&m, Generator::Eta, 10_000).unwrap();
    let eps = generator_span(&m, Generator::Eps, 10_000).unwrap();
    let c = comparison_functor(&eta, &eps, 10_000).unwrap();
    let (_, v) = c.verify(10_000).unwrap();
    assert!(v.fully_faithful && !v.essentially_surjective);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn product_cardinality_multiplies(a in small_model(), b in small_model()) {
        let (ga, gb) = (abelian_groupoid(&build(&a)), abelian_groupoid(&build(&b)));
        let prod = ga.product(&gb, 1_000_000).unwrap();
        prop_assert_eq!(prod.cardinality(), ga.cardinality() * gb.cardinality());
        prop_assert_eq!(ga.cardinality(), order_sum(&build(&a)));
        prop_assert_eq!(prod.object_count(), ga.object_count() * gb.object_count());
    }

    #[test]
    fn projections_are_functors(a in small_model(), b in small_model()) {
        let (ga, gb) = (abelian_groupoid(&build(&a)), abelian_groupoid(&build(&b)));
        let prod = ga.product(&gb, 1_000_000).unwrap();
        let p = projection(&ga, &gb, &prod);
        p.validate(&prod, &ga, DEFAULT_CHECK_BUDGET).unwrap();
        let id = GroupoidFunctor::identity(&ga);
        prop_assert_eq!(id.after(&p), p.clone());
        let v = essential_equivalence_check(&id, &ga, &ga);
        prop_assert!(v.equivalence);
        prop_assert_eq!(v, essential_equivalence_exhaustive(&id, &ga, &ga));
    }

    #[test]
    fn relabelling_points_keeps_invariants(a in small_model(), seed in any::<u64>()) {
        let m = build(&a);
        let names: Vec<String> = (0..m.len()).map(|i| format!("renamed-{i}")).collect();
        let lists: Vec<Vec<u64>> = (0..m.len()).map(|i| m.moduli(i).to_vec()).collect();
        let r = AbelianModel::new(names, lists).unwrap();
        let t = random_term(seed, 6, 3);
        let (x, y) = (evaluate(&m, &t).unwrap(), evaluate(&r, &t).unwrap());
        prop_assert_eq!(x.cardinality(), y.cardinality());
        prop_assert_eq!(x.orbit_count(), y.orbit_count());
        prop_assert_eq!(x.max_isotropy(), y.max_isotropy());
    }
}
