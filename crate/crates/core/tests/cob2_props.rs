use proptest::prelude::*;

use tqftwb_core::cob2::{
    canonical_term, normalize, parse_term, random_context, random_rewrite, random_term, CobordismTerm, Generator,
    SurfaceNormalForm, RELATION_INSTANCES,
};
use tqftwb_core::frobenius::closed_term;

/// Euler characteristic straight from generator counts: caps and cups are
/// discs, pants are -1, cylinders and twists are 0.
fn euler_from_generators(t: &CobordismTerm) -> i64 {
    match t {
        CobordismTerm::Generator(g) => match g {
            Generator::Eta | Generator::Eps => 1,
            Generator::Mu | Generator::Delta => -1,
            _ => 0,
        },
        CobordismTerm::Identity(_) => 0,
        CobordismTerm::Compose(a, b) | CobordismTerm::Tensor(a, b) => {
            euler_from_generators(a) + euler_from_generators(b)
        }
    }
}

fn euler_from_normal_form(nf: &SurfaceNormalForm) -> i64 {
    nf.components
        .iter()
        .map(|c| 2 - 2 * c.genus as i64 - (c.inputs.len() + c.outputs.len()) as i64)
        .sum()
}

#[test]
fn relation_suite_normalizes_equal() {
    for r in RELATION_INSTANCES.iter() {
        assert!(r.holds().unwrap(), "{}: {} vs {}", r.name, r.lhs, r.rhs);
    }
}

#[test]
fn closed_surfaces_have_their_genus() {
    for g in 0..6 {
        let nf = normalize(&closed_term(g)).unwrap();
        assert_eq!(nf.components.len(), 1);
        assert_eq!(nf.total_genus(), g);
        assert_eq!((nf.m, nf.n), (0, 0));
    }
}

#[test]
fn identity_normal_form() {
    for n in 0..5 {
        assert_eq!(
            normalize(&CobordismTerm::id(n)).unwrap(),
            SurfaceNormalForm::identity(n)
        );
    }
}

#[test]
fn handle_then_unit_is_torus_with_one_boundary() {
    let nf = normalize(&parse_term("mu . delta . eta").unwrap()).unwrap();
    assert_eq!(nf.canonical(), "0->1: [out 1 | g1]");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, ..ProptestConfig::default() })]

    #[test]
    fn rewrites_are_congruent_in_context(seed in any::<u64>(), size in 1usize..12, ctx in 0usize..6) {
        let t = random_term(seed, size, 4);
        let r = random_rewrite(&t, seed ^ 0x9e37, 6);
        prop_assert_eq!(normalize(&t).unwrap(), normalize(&r).unwrap());
        let wrapped_t = random_context(seed.wrapping_add(1), &t, ctx);
        let wrapped_r = random_context(seed.wrapping_add(1), &r, ctx);
        prop_assert_eq!(normalize(&wrapped_t).unwrap(), normalize(&wrapped_r).unwrap());
    }

    #[test]
    fn euler_characteristic_matches(seed in any::<u64>(), size in 1usize..16) {
        let t = random_term(seed, size, 5);
        let nf = normalize(&t).unwrap();
        prop_assert_eq!(euler_from_generators(&t), euler_from_normal_form(&nf));
    }

    #[test]
    fn print_then_parse_roundtrips(seed in any::<u64>(), size in 1usize..12) {
        let t = random_term(seed, size, 4);
        let back = parse_term(&t.to_string()).unwrap();
        prop_assert_eq!(normalize(&back).unwrap(), normalize(&t).unwrap());
        prop_assert_eq!(back.signature().unwrap(), t.signature().unwrap());
    }

    #[test]
    fn canonical_term_realizes_its_normal_form(seed in any::<u64>(), size in 1usize..12) {
        let nf = normalize(&random_term(seed, size, 4)).unwrap();
        prop_assert_eq!(normalize(&canonical_term(&nf)).unwrap(), nf);
    }
}
