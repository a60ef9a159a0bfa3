use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use tqftwb_core::lie::examples::{
    centralizer_coad_formula, coadjoint_group_matrix, CentralizerElement, SemidirectElement,
};
use tqftwb_core::lie::{
    char_coeffs, coad_formula_check, companion, make_algebra, section_identity, slice_report, slodowy_checks,
    stabilizer_family_check, Family, QMatrix, Sampler,
};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Faddeev-LeVerrier: M_0 = 0, c_0 = 1, M_k = A M_{k-1} + c_{k-1} I,
/// c_k = -tr(A M_k) / k.
fn faddeev_leverrier(a: &QMatrix) -> Vec<Q> {
    let n = a.rows;
    let mut c = vec![Q::one()];
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&QMatrix::identity(n).scale(&c[k - 1]));
        let ck = -a.mul(&m).trace() / q(k as i64);
        c.push(ck);
    }
    c
}

fn random_matrix(s: &mut Sampler, n: usize) -> QMatrix {
    QMatrix::from_rows((0..n).map(|_| s.vector(n)).collect())
}

#[test]
fn charpoly_agrees_with_faddeev_leverrier() {
    let mut s = Sampler::new(11);
    for n in 1..=6 {
        for _ in 0..10 {
            let a = random_matrix(&mut s, n);
            assert_eq!(a.charpoly(), faddeev_leverrier(&a), "n = {n}");
        }
    }
}

#[test]
fn companion_examples() {
    let m = companion(3, &[q(2), q(3)]).unwrap();
    assert_eq!(char_coeffs(&m).unwrap(), vec![q(-2), q(-3)]);
    assert_eq!(
        faddeev_leverrier(&companion(2, &[q(5)]).unwrap()),
        vec![q(1), q(0), q(-5)]
    );
}

#[test]
fn every_family_satisfies_jacobi() {
    for n in 2..=6 {
        make_algebra(Family::Sl(n)).unwrap();
    }
    make_algebra(Family::Sl2Semidirect).unwrap();
    make_algebra(Family::Sl3Centralizer).unwrap();
}

#[test]
fn duality_identity_every_family() {
    for f in [
        Family::Sl(2),
        Family::Sl(3),
        Family::Sl(4),
        Family::Sl2Semidirect,
        Family::Sl3Centralizer,
    ] {
        let rep = coad_formula_check(f, 20, 5).unwrap();
        assert!(rep.check("duality-identity").unwrap().passed, "{}", f.name());
    }
}

#[test]
fn closed_forms_fifty_samples() {
    for f in [Family::Sl2Semidirect, Family::Sl3Centralizer] {
        let rep = coad_formula_check(f, 50, 2024).unwrap();
        assert!(rep.passed, "{rep:?}");
        for c in &rep.checks {
            assert_eq!(c.samples, 50);
            assert_eq!(c.mismatches, 0);
        }
    }
}

#[test]
fn diagonal_torus_acts_by_weights() {
    // g = diag(r, r^-2, r): u scales by r^-3, v by r^3
    let r = Q::new(BigInt::from(2), BigInt::from(3));
    let g = CentralizerElement::new(r.clone(), Q::zero(), Q::zero(), Q::zero()).unwrap();
    let p = vec![q(1), q(1), q(1), q(1)];
    let out = centralizer_coad_formula(&g, &p);
    let r3 = &r * &r * &r;
    assert_eq!(out, vec![q(1), r3.recip(), r3, q(1)]);
}

#[test]
fn stabilizers_and_slices() {
    for f in [Family::Sl2Semidirect, Family::Sl3Centralizer] {
        assert!(stabilizer_family_check(f, 30, 8).unwrap().passed);
        let rep = slice_report(f, 30, 8).unwrap();
        assert!(rep.passed, "{rep:?}");
        let codim = rep.check("complement-codimension").unwrap();
        assert!(codim.values.values().all(|v| v == "2"));
    }
    assert!(slice_report(Family::Sl(3), 20, 8).unwrap().passed);
}

#[test]
fn slodowy_three() {
    let rep = slodowy_checks(3, 10, 4).unwrap();
    assert!(rep.passed);
    assert_eq!(rep.check("leaf-dimension").unwrap().samples, 10);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn section_identity_holds(n in 2usize..6, coeffs in prop::collection::vec((-20i64..20, 1i64..5), 5)) {
        let a: Vec<Q> = coeffs[..n - 1].iter().map(|&(p, d)| Q::new(p.into(), d.into())).collect();
        prop_assert!(section_identity(n, &a).unwrap());
        prop_assert_eq!(faddeev_leverrier(&companion(n, &a).unwrap())[1].clone(), Q::zero());
    }

    #[test]
    fn coadjoint_action_is_a_homomorphism(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let alg = make_algebra(Family::Sl3Centralizer).unwrap();
        let g = CentralizerElement::new(s.nonzero(), s.rational(), s.rational(), s.rational()).unwrap();
        let h = CentralizerElement::new(s.nonzero(), s.rational(), s.rational(), s.rational()).unwrap();
        let lhs = coadjoint_group_matrix(&alg, &g.mul(&h).matrix()).unwrap();
        let rhs = coadjoint_group_matrix(&alg, &g.matrix()).unwrap().mul(&coadjoint_group_matrix(&alg, &h.matrix()).unwrap());
        prop_assert_eq!(lhs, rhs);

        let alg = make_algebra(Family::Sl2Semidirect).unwrap();
        let a = s.rational();
        let b = s.rational();
        let x = SemidirectElement::unipotent_family(&a, &b);
        let y = SemidirectElement::new(QMatrix::from_rows(vec![vec![q(1), q(0)], vec![s.rational(), q(1)]]), s.vector(2)).unwrap();
        let lhs = coadjoint_group_matrix(&alg, &x.mul(&y).matrix()).unwrap();
        let rhs = coadjoint_group_matrix(&alg, &x.matrix()).unwrap().mul(&coadjoint_group_matrix(&alg, &y.matrix()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
