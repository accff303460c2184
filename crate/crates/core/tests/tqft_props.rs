mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{m, random_matrix, rng};
use torus_tqft::cobcat::ArrowExpr;
use torus_tqft::scalars::FieldElement;
use torus_tqft::sl2z::{named, GenWord, MatSL2};
use torus_tqft::tqft::{
    builtin, funar_trace_closed_form, leg_permutation, validate, ClosedFormTqft, FieldMatrix, Tqft,
    TqftDatum,
};
use torus_tqft::Error;

fn sealed(name: &str) -> Tqft {
    Tqft::new(builtin(name).unwrap()).unwrap()
}

fn all() -> [Tqft; 3] {
    [sealed("F1"), sealed("F2"), sealed("F3")]
}

fn matrix() -> impl Strategy<Value = MatSL2> {
    any::<u64>().prop_map(|seed| random_matrix(&mut rng(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rho_is_multiplicative(a in matrix(), b in matrix()) {
        for t in all() {
            let lhs = t.rho(&a.mat_mul(&b));
            let rhs = t.rho(&a).mul(&t.rho(&b)).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", t.name());
        }
    }

    #[test]
    fn beta_jump_holds_on_matrices(a in matrix()) {
        for t in all() {
            let lhs = ArrowExpr::compose(&ArrowExpr::beta(), &ArrowExpr::tensor(&ArrowExpr::cyl(a.clone()), &ArrowExpr::id(1))).unwrap();
            let rhs = ArrowExpr::compose(&ArrowExpr::beta(), &ArrowExpr::tensor(&ArrowExpr::id(1), &ArrowExpr::cyl(a.j_flip()))).unwrap();
            prop_assert_eq!(t.eval_expr(&lhs).unwrap(), t.eval_expr(&rhs).unwrap(), "{}", t.name());
        }
    }

    #[test]
    fn trace_is_the_closed_bundle(a in matrix()) {
        for t in all() {
            let bun = ArrowExpr::chain(&[
                ArrowExpr::beta(),
                ArrowExpr::tensor(&ArrowExpr::cyl(a.clone()), &ArrowExpr::id(1)),
                ArrowExpr::gamma(),
            ]).unwrap();
            let v = t.eval_expr(&bun).unwrap();
            prop_assert_eq!(v.as_scalar().unwrap(), &t.rho(&a).trace().unwrap());
            prop_assert_eq!(&t.bundle_contraction(&a).unwrap(), &t.bundle_invariant(&a));
        }
    }
}

#[test]
fn trace_equals_closed_bundle_on_two_hundred_words() {
    let mut r = rng(21);
    for t in all() {
        for _ in 0..200 {
            let a = random_matrix(&mut r);
            assert_eq!(
                t.bundle_contraction(&a).unwrap(),
                t.bundle_invariant(&a),
                "{} {a}",
                t.name()
            );
        }
    }
}

#[test]
fn counit_is_derived_from_beta_and_unit() {
    for name in ["F2", "F3"] {
        let t = sealed(name);
        let d = t.datum();
        let derived = d
            .beta
            .mul(
                &FieldMatrix::identity(&d.field, d.n)
                    .kron(d.eta.as_ref().unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(&derived, d.eps.as_ref().unwrap(), "{name}");
    }
}

#[test]
fn small_values() {
    let f3 = sealed("F3");
    assert_eq!(
        f3.bundle_invariant(&MatSL2::identity()),
        FieldElement::from_int(f3.field(), 3)
    );
    let f2 = sealed("F2");
    let xi = FieldElement::generator(f2.field()).unwrap();
    assert_eq!(f2.lens_invariant(&MatSL2::identity()).unwrap(), -&xi);
    assert_eq!(f2.lens_invariant(&named("Lambda1").unwrap()).unwrap(), -&xi);
    assert_eq!(
        f3.lens_invariant(&named("Lambda1").unwrap()).unwrap(),
        FieldElement::parse(f3.field(), "145065/8").unwrap()
    );
}

#[test]
fn f1_has_no_lens_invariant() {
    let f1 = sealed("F1");
    assert!(matches!(
        f1.lens_invariant(&MatSL2::identity()),
        Err(Error::MissingUnit(_))
    ));
    assert!(f1.eval_expr(&ArrowExpr::eta()).is_err());
}

/// `ρ(D_a)` has order 3 and level-3 congruence subgroups are normally
/// generated by `D_a^3`, so F2 sees matrices only modulo 3.
#[test]
fn f2_factors_through_residues_mod_3() {
    let f2 = sealed("F2");
    assert!(f2.rho(&MatSL2::d_a().pow(3)).is_identity());
    assert!(f2.rho(&MatSL2::d_b().pow(3)).is_identity());
    let mut r = rng(5);
    for _ in 0..100 {
        let a = random_matrix(&mut r);
        let c = random_matrix(&mut r);
        // an element of the level-3 congruence subgroup
        let k = c.mat_mul(&MatSL2::d_a().pow(3)).mat_mul(&c.inverse());
        assert_eq!(f2.rho(&a.mat_mul(&k)), f2.rho(&a));
    }
    // hence L(7,1) and L(7,2), L(65,8) and L(65,18) get equal values
    for (x, y) in [("Lambda1", "Lambda2"), ("Lambda8", "Lambda18")] {
        let (x, y) = (named(x).unwrap(), named(y).unwrap());
        assert_eq!(
            f2.lens_invariant(&x).unwrap(),
            f2.lens_invariant(&y).unwrap()
        );
    }
}

#[test]
fn closed_forms_agree_with_evaluation() {
    let f1 = sealed("F1");
    let (g, _) = torus_tqft::sl2z::funar_pair(1, 5, 4).unwrap();
    let (cg, ch) = funar_trace_closed_form(ClosedFormTqft::F1, 1, 5, 4).unwrap();
    assert_eq!(f1.bundle_invariant(&g), cg);
    assert_ne!(cg, ch);
    let f3 = sealed("F3");
    let (_, h) = torus_tqft::sl2z::funar_pair(-1, 5, 4).unwrap();
    let (_, ch) = funar_trace_closed_form(ClosedFormTqft::F3, -1, 5, 4).unwrap();
    assert_eq!(f3.bundle_invariant(&h), ch);
}

#[test]
fn json_round_trip_and_rejection() {
    for name in ["F1", "F2", "F3"] {
        let d = builtin(name).unwrap();
        let back = TqftDatum::from_json(&d.to_json()).unwrap();
        assert_eq!(back.rho_a, d.rho_a);
        assert_eq!(back.gamma, d.gamma);
        assert_eq!(back.eta, d.eta);
        assert!(validate(&back).passed());
    }
    let mut bad = builtin("F3").unwrap();
    bad.rho_b = bad.rho_a.clone();
    match Tqft::new(bad) {
        Err(Error::Validation(report)) => assert!(report.failures().count() > 0),
        other => panic!(
            "expected validation failure, got {:?}",
            other.map(|t| t.name().to_string())
        ),
    }
    assert!(TqftDatum::from_json("{\"name\": 1}").is_err());
}

#[test]
fn leg_permutations_implement_the_swap() {
    // τ on V ⊗ V with dim V = 2 swaps e_0 ⊗ e_1 and e_1 ⊗ e_0
    assert_eq!(leg_permutation(2, &[1, 0]), vec![0, 2, 1, 3]);
    let t = sealed("F2");
    let tau = t.eval_expr(&ArrowExpr::tau(1, 1)).unwrap();
    let x = t.rho(&m([[2, 1], [1, 1]]));
    let y = t.rho(&MatSL2::d_b());
    assert_eq!(
        tau.mul(&x.kron(&y).unwrap()).unwrap(),
        y.kron(&x).unwrap().mul(&tau).unwrap()
    );
}

#[test]
fn large_powers_stay_exact() {
    let f3 = sealed("F3");
    let big = MatSL2::d_a_pow(&BigInt::from(200)).mat_mul(&MatSL2::d_b_pow(&BigInt::from(-150)));
    let w: GenWord = "a^200 b^-150".parse().unwrap();
    assert_eq!(torus_tqft::sl2z::evaluate_word(&w), big);
    assert_eq!(
        f3.rho(&big),
        f3.rho(&MatSL2::d_a())
            .pow(200)
            .unwrap()
            .mul(&f3.rho(&MatSL2::d_b()).pow(-150).unwrap())
            .unwrap()
    );
}
