mod common;

use proptest::prelude::*;

use common::{m, random_expr, rng};
use torus_tqft::cobcat::{
    arrows_equal, normalize, ArrowExpr, Factor, FactorKind, NormalForm, Perm,
};
use torus_tqft::parse::parse_expr;
use torus_tqft::sl2z::MatSL2;
use torus_tqft::tqft::{builtin, eval, Arrow, Tqft};
use torus_tqft::Error;

fn f3() -> Tqft {
    Tqft::new(builtin("F3").unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_evaluate_like_their_expressions(seed in any::<u64>(), src in 0usize..=2) {
        let e = random_expr(&mut rng(seed), src, 6, true);
        let nf = normalize(&e);
        prop_assert_eq!((nf.source(), nf.target()), (e.source(), e.target()));
        let t = f3();
        prop_assert_eq!(eval(&t, Arrow::Expr(&e)).unwrap(), eval(&t, Arrow::Normal(&nf)).unwrap());
    }

    #[test]
    fn canonicalization_is_idempotent_and_sound(seed in any::<u64>(), src in 0usize..=2) {
        let e = random_expr(&mut rng(seed), src, 6, true);
        let c = normalize(&e).canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        // re-normalizing the printed normal form lands on the same class
        let again = normalize(&c.to_expr());
        prop_assert!(arrows_equal(&again, &c).unwrap());
        let t = f3();
        prop_assert_eq!(t.eval_expr(&e).unwrap(), t.eval_normal_form(&c).unwrap());
    }

    #[test]
    fn printed_expressions_parse_back(seed in any::<u64>(), src in 0usize..=2) {
        let e = random_expr(&mut rng(seed), src, 5, true);
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }
}

#[test]
fn composition_checks_arities() {
    let err = ArrowExpr::compose(&ArrowExpr::beta(), &ArrowExpr::id(3)).unwrap_err();
    assert!(matches!(err, Error::Arity(_)));
    assert!(ArrowExpr::compose(&ArrowExpr::beta(), &ArrowExpr::gamma()).is_ok());
}

#[test]
fn closed_bundles_depend_only_on_the_homeomorphism_type() {
    let bun = |a: &MatSL2| {
        normalize(
            &ArrowExpr::chain(&[
                ArrowExpr::beta(),
                ArrowExpr::tensor(&ArrowExpr::cyl(a.clone()), &ArrowExpr::id(1)),
                ArrowExpr::gamma(),
            ])
            .unwrap(),
        )
    };
    let a = m([[7, -8], [1, -1]]);
    let c = m([[2, 1], [1, 1]]);
    let conj = c.mat_mul(&a).mat_mul(&c.inverse());
    assert!(arrows_equal(&bun(&a), &bun(&conj)).unwrap());
    assert!(arrows_equal(&bun(&a), &bun(&a.j_flip())).unwrap());
    assert!(!arrows_equal(&bun(&a), &bun(&m([[2, 1], [1, 1]]))).unwrap());
}

#[test]
fn lens_arrows_follow_lens_moves() {
    let lens = |a: MatSL2| {
        normalize(
            &ArrowExpr::chain(&[ArrowExpr::eps(), ArrowExpr::cyl(a), ArrowExpr::eta()]).unwrap(),
        )
    };
    let l71 = m([[7, -8], [1, -1]]);
    let moved = MatSL2::d_b()
        .pow(-3)
        .mat_mul(&l71)
        .mat_mul(&MatSL2::d_a().pow(5));
    assert!(arrows_equal(&lens(l71.clone()), &lens(moved)).unwrap());
    assert!(arrows_equal(&lens(l71.clone()), &lens(l71.j_flip())).unwrap());
    assert!(!arrows_equal(&lens(l71), &lens(m([[7, 3], [2, 1]]))).unwrap());
}

#[test]
fn normal_form_constructor_checks_permutation_sizes() {
    let f = Factor::new(FactorKind::C2, MatSL2::identity());
    assert!(NormalForm::new(Perm::identity(1), vec![f.clone()], Perm::identity(1)).is_ok());
    assert!(NormalForm::new(Perm::identity(2), vec![f], Perm::identity(1)).is_err());
}

#[test]
fn arrows_of_different_shapes_are_unequal() {
    let a = normalize(&ArrowExpr::beta());
    let b = normalize(&ArrowExpr::id(2));
    assert!(!arrows_equal(&a, &b).unwrap_or(false));
}
