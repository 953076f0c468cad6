mod common;

use common::{element, int, multiple_of, s};
use onsager::algebra::{generator_a, generator_g};
use onsager::combinat::shifted_factorial;
use onsager::ideals::{elementary, ReciprocalPoly};
use onsager::quotients::{build_quotient, image_dimension, project, BasisLabel, QuotientAlgebra, Sl2Kind};
use onsager::Scalar;
use proptest::prelude::*;

fn generic_points() -> Vec<Scalar> {
    vec![int(2), int(3), Scalar::i(), s("-1/2"), &s("1/2") + &Scalar::i()]
}

fn unit_points() -> Vec<Scalar> {
    vec![int(1), int(-1)]
}

/// Coefficient `m^{(j)} a^{m-j}` of `uʲ/j!` in the Taylor series of `t^m` at `a`.
fn taylor_coeff(m: i64, j: usize, a: &Scalar) -> Scalar {
    &shifted_factorial(&int(m), j) * &a.pow(m - j as i64).unwrap()
}

#[test]
fn generators_expand_with_shifted_factorials() {
    for a in generic_points() {
        for order in 1..=5 {
            let q = build_quotient(&a, order).unwrap();
            let at = |k: Sl2Kind, j: usize| q.index_of(&BasisLabel::Triple(k, j)).unwrap();
            for m in -4i64..=4 {
                let pa = project(&generator_a(m), &a, order).unwrap();
                let pg = project(&generator_g(m), &a, order).unwrap();
                for j in 0..order {
                    assert_eq!(pa[at(Sl2Kind::E, j)], &int(2) * &taylor_coeff(m, j, &a), "A_{m}, e_{j}, a = {a}");
                    assert_eq!(pa[at(Sl2Kind::F, j)], &int(2) * &taylor_coeff(-m, j, &a), "A_{m}, f_{j}, a = {a}");
                    assert!(pa[at(Sl2Kind::H, j)].is_zero());
                    let h = &taylor_coeff(m, j, &a) - &taylor_coeff(-m, j, &a);
                    assert_eq!(pg[at(Sl2Kind::H, j)], h, "G_{m}, h_{j}, a = {a}");
                }
            }
        }
    }
}

#[test]
fn dimensions() {
    for order in 1..=6 {
        for a in generic_points() {
            assert_eq!(build_quotient(&a, order).unwrap().dim(), 3 * order);
            assert_eq!(image_dimension(&a, order).unwrap(), 3 * order);
        }
        for a in unit_points() {
            assert_eq!(build_quotient(&a, order).unwrap().dim(), order + order / 2);
            assert_eq!(image_dimension(&a, order).unwrap(), order + order / 2);
        }
    }
}

#[test]
fn onsager_relations_survive_projection() {
    for a in generic_points().into_iter().chain(unit_points()) {
        let order = 5;
        let q = build_quotient(&a, order).unwrap();
        let pr = |x: &onsager::OAElement| project(x, &a, order).unwrap();
        for l in -3i64..=3 {
            for m in -3i64..=3 {
                let lhs = q.bracket(&pr(&generator_a(l)), &pr(&generator_a(m)));
                let rhs: Vec<Scalar> = pr(&generator_g(l - m)).iter().map(|c| c * &int(4)).collect();
                assert_eq!(lhs, rhs, "[A_{l}, A_{m}] at a = {a}");
                let lhs = q.bracket(&pr(&generator_g(l)), &pr(&generator_a(m)));
                let rhs = pr(&(&generator_a(m + l).scale(&int(2)) - &generator_a(m - l).scale(&int(2))));
                assert_eq!(lhs, rhs, "[G_{l}, A_{m}] at a = {a}");
            }
        }
    }
}

#[test]
fn quotients_are_lie_algebras() {
    for a in generic_points().into_iter().chain(unit_points()) {
        for order in 1..=4 {
            let q = build_quotient(&a, order).unwrap();
            assert!(q.check_antisymmetry() && q.check_jacobi(), "a = {a}, L = {order}");
        }
    }
}

#[test]
fn sigma_carries_one_to_minus_one() {
    for order in 1..=6 {
        let plus = build_quotient(&int(1), order).unwrap();
        let minus = build_quotient(&int(-1), order).unwrap();
        assert!(plus.same_structure(&minus));
        let x = &generator_a(2) + &generator_g(3);
        assert_eq!(project(&x, &int(-1), order).unwrap(), project(&x.sigma(), &int(1), order).unwrap());
    }
}

#[test]
fn json_round_trip() {
    for (a, order) in [(int(-1), 5), (Scalar::i(), 3), (s("3/2"), 2)] {
        let q = build_quotient(&a, order).unwrap();
        let text = serde_json::to_string(&q).unwrap();
        let back: QuotientAlgebra = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_is_a_morphism(x in element(), y in element(), idx in 0usize..7, order in 1usize..5) {
        let a = generic_points().into_iter().chain(unit_points()).nth(idx).unwrap();
        let q = build_quotient(&a, order).unwrap();
        let lhs = project(&x.bracket(&y), &a, order).unwrap();
        let rhs = q.bracket(&project(&x, &a, order).unwrap(), &project(&y, &a, order).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_contains_the_ideal(x in element(), idx in 0usize..7, order in 1usize..4) {
        let a = generic_points().into_iter().chain(unit_points()).nth(idx).unwrap();
        let u = ReciprocalPoly::from_poly(&elementary(&a).unwrap()).unwrap();
        let p = u.poly().pow(order as u32);
        let x = multiple_of(&p, &x);
        prop_assert!(project(&x, &a, order).unwrap().iter().all(Scalar::is_zero));
    }
}
