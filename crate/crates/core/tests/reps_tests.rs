mod common;

use common::{element, int, s};
use num_complex::Complex64;
use onsager::algebra::{generator_a, generator_g};
use onsager::ideals::{canonical_point, ideal_member};
use onsager::linalg::Matrix;
use onsager::reps::{
    build_rep, build_rep_complex, equivalence_key, hermitian_defect, is_irreducible, spin_matrices, EquivalenceKey,
    EvalRep, Spin,
};
use onsager::Scalar;
use proptest::prelude::*;

fn spin(two_s: u32) -> Spin {
    Spin::from_twice(two_s).unwrap()
}

/// Dimension of `{X : X M = M' X for both generators}`.
fn intertwiners(a: &EvalRep, b: &EvalRep) -> usize {
    if a.dim() != b.dim() {
        return 0;
    }
    let n = a.dim();
    let id = Matrix::identity(n);
    let mut rows = Vec::new();
    for (m, mp) in [(&a.m0, &b.m0), (&a.m1, &b.m1)] {
        let sys = &id.kron(&m.transpose()) - &mp.kron(&id);
        rows.extend(sys.to_rows());
    }
    Matrix::from_rows(rows).nullspace().len()
}

#[test]
fn sl2_basis_is_recovered_from_a0_a1_g1() {
    for a in [int(2), s("-3"), s("1/2"), Scalar::i(), &int(1) + &Scalar::i()] {
        for two_s in 1..=3 {
            let rep = build_rep(std::slice::from_ref(&a), &[spin(two_s)]).unwrap();
            let m0 = rep.image(&generator_a(0)).unwrap();
            let m1 = rep.image(&generator_a(1)).unwrap();
            let g1 = rep.image(&generator_g(1)).unwrap();
            let inv = a.inv().unwrap();
            let d = &a - &inv;
            let two_d = &int(2) * &d;
            let e = (&m1 - &m0.scale(&inv)).scale(&two_d.inv().unwrap());
            let f = (&m1 - &m0.scale(&a)).scale(&(-&two_d).inv().unwrap());
            let h = g1.scale(&d.inv().unwrap());
            let sr = spin_matrices(spin(two_s));
            assert_eq!((e, f, h), (sr.e.clone(), sr.f.clone(), sr.h.clone()), "a = {a}, 2s = {two_s}");
        }
    }
}

#[test]
fn surjectivity_matches_lie_closure_rank() {
    let pool = [int(2), int(3), s("1/2"), int(1), int(-1), Scalar::i(), s("-2")];
    let cases: Vec<Vec<usize>> = vec![
        vec![0],
        vec![3],
        vec![4],
        vec![0, 1],
        vec![0, 2],
        vec![0, 3],
        vec![1, 5],
        vec![5, 6],
        vec![3, 4],
        vec![0, 1, 5],
        vec![0, 6, 1],
    ];
    for idx in cases {
        let points: Vec<Scalar> = idx.iter().map(|&i| pool[i].clone()).collect();
        let spins = vec![spin(1); points.len()];
        let rep = build_rep(&points, &spins).unwrap();
        assert!(rep.dim() <= 16);
        let full = rep.lie_closure_dim() == 3 * points.len();
        assert_eq!(full, is_irreducible(&points).unwrap(), "points {points:?}");
        assert_eq!(rep.commutant_dim() == 1, full, "points {points:?}");
    }
}

#[test]
fn equal_keys_give_equivalent_representations() {
    let base = build_rep(&[int(2), int(3)], &[spin(1), spin(2)]).unwrap();
    let swapped = build_rep(&[int(3), int(2)], &[spin(2), spin(1)]).unwrap();
    let inverted = build_rep(&[s("1/2"), int(3)], &[spin(1), spin(2)]).unwrap();
    let other = build_rep(&[int(2), int(5)], &[spin(1), spin(2)]).unwrap();
    let respun = build_rep(&[int(2), int(3)], &[spin(2), spin(1)]).unwrap();
    let key = |r: &EvalRep| equivalence_key(&r.points, &r.spins).unwrap();
    for r in [&swapped, &inverted] {
        assert_eq!(key(r), key(&base));
        assert_eq!(intertwiners(&base, r), 1);
    }
    for r in [&other, &respun] {
        assert_ne!(key(r), key(&base));
        assert_eq!(intertwiners(&base, r), 0);
    }
    assert!(key(&base).irreducible);
}

#[test]
fn keys_and_reps_round_trip_through_json() {
    let rep = build_rep(&[int(2), Scalar::i()], &[spin(1), spin(1)]).unwrap();
    let back: EvalRep = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);
    let key = equivalence_key(&rep.points, &rep.spins).unwrap();
    let kback: EquivalenceKey = serde_json::from_str(&serde_json::to_string(&key).unwrap()).unwrap();
    assert_eq!(kback, key);
    // tampered matrices are rejected
    let mut v: serde_json::Value = serde_json::to_value(&rep).unwrap();
    v["M0"][0][0] = serde_json::json!("7");
    assert!(serde_json::from_value::<EvalRep>(v).is_err());
}

#[test]
fn unit_circle_points_are_hermitian() {
    let pts: Vec<Complex64> = [0.3f64, 1.1, 2.0].iter().map(|&th| Complex64::from_polar(1.0, th)).collect();
    let spins = [spin(1), spin(2), spin(1)];
    assert!(hermitian_defect(&pts, &spins).unwrap() < 1e-12);
    let off = [Complex64::new(2.0, 0.0)];
    assert!(hermitian_defect(&off, &[spin(1)]).unwrap() > 1e-3);
    let [m0, _] = build_rep_complex(&pts, &spins).unwrap();
    assert_eq!(m0.nrows(), 2 * 3 * 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kernel_is_the_ideal_of_the_points(
        x in element(),
        picks in prop::sample::subsequence(vec![0usize, 1, 2, 3, 4], 1..=3),
        scale_by_kernel in any::<bool>(),
    ) {
        let pool = [int(2), int(3), Scalar::i(), s("-1/2"), &int(1) + &Scalar::i()];
        let points: Vec<Scalar> = picks.iter().map(|&i| pool[i].clone()).collect();
        let spins = vec![spin(1); points.len()];
        let rep = build_rep(&points, &spins).unwrap();
        let k = rep.kernel_polynomial().unwrap();
        let x = if scale_by_kernel { common::multiple_of(k.poly(), &x) } else { x };
        prop_assert_eq!(rep.image(&x).unwrap().is_zero(), ideal_member(&x, &k));
    }

    #[test]
    fn canonical_point_is_stable_under_inversion(idx in 0usize..9) {
        let a = &common::point_pool()[idx];
        prop_assert_eq!(canonical_point(a).unwrap(), canonical_point(&a.inv().unwrap()).unwrap());
    }
}
