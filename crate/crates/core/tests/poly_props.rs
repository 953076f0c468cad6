mod common;

use common::{int, laurent, polynomial, s};
use onsager::{LaurentPoly, Scalar};
use proptest::prelude::*;

fn centers() -> Vec<Scalar> {
    vec![int(2), int(-3), s("1/2"), s("1+i"), int(1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in laurent(-3, 3), g in laurent(-3, 3), h in laurent(-3, 3)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn display_parses_back(f in laurent(-4, 4)) {
        let back: LaurentPoly = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn inversion_is_an_involutive_morphism(f in laurent(-3, 3), g in laurent(-3, 3)) {
        prop_assert_eq!(f.invert_variable().invert_variable(), f.clone());
        prop_assert_eq!((&f * &g).invert_variable(), &f.invert_variable() * &g.invert_variable());
    }

    #[test]
    fn division_with_remainder(f in polynomial(6), d in polynomial(3)) {
        prop_assume!(!d.is_zero());
        let (q, r) = f.div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, f);
        if !r.is_zero() {
            prop_assert!(r.degree() < d.degree());
        }
    }

    #[test]
    fn gcd_and_lcm(f in polynomial(4), g in polynomial(4), c in polynomial(2)) {
        let f = &f * &c;
        let g = &g * &c;
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = f.gcd(&g);
        prop_assert!(d.divides(&f).unwrap() && d.divides(&g).unwrap());
        prop_assert!(c.is_zero() || c.strip_units().divides(&d).unwrap());
        let l = f.lcm(&g);
        prop_assert!(f.divides(&l).unwrap() && g.divides(&l).unwrap());
        prop_assert_eq!((&d * &l).strip_units().monic(), (&f * &g).strip_units().monic());
    }

    #[test]
    fn taylor_expansion_is_multiplicative(f in laurent(-3, 3), g in laurent(-3, 3), idx in 0usize..5, order in 1usize..6) {
        let a = &centers()[idx];
        let tf = f.taylor_expand(a, order).unwrap();
        let tg = g.taylor_expand(a, order).unwrap();
        let tfg = (&f * &g).taylor_expand(a, order).unwrap();
        prop_assert_eq!(tf.mul(&tg), tfg);
        prop_assert_eq!(tf.coeff(0), f.eval(a).unwrap());
    }

    #[test]
    fn vanishing_order_matches_root_multiplicity(f in polynomial(3), idx in 0usize..5, m in 0usize..4) {
        prop_assume!(!f.is_zero());
        let a = &centers()[idx];
        let lin = LaurentPoly::from_terms([(1, Scalar::one()), (0, -a)]);
        let g = &f * &lin.pow(m as u32);
        let k = g.root_multiplicity(a);
        prop_assert_eq!(k, m + f.root_multiplicity(a));
        let series = g.taylor_expand(a, k + 1).unwrap();
        prop_assert!((0..k).all(|j| series.coeff(j).is_zero()));
        prop_assert!(!series.coeff(k).is_zero());
    }
}
