#![allow(dead_code)]

use onsager::ideals::ReciprocalPoly;
use onsager::{LaurentPoly, OAElement, Scalar};
use proptest::prelude::*;

pub fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

/// Small Gaussian-integer coefficients on exponents `lo..=hi`.
pub fn laurent(lo: i64, hi: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((lo..=hi, -4i64..=4, -1i64..=1), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(k, re, im)| (k, int(re) + Scalar::i() * int(im))))
    })
}

pub fn polynomial(deg: i64) -> impl Strategy<Value = LaurentPoly> {
    laurent(0, deg)
}

pub fn element() -> impl Strategy<Value = OAElement> {
    (laurent(-3, 3), laurent(-3, 3)).prop_map(|(p, r)| OAElement::from_p_and_antisymmetrized(p, &r))
}

/// Points with pairwise distinct classes `{a, 1/a}`, plus `±1`.
pub fn point_pool() -> Vec<Scalar> {
    ["2", "3", "-2", "i", "1+i", "3/2", "2-i", "1", "-1"].iter().map(|x| s(x)).collect()
}

pub fn reciprocal() -> impl Strategy<Value = ReciprocalPoly> {
    prop::collection::vec((0usize..9, 1usize..=2), 0..3).prop_map(|picks| {
        let pool = point_pool();
        let roots: Vec<(Scalar, usize)> = picks.into_iter().map(|(i, m)| (pool[i].clone(), m)).collect();
        ReciprocalPoly::from_roots(&roots).unwrap()
    })
}

/// An element of `I_P`: both components of `x` multiplied by `P`, then re-antisymmetrized.
pub fn multiple_of(p: &LaurentPoly, x: &OAElement) -> OAElement {
    let r = x.q().clone();
    OAElement::from_p_and_antisymmetrized(p * x.p(), &(p * &r))
}
