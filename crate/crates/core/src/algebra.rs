//! The Onsager algebra inside the sl₂ loop algebra.
//!
//! Conventions: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`. An Onsager element
//! `p(t)e + p(1/t)f + q(t)h` is stored as the pair `(p, q)`.

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::LaurentPoly;
use crate::scalar::Scalar;

/// Anything with a Lie bracket and enough linear structure to state the
/// Dolan–Grady relations.
pub trait LieBracket: Sized {
    fn bracket(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
    fn is_zero_element(&self) -> bool;
}

/// `[b1,[b1,[b1,b0]]] - 16[b1,b0]`.
pub fn dg_defect<B: LieBracket>(b0: &B, b1: &B) -> B {
    let c = b1.bracket(b0);
    let triple = b1.bracket(&b1.bracket(&c));
    triple.minus(&c.scaled(&Scalar::from_int(16)))
}

/// Both Dolan–Grady relations, decided exactly.
pub fn dg_check<B: LieBracket>(b0: &B, b1: &B) -> bool {
    dg_defect(b0, b1).is_zero_element() && dg_defect(b1, b0).is_zero_element()
}

/// A general element `pe·e + pf·f + ph·h` of the loop algebra.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Sl2Coord {
    pub pe: LaurentPoly,
    pub pf: LaurentPoly,
    pub ph: LaurentPoly,
}

impl Sl2Coord {
    pub fn new(pe: LaurentPoly, pf: LaurentPoly, ph: LaurentPoly) -> Self {
        Sl2Coord { pe, pf, ph }
    }

    pub fn e() -> Self {
        Sl2Coord { pe: LaurentPoly::one(), ..Default::default() }
    }

    pub fn f() -> Self {
        Sl2Coord { pf: LaurentPoly::one(), ..Default::default() }
    }

    pub fn h() -> Self {
        Sl2Coord { ph: LaurentPoly::one(), ..Default::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.pe.is_zero() && self.pf.is_zero() && self.ph.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Sl2Coord { pe: self.pe.scale(c), pf: self.pf.scale(c), ph: self.ph.scale(c) }
    }

    pub fn mul_poly(&self, r: &LaurentPoly) -> Self {
        Sl2Coord { pe: &self.pe * r, pf: &self.pf * r, ph: &self.ph * r }
    }

    pub fn bracket(&self, o: &Sl2Coord) -> Sl2Coord {
        let two = Scalar::from_int(2);
        let h = &(&self.pe * &o.pf) - &(&self.pf * &o.pe);
        let e = (&(&self.ph * &o.pe) - &(&self.pe * &o.ph)).scale(&two);
        let f = (&(&self.ph * &o.pf) - &(&self.pf * &o.ph)).scale(&-two);
        Sl2Coord { pe: e, pf: f, ph: h }
    }

    /// The Onsager element with this coordinate form, if it is one.
    pub fn to_onsager(&self) -> Option<OAElement> {
        if self.pf != self.pe.invert_variable() {
            return None;
        }
        OAElement::new(self.pe.clone(), self.ph.clone()).ok()
    }
}

impl<'a> Add<&'a Sl2Coord> for &'a Sl2Coord {
    type Output = Sl2Coord;
    fn add(self, o: &Sl2Coord) -> Sl2Coord {
        Sl2Coord { pe: &self.pe + &o.pe, pf: &self.pf + &o.pf, ph: &self.ph + &o.ph }
    }
}

impl<'a> Sub<&'a Sl2Coord> for &'a Sl2Coord {
    type Output = Sl2Coord;
    fn sub(self, o: &Sl2Coord) -> Sl2Coord {
        Sl2Coord { pe: &self.pe - &o.pe, pf: &self.pf - &o.pf, ph: &self.ph - &o.ph }
    }
}

impl LieBracket for Sl2Coord {
    fn bracket(&self, o: &Self) -> Self {
        Sl2Coord::bracket(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
}

/// `p(t)e + p(1/t)f + q(t)h` with `q(1/t) = -q(t)`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "RawElement", into = "RawElement")]
pub struct OAElement {
    p: LaurentPoly,
    q: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    p: LaurentPoly,
    q: LaurentPoly,
}

impl TryFrom<RawElement> for OAElement {
    type Error = Error;
    fn try_from(r: RawElement) -> Result<Self> {
        OAElement::new(r.p, r.q)
    }
}

impl From<OAElement> for RawElement {
    fn from(x: OAElement) -> Self {
        RawElement { p: x.p, q: x.q }
    }
}

impl OAElement {
    /// Rejects `q` unless `q(1/t) = -q(t)`.
    pub fn new(p: LaurentPoly, q: LaurentPoly) -> Result<Self> {
        if q.invert_variable() != -&q {
            return Err(Error::NotAntisymmetric(q.to_string()));
        }
        Ok(OAElement { p, q })
    }

    /// Builds `(p, (r - r̆)/2)`, which is always an Onsager element.
    pub fn from_p_and_antisymmetrized(p: LaurentPoly, r: &LaurentPoly) -> Self {
        let q = (r - &r.invert_variable()).scale(&Scalar::from_ratio(1, 2));
        OAElement { p, q }
    }

    pub fn zero() -> Self {
        OAElement::default()
    }

    pub fn p(&self) -> &LaurentPoly {
        &self.p
    }

    pub fn q(&self) -> &LaurentPoly {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn to_sl2(&self) -> Sl2Coord {
        Sl2Coord { pe: self.p.clone(), pf: self.p.invert_variable(), ph: self.q.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        OAElement { p: self.p.scale(c), q: self.q.scale(c) }
    }

    pub fn bracket(&self, o: &OAElement) -> OAElement {
        let s = self.to_sl2().bracket(&o.to_sl2());
        debug_assert_eq!(s.pf, s.pe.invert_variable());
        OAElement { p: s.pe, q: s.ph }
    }

    /// `ι`: `t ↦ 1/t` on every coefficient.
    pub fn iota(&self) -> OAElement {
        OAElement { p: self.p.invert_variable(), q: self.q.invert_variable() }
    }

    /// `σ`: `t ↦ -t` on every coefficient.
    pub fn sigma(&self) -> OAElement {
        OAElement { p: self.p.negate_variable(), q: self.q.negate_variable() }
    }

    /// Linear combination `Σ c_m A_m + Σ d_m G_m` encoded as Laurent polynomials.
    pub fn from_generators(a: &LaurentPoly, g: &LaurentPoly) -> OAElement {
        OAElement { p: a.scale(&Scalar::from_int(2)), q: g - &g.invert_variable() }
    }
}

/// `A_m = 2tᵐe + 2t⁻ᵐf`.
pub fn generator_a(m: i64) -> OAElement {
    OAElement { p: LaurentPoly::monomial(Scalar::from_int(2), m), q: LaurentPoly::zero() }
}

/// `G_m = (tᵐ - t⁻ᵐ)h`.
pub fn generator_g(m: i64) -> OAElement {
    let q = LaurentPoly::from_terms([(m, Scalar::one()), (-m, -Scalar::one())]);
    OAElement { p: LaurentPoly::zero(), q }
}

impl<'a> Add<&'a OAElement> for &'a OAElement {
    type Output = OAElement;
    fn add(self, o: &OAElement) -> OAElement {
        OAElement { p: &self.p + &o.p, q: &self.q + &o.q }
    }
}

impl<'a> Sub<&'a OAElement> for &'a OAElement {
    type Output = OAElement;
    fn sub(self, o: &OAElement) -> OAElement {
        OAElement { p: &self.p - &o.p, q: &self.q - &o.q }
    }
}

impl Neg for &OAElement {
    type Output = OAElement;
    fn neg(self) -> OAElement {
        OAElement { p: -&self.p, q: -&self.q }
    }
}

impl LieBracket for OAElement {
    fn bracket(&self, o: &Self) -> Self {
        OAElement::bracket(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
}

impl LieBracket for Matrix {
    fn bracket(&self, o: &Self) -> Self {
        self.commutator(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(generator_a(0).p(), &"2".parse::<LaurentPoly>().unwrap());
        assert_eq!(generator_a(-3).p(), &"2*t^-3".parse::<LaurentPoly>().unwrap());
        assert!(generator_g(0).is_zero());
        assert_eq!(generator_g(-4), -&generator_g(4));
    }

    #[test]
    fn onsager_relations_samples() {
        assert_eq!(generator_a(1).bracket(&generator_a(0)), generator_g(1).scale(&Scalar::from_int(4)));
        assert!(generator_g(2).bracket(&generator_g(5)).is_zero());
        let rhs = &generator_a(1).scale(&Scalar::from_int(2)) - &generator_a(3).scale(&Scalar::from_int(2));
        assert_eq!(generator_a(2).bracket(&generator_g(1)), rhs);
    }

    #[test]
    fn involutions() {
        assert_eq!(generator_a(2).iota(), generator_a(-2));
        assert_eq!(generator_g(3).iota(), -&generator_g(3));
        assert_eq!(generator_a(1).sigma(), -&generator_a(1));
        assert_eq!(generator_a(2).sigma(), generator_a(2));
    }

    #[test]
    fn dolan_grady_examples() {
        assert!(dg_check(&generator_a(0), &generator_a(1)));
        assert!(dg_check(&generator_a(0), &generator_a(0)));
        assert!(!dg_check(&generator_a(0), &generator_g(1)));
        assert!(dg_check(&generator_a(0).to_sl2(), &generator_a(1).to_sl2()));
    }

    #[test]
    fn rejects_symmetric_q() {
        let q: LaurentPoly = "t + t^-1".parse().unwrap();
        assert!(OAElement::new(LaurentPoly::zero(), q).is_err());
        let json = r#"{"p":"2*t","q":"t + t^-1"}"#;
        assert!(serde_json::from_str::<OAElement>(json).is_err());
    }
}
