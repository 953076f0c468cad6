//! Laurent polynomials in `t` over the Gaussian rationals.

mod parse;
mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use series::TruncatedSeries;

/// Generalized binomial coefficient `C(x, j) = x(x-1)…(x-j+1)/j!` for integer `x`.
pub fn binomial(x: i64, j: usize) -> Scalar {
    let mut num = num_bigint::BigInt::from(1);
    let mut den = num_bigint::BigInt::from(1);
    for i in 0..j as i64 {
        num *= x - i;
        den *= i + 1;
    }
    Scalar::real(num_rational::BigRational::new(num, den))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Scalar::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    /// Polynomial with integer coefficients listed from the constant term upwards.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (k as i64, Scalar::from_int(c))))
    }

    pub fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Scalar)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// True when no negative exponent occurs.
    pub fn is_polynomial(&self) -> bool {
        self.low_degree().is_none_or(|k| k >= 0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect() }
    }

    /// `f(t) ↦ f(1/t)`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (-e, v.clone())).collect() }
    }

    /// `f(t) ↦ f(-t)`.
    pub fn negate_variable(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, if e.rem_euclid(2) == 1 { -v } else { v.clone() }))
                .collect(),
        }
    }

    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, v)| (e - 1, v * &Scalar::from_int(e))))
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> LaurentPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => LaurentPoly::zero(),
        }
    }

    pub fn eval(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() && !self.is_polynomial() {
            return Err(Error::ZeroPoint);
        }
        let mut acc = Scalar::zero();
        for (&k, c) in &self.terms {
            let ak = if k == 0 { Scalar::one() } else { a.pow(k).ok_or(Error::ZeroPoint)? };
            acc += &(c * &ak);
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        self.terms.iter().map(|(&k, c)| c.to_complex() * z.powi(k as i32)).sum()
    }

    /// Strips the unit factor `t^low`, returning a polynomial with nonzero constant term.
    pub fn strip_units(&self) -> LaurentPoly {
        match self.low_degree() {
            Some(k) => self.shift(-k),
            None => LaurentPoly::zero(),
        }
    }

    /// Euclidean division in `C[t]`. Both operands must be polynomials.
    pub fn div_rem(&self, d: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        if d.is_zero() {
            return Err(Error::ZeroModulus);
        }
        for p in [self, d] {
            if !p.is_polynomial() {
                return Err(Error::LaurentInput(p.to_string()));
            }
        }
        let dd = d.degree().unwrap();
        let lc_inv = d.leading_coeff().unwrap().inv().unwrap();
        let mut q = LaurentPoly::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading_coeff().unwrap() * &lc_inv;
            let k = rd - dd;
            for (e, v) in d.terms() {
                r.add_term(e + k, &-(v * &c));
            }
            q.add_term(k, &c);
        }
        Ok((q, r))
    }

    /// Remainder of `f` modulo `m` in `C[t, 1/t]`, after clearing units from both.
    pub fn rem_laurent(&self, m: &LaurentPoly) -> Result<LaurentPoly> {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        Ok(self.strip_units().div_rem(&m.strip_units())?.1)
    }

    /// Decides `f ∈ self · C[t, 1/t]`.
    pub fn divides(&self, f: &LaurentPoly) -> Result<bool> {
        Ok(f.rem_laurent(self)?.is_zero())
    }

    /// Exact quotient `f / self` in `C[t, 1/t]`, if it exists.
    pub fn exact_quotient(&self, f: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroModulus);
        }
        if f.is_zero() {
            return Ok(Some(LaurentPoly::zero()));
        }
        let (lf, ld) = (f.low_degree().unwrap(), self.low_degree().unwrap());
        let (q, r) = f.strip_units().div_rem(&self.strip_units())?;
        Ok(r.is_zero().then(|| q.shift(lf - ld)))
    }

    /// Monic gcd in `C[t]` of the unit-stripped inputs; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut a = self.strip_units();
        let mut b = other.strip_units();
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("polynomial operands").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let g = self.gcd(other);
        let prod = &self.strip_units() * &other.strip_units();
        prod.div_rem(&g).expect("nonzero gcd").0.monic()
    }

    /// Extended Euclid on polynomials: returns `(g, s, u)` with `s·a + u·b = g`, `g` monic.
    pub fn ext_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly)> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (LaurentPoly::one(), LaurentPoly::zero());
        let (mut u0, mut u1) = (LaurentPoly::zero(), LaurentPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let u = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        let lc = r0.leading_coeff().ok_or(Error::ZeroModulus)?.inv().unwrap();
        Ok((r0.scale(&lc), s0.scale(&lc), u0.scale(&lc)))
    }

    /// Multiplicity of the root `a` (exact repeated division by `t - a`).
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = LaurentPoly::from_terms([(1, Scalar::one()), (0, -a)]);
        let mut f = self.strip_units();
        let mut m = 0;
        loop {
            let (q, r) = f.div_rem(&lin).expect("polynomial operands");
            if !r.is_zero() {
                return m;
            }
            m += 1;
            f = q;
        }
    }

    /// First `order` Taylor coefficients of `f` around `t = a`, in plain powers of `u = t - a`.
    pub fn taylor_expand(&self, a: &Scalar, order: usize) -> Result<TruncatedSeries> {
        if a.is_zero() {
            return Err(Error::ZeroPoint);
        }
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut coeffs = vec![Scalar::zero(); order];
        for (&k, c) in &self.terms {
            // t^k = (a + u)^k = Σ_j C(k, j) a^{k-j} u^j, valid for negative k as a power series.
            for (j, slot) in coeffs.iter_mut().enumerate() {
                let b = binomial(k, j);
                if b.is_zero() {
                    continue;
                }
                let ak = a.pow(k - j as i64).unwrap();
                *slot += &(&(c * &b) * &ak);
            }
        }
        Ok(TruncatedSeries::new(a.clone(), coeffs))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&k, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = c.coefficient_parts(k != 0);
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let term = match (body.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => body,
                (false, false) => format!("{body}*{mono}"),
            };
            match (idx, neg) {
                (0, false) => write!(f, "{term}")?,
                (0, true) => write!(f, "-{term}")?,
                (_, false) => write!(f, " + {term}")?,
                (_, true) => write!(f, " - {term}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_poly(s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&k, c) in &o.terms {
            r.add_term(k, c);
        }
        r
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&k, c) in &o.terms {
            r.add_term(k, &-c);
        }
        r
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                r.add_term(a + b, &(x * y));
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
