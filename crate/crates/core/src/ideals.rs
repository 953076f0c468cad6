//! Reciprocal polynomials and the ideals `I_P` they cut out of the Onsager algebra.

use serde::{Deserialize, Serialize};

use crate::algebra::OAElement;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::scalar::{Rational, Scalar};

/// Monic `P ∈ C[t]` with `P(t) = ±t^deg P · P(1/t)`, split as `(t-1)^L (t+1)^K P*`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReciprocalPoly {
    poly: LaurentPoly,
    mult_at_one: usize,
    mult_at_minus_one: usize,
    star_part: LaurentPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    elementary_factors: Option<Vec<(Scalar, usize)>>,
}

/// `U_a(t)`: `t² - (a + 1/a)t + 1`, or `t - a` when `a = ±1`.
pub fn elementary(a: &Scalar) -> Result<LaurentPoly> {
    let inv = a.inv().ok_or(Error::ZeroPoint)?;
    if a == &inv {
        return Ok(LaurentPoly::from_terms([(1, Scalar::one()), (0, -a)]));
    }
    Ok(LaurentPoly::from_terms([(2, Scalar::one()), (1, -(a + &inv)), (0, Scalar::one())]))
}

/// Representative of `{a, 1/a}`: `|a| ≥ 1`, then `Im a ≥ 0`, then `Re a ≥ 0`.
pub fn canonical_point(a: &Scalar) -> Result<Scalar> {
    let inv = a.inv().ok_or(Error::ZeroPoint)?;
    let one = Rational::from_integer(1.into());
    let n = a.norm_sqr();
    let keep = if n != one {
        n > one
    } else if a.im != inv.im {
        a.im > inv.im
    } else {
        a.re >= inv.re
    };
    Ok(if keep { a.clone() } else { inv })
}

/// `â = (a + 1/a)/2`.
pub fn hat(a: &Scalar) -> Result<Scalar> {
    let inv = a.inv().ok_or(Error::ZeroPoint)?;
    Ok((a + &inv).scale(&crate::scalar::rat(1, 2)))
}

pub fn is_reciprocal(f: &LaurentPoly) -> Result<bool> {
    if !f.is_polynomial() {
        return Err(Error::LaurentInput(f.to_string()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let d = f.degree().unwrap();
    let flipped = f.invert_variable().shift(d);
    Ok(&flipped == f || flipped == -f)
}

impl ReciprocalPoly {
    /// Validates `f` and extracts the multiplicities at `±1` by exact division.
    pub fn from_poly(f: &LaurentPoly) -> Result<Self> {
        if !is_reciprocal(f)? {
            return Err(Error::NotReciprocal(f.to_string()));
        }
        let mut star = f.clone();
        let mut counts = [0usize; 2];
        for (slot, root) in counts.iter_mut().zip([1, -1]) {
            let lin = LaurentPoly::from_terms([(1, Scalar::one()), (0, Scalar::from_int(-root))]);
            loop {
                let (q, r) = star.div_rem(&lin)?;
                if !r.is_zero() {
                    break;
                }
                star = q;
                *slot += 1;
            }
        }
        Ok(ReciprocalPoly {
            poly: f.clone(),
            mult_at_one: counts[0],
            mult_at_minus_one: counts[1],
            star_part: star,
            elementary_factors: None,
        })
    }

    pub fn one() -> Self {
        ReciprocalPoly::from_poly(&LaurentPoly::one()).unwrap()
    }

    /// `Π U_a^m` over the given roots, merging `a` with `1/a`.
    pub fn from_roots(roots: &[(Scalar, usize)]) -> Result<Self> {
        let mut merged: Vec<(Scalar, usize)> = Vec::new();
        for (a, m) in roots {
            if *m == 0 {
                continue;
            }
            let c = canonical_point(a)?;
            match merged.iter_mut().find(|(b, _)| *b == c) {
                Some(entry) => entry.1 += m,
                None => merged.push((c, *m)),
            }
        }
        merged.sort_by(|x, y| x.0.lex_cmp(&y.0));
        let mut poly = LaurentPoly::one();
        for (a, m) in &merged {
            poly = &poly * &elementary(a)?.pow(*m as u32);
        }
        let mut r = ReciprocalPoly::from_poly(&poly)?;
        r.elementary_factors = Some(merged);
        Ok(r)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn mult_at_one(&self) -> usize {
        self.mult_at_one
    }

    pub fn mult_at_minus_one(&self) -> usize {
        self.mult_at_minus_one
    }

    pub fn star_part(&self) -> &LaurentPoly {
        &self.star_part
    }

    pub fn elementary_factors(&self) -> Option<&[(Scalar, usize)]> {
        self.elementary_factors.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0) as usize
    }

    /// Both multiplicities at `±1` even.
    pub fn is_closed(&self) -> bool {
        self.mult_at_one.is_multiple_of(2) && self.mult_at_minus_one.is_multiple_of(2)
    }

    /// `P̃ = (t-1)^{2⌊L/2⌋} (t+1)^{2⌊K/2⌋} P*`.
    pub fn tilde(&self) -> LaurentPoly {
        let lm = LaurentPoly::from_coeffs(&[-1, 1]).pow((self.mult_at_one / 2 * 2) as u32);
        let lp = LaurentPoly::from_coeffs(&[1, 1]).pow((self.mult_at_minus_one / 2 * 2) as u32);
        &(&lm * &lp) * &self.star_part
    }

    pub fn lcm(&self, other: &ReciprocalPoly) -> ReciprocalPoly {
        ReciprocalPoly::from_poly(&self.poly.lcm(&other.poly)).expect("lcm of reciprocal polynomials")
    }
}

pub fn make_reciprocal(roots: &[(Scalar, usize)]) -> Result<ReciprocalPoly> {
    ReciprocalPoly::from_roots(roots)
}

/// `P | X`: `P` divides both `p` and `q` in `C[t, 1/t]`.
pub fn ideal_member(x: &OAElement, p: &ReciprocalPoly) -> bool {
    let m = p.poly();
    m.divides(x.p()).expect("reciprocal polynomials are nonzero")
        && m.divides(x.q()).expect("reciprocal polynomials are nonzero")
}

/// The preimage `Z(I_P)` of the center of `OA/I_P`, described by its two moduli.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IdealHandle {
    pub generator: ReciprocalPoly,
    pub p_modulus: LaurentPoly,
    pub q_modulus: LaurentPoly,
}

impl IdealHandle {
    pub fn contains(&self, x: &OAElement) -> bool {
        self.p_modulus.divides(x.p()).unwrap() && self.q_modulus.divides(x.q()).unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.p_modulus == self.q_modulus
    }
}

pub fn central_closure(p: &ReciprocalPoly) -> IdealHandle {
    IdealHandle { generator: p.clone(), p_modulus: p.tilde(), q_modulus: p.poly().clone() }
}

pub fn is_closed(p: &ReciprocalPoly) -> bool {
    p.is_closed()
}

/// Solves `x ≡ r_j mod m_j` in `C[t]` for pairwise coprime `m_j`.
fn crt_polys(residues: &[(LaurentPoly, LaurentPoly)]) -> Result<LaurentPoly> {
    let modulus = residues.iter().fold(LaurentPoly::one(), |acc, (_, m)| &acc * m);
    let mut x = LaurentPoly::zero();
    for (r, m) in residues {
        let (cofactor, _) = modulus.div_rem(m)?;
        let (g, s, _) = LaurentPoly::ext_gcd(&cofactor, m)?;
        debug_assert!(g == LaurentPoly::one());
        x = &x + &(&(r * &s) * &cofactor);
    }
    Ok(x.div_rem(&modulus)?.1)
}

/// An element congruent to `X_j` modulo `I_{P_j}` for every target.
///
/// Denominators are cleared with `t^N`, residues are combined in `C[t]`, and
/// `q` is antisymmetrized as `(q̃/t^N - t^N q̃(1/t))/2` so the result stays in
/// the Onsager algebra.
pub fn crt_lift(targets: &[(OAElement, ReciprocalPoly)]) -> Result<OAElement> {
    if targets.is_empty() {
        return Err(Error::EmptyInput);
    }
    for i in 0..targets.len() {
        for j in i + 1..targets.len() {
            if targets[i].1.poly().gcd(targets[j].1.poly()) != LaurentPoly::one() {
                return Err(Error::NotCoprime(i, j));
            }
        }
    }
    let n = targets
        .iter()
        .flat_map(|(x, _)| [x.p().low_degree(), x.q().low_degree()])
        .flatten()
        .map(|k| -k)
        .max()
        .unwrap_or(0)
        .max(0);
    let pr: Vec<_> = targets
        .iter()
        .map(|(x, m)| Ok((x.p().shift(n).div_rem(m.poly())?.1, m.poly().clone())))
        .collect::<Result<_>>()?;
    let qr: Vec<_> = targets
        .iter()
        .map(|(x, m)| Ok((x.q().shift(n).div_rem(m.poly())?.1, m.poly().clone())))
        .collect::<Result<_>>()?;
    let p_tilde = crt_polys(&pr)?;
    let q_tilde = crt_polys(&qr)?;
    let p = p_tilde.shift(-n);
    let q = (&q_tilde.shift(-n) - &q_tilde.invert_variable().shift(n)).scale(&crate::scalar::rat(1, 2).into());
    OAElement::new(p, q)
}

/// Monic gcd of all `p_i`, `p_i(1/t)` and `q_i`, normalized into `C[t]`.
///
/// This generates the smallest ideal `I_P` containing the inputs.
pub fn ideal_gcd(elements: &[OAElement]) -> Result<LaurentPoly> {
    if elements.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut g = LaurentPoly::zero();
    for x in elements {
        for f in [x.p().clone(), x.p().invert_variable(), x.q().clone()] {
            g = g.gcd(&f);
        }
    }
    if g.is_zero() {
        return Err(Error::AllZero);
    }
    Ok(g)
}

/// Generating polynomial of the smallest closed ideal containing the inputs.
///
/// Closed ideals are exactly the `I_P` with even multiplicities at `±1`, so the
/// raw gcd has its multiplicities at `±1` rounded down to even.
pub fn generating_polynomial(elements: &[OAElement]) -> Result<ReciprocalPoly> {
    let g = ReciprocalPoly::from_poly(&ideal_gcd(elements)?)?;
    let lm = LaurentPoly::from_coeffs(&[-1, 1]).pow((g.mult_at_one / 2 * 2) as u32);
    let lp = LaurentPoly::from_coeffs(&[1, 1]).pow((g.mult_at_minus_one / 2 * 2) as u32);
    ReciprocalPoly::from_poly(&(&(&lm * &lp) * &g.star_part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{generator_a, generator_g};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn make_reciprocal_examples() {
        let u2 = make_reciprocal(&[(s(2, 1), 1)]).unwrap();
        assert_eq!(u2.poly(), &p("t^2 - 5/2*t + 1"));
        let sq = make_reciprocal(&[(s(1, 1), 2)]).unwrap();
        assert_eq!(sq.poly(), &p("(t-1)^2"));
        let merged = make_reciprocal(&[(s(2, 1), 1), (s(1, 2), 1)]).unwrap();
        assert_eq!(merged.elementary_factors().unwrap(), &[(s(2, 1), 2)]);
        assert_eq!(merged.poly(), &p("(t^2 - 5/2*t + 1)^2"));
        assert_eq!(make_reciprocal(&[(Scalar::zero(), 1)]), Err(Error::ZeroPoint));
        assert_eq!(canonical_point(&-Scalar::i()).unwrap(), Scalar::i());
    }

    #[test]
    fn reciprocal_detection() {
        assert!(is_reciprocal(&p("t^2 - 5/2*t + 1")).unwrap());
        assert!(is_reciprocal(&p("t - 1")).unwrap());
        assert!(!is_reciprocal(&p("t - 2")).unwrap());
        assert!(is_reciprocal(&p("2*t - 2")).is_err());
        assert!(is_reciprocal(&p("t^-1 + 1")).is_err());
    }

    #[test]
    fn membership_examples() {
        let u2 = make_reciprocal(&[(s(2, 1), 1)]).unwrap();
        let gen = OAElement::new(u2.poly().clone(), LaurentPoly::zero()).unwrap();
        assert!(ideal_member(&gen, &u2));
        assert!(!ideal_member(&generator_a(0), &u2));
        let sq = make_reciprocal(&[(s(1, 1), 2)]).unwrap();
        assert!(!ideal_member(&generator_g(1), &sq));
    }

    #[test]
    fn closure_examples() {
        let l1 = ReciprocalPoly::from_poly(&p("t - 1")).unwrap();
        assert_eq!(central_closure(&l1).p_modulus, LaurentPoly::one());
        let u2 = p("t^2 - 5/2*t + 1");
        let big = ReciprocalPoly::from_poly(&p("(t-1)^3*(t+1)^2*(t^2 - 5/2*t + 1)")).unwrap();
        assert_eq!(central_closure(&big).p_modulus, &p("(t-1)^2*(t+1)^2") * &u2);
        let plain = ReciprocalPoly::from_poly(&u2).unwrap();
        assert_eq!(central_closure(&plain).p_modulus, u2);
        assert!(!is_closed(&l1));
        assert!(is_closed(&ReciprocalPoly::from_poly(&p("(t-1)^2")).unwrap()));
        assert!(is_closed(&make_reciprocal(&[(s(2, 1), 5)]).unwrap()));
    }

    #[test]
    fn crt_rejects_common_factor() {
        let u2 = make_reciprocal(&[(s(2, 1), 1)]).unwrap();
        let u2sq = make_reciprocal(&[(s(2, 1), 2)]).unwrap();
        let r = crt_lift(&[(generator_a(0), u2), (generator_a(1), u2sq)]);
        assert_eq!(r, Err(Error::NotCoprime(0, 1)));
    }

    #[test]
    fn generating_polynomial_examples() {
        let u2 = p("t^2 - 5/2*t + 1");
        let gen = OAElement::new(u2.clone(), LaurentPoly::zero()).unwrap();
        assert_eq!(generating_polynomial(&[gen]).unwrap().poly(), &u2);
        assert_eq!(generating_polynomial(&[generator_a(0)]).unwrap().poly(), &LaurentPoly::one());
        assert_eq!(generating_polynomial(&[OAElement::zero()]), Err(Error::AllZero));
        assert_eq!(generating_polynomial(&[]), Err(Error::EmptyInput));
    }
}
