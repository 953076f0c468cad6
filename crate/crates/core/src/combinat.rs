//! Shifted factorials, Stirling numbers, Bernoulli-type numbers and the
//! inversion relation used to solve the `Y`-constraints.
//!
//! Bernoulli numbers follow the older positive convention
//! `B_j = (-1)^{j-1} b_{2j}`, where `x/(eˣ-1) = Σ b_j xʲ/j!`. In that
//! convention `B_1 = 1/6`, `B_2 = 1/30`, and `B_0 = -b_0 = -1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::LaurentPoly;
use crate::scalar::{Rational, Scalar};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Ordinary binomial `C(n, k)` with the convention `C(n, k) = 0` unless `0 ≤ k ≤ n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `C(x, k) = x^{(k)}/k!` valid for negative `x`; zero for `k < 0`.
pub fn gbinom(x: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= x - i;
    }
    num / factorial(k as usize)
}

/// `x^{(n)} = x(x-1)…(x-n+1)` as a polynomial in `t`.
pub fn shifted_factorial_poly(n: usize) -> LaurentPoly {
    (0..n as i64).fold(LaurentPoly::one(), |acc, i| {
        &acc * &LaurentPoly::from_terms([(1, Scalar::one()), (0, Scalar::from_int(-i))])
    })
}

pub fn shifted_factorial(x: &Scalar, n: usize) -> Scalar {
    (0..n as i64).fold(Scalar::one(), |acc, i| &acc * &(x - &Scalar::from_int(i)))
}

#[derive(Clone, Debug)]
pub struct StirlingTable {
    pub max_n: usize,
    /// Signed Stirling numbers of the first kind: `x^{(n)} = Σ s[n][k] xᵏ`.
    pub first_kind: Vec<Vec<BigInt>>,
    /// Second kind: `xⁿ = Σ S[n][k] x^{(k)}`.
    pub second_kind: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn build(max_n: usize) -> Self {
        let mut s = vec![vec![BigInt::zero(); max_n + 1]; max_n + 1];
        let mut big_s = s.clone();
        s[0][0] = BigInt::one();
        big_s[0][0] = BigInt::one();
        for n in 0..max_n {
            for k in 1..=n + 1 {
                s[n + 1][k] = &s[n][k - 1] - BigInt::from(n) * &s[n][k];
                big_s[n + 1][k] = &big_s[n][k - 1] + BigInt::from(k) * &big_s[n][k];
            }
        }
        StirlingTable { max_n, first_kind: s, second_kind: big_s }
    }

    pub fn s(&self, n: usize, k: usize) -> BigInt {
        self.first_kind.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    }

    pub fn big_s(&self, n: usize, k: usize) -> BigInt {
        self.second_kind.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::IndexOutOfRange(format!("{n} exceeds table size {}", self.max_n)));
        }
        Ok(())
    }

    /// `Σ_k s[a][k] S[k][b]`.
    pub fn inverse_pairing(&self, a: usize, b: usize) -> Result<BigInt> {
        self.check_index(a.max(b))?;
        Ok((0..=self.max_n).map(|k| self.s(a, k) * self.big_s(k, b)).sum())
    }

    /// Both sides of `Σ_k (-1)^k s[a][k] S[k][b] = (-1)^a (a!/b!) C(a-1, b-1)`.
    ///
    /// For `b = 0` only `k = 0` survives on the left, so the right side is `δ_{a0}`.
    pub fn lah_sides(&self, a: usize, b: usize) -> Result<(BigInt, BigInt)> {
        self.check_index(a)?;
        if b > a {
            return Err(Error::IndexOutOfRange(format!("b = {b} > a = {a}")));
        }
        let lhs: BigInt = (0..=a)
            .map(|k| {
                let term = self.s(a, k) * self.big_s(k, b);
                if k % 2 == 1 { -term } else { term }
            })
            .sum();
        let rhs = if b == 0 {
            BigInt::from(i64::from(a == 0))
        } else {
            let mag = factorial(a) / factorial(b) * binom(a as i64 - 1, b as i64 - 1);
            if a % 2 == 1 { -mag } else { mag }
        };
        Ok((lhs, rhs))
    }

    pub fn lah_identity_check(&self, a: usize, b: usize) -> Result<bool> {
        let (l, r) = self.lah_sides(a, b)?;
        Ok(l == r)
    }

    /// `C(j+k, k) S[j][a] = Σ_l C(a+l, l) s[l][k] S[j+k][a+l]`.
    pub fn second_identity_sides(&self, j: usize, k: usize, a: usize) -> Result<(BigInt, BigInt)> {
        self.check_index(j + k)?;
        let lhs = binom((j + k) as i64, k as i64) * self.big_s(j, a);
        let rhs = (0..=j + k)
            .map(|l| binom((a + l) as i64, l as i64) * self.s(l, k) * self.big_s(j + k, a + l))
            .sum();
        Ok((lhs, rhs))
    }

    pub fn second_identity_check(&self, j: usize, k: usize, a: usize) -> Result<bool> {
        let (l, r) = self.second_identity_sides(j, k, a)?;
        Ok(l == r)
    }
}

/// Multiplicative inverse of a power series with nonzero constant term, to `n` terms.
fn series_inverse(c: &[Rational], n: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    let c0_inv = c[0].recip();
    for k in 0..n {
        let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
        for i in 1..=k.min(c.len() - 1) {
            acc -= &c[i] * &out[k - i];
        }
        out.push(acc * &c0_inv);
    }
    out
}

#[derive(Clone, Debug)]
pub struct BernoulliCache {
    pub max_j: usize,
    /// `b_0 … b_{2 max_j + 2}` from `x/(eˣ-1)`.
    pub b: Vec<Rational>,
    /// `B_0 … B_{max_j + 1}` in the positive convention.
    pub big_b: Vec<Rational>,
    /// `d_0, d_2, …, d_{2 max_j}` stored by half-index, from `2x/(eˣ-e⁻ˣ)`.
    pub d: Vec<Rational>,
    /// `v_0 … v_{max_j + 1}` with `v_j = 2(2^{2j}-1)B_j`.
    pub v: Vec<Rational>,
}

impl BernoulliCache {
    pub fn build(max_j: usize) -> Self {
        let nb = 2 * max_j + 3;
        // (eˣ-1)/x = Σ xⁿ/(n+1)!
        let c: Vec<Rational> = (0..nb).map(|n| Rational::new(BigInt::one(), factorial(n + 1))).collect();
        let inv = series_inverse(&c, nb);
        let b: Vec<Rational> = inv.iter().enumerate().map(|(n, x)| x * Rational::from_integer(factorial(n))).collect();

        let big_b: Vec<Rational> = (0..=max_j + 1)
            .map(|j| if j % 2 == 1 { b[2 * j].clone() } else { -b[2 * j].clone() })
            .collect();

        // sinh(x)/x in x² = Σ yⁿ/(2n+1)!
        let sh: Vec<Rational> = (0..=max_j).map(|n| Rational::new(BigInt::one(), factorial(2 * n + 1))).collect();
        let dinv = series_inverse(&sh, max_j + 1);
        let d = dinv.iter().enumerate().map(|(n, x)| x * Rational::from_integer(factorial(2 * n))).collect();

        let v = big_b
            .iter()
            .enumerate()
            .map(|(j, bj)| bj * Rational::from_integer(BigInt::from(2) * (num_traits::pow(BigInt::from(4), j) - 1)))
            .collect();
        BernoulliCache { max_j, b, big_b, d, v }
    }

    /// Modern signed Bernoulli numbers `b_j` for output alongside the positive ones.
    pub fn signed(&self) -> &[Rational] {
        &self.b
    }

    /// Left side of `v_k - ½C(2k,2)v_{k-1} + ½C(2k,4)v_{k-2} - … + (-1)^k k`, which must vanish.
    pub fn v_recurrence(&self, k: usize) -> Rational {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut acc = self.v[k].clone();
        for i in 1..k {
            let term = &half * Rational::from_integer(binom(2 * k as i64, 2 * i as i64)) * &self.v[k - i];
            if i % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        let kk = Rational::from_integer(BigInt::from(k));
        if k % 2 == 1 { acc - kk } else { acc + kk }
    }

    /// `(-1)^j (2^{2j} - 2) B_j`, the closed form the series-division `d_{2j}` must match.
    pub fn d_closed_form(&self, j: usize) -> Rational {
        let f = Rational::from_integer(num_traits::pow(BigInt::from(4), j) - 2) * &self.big_b[j];
        if j % 2 == 1 { -f } else { f }
    }
}

/// `b_{2n+1} = (1/(2n+2)) Σ_k C(2n+2, 2k) d_{2k} a_{2n+1-2k}`.
///
/// Sequences are stored by half-index: `a[n]` holds `a_{2n+1}`.
pub fn inversion_transform(a: &[Rational], cache: &BernoulliCache) -> Result<Vec<Rational>> {
    if a.len() > cache.d.len() {
        return Err(Error::IndexOutOfRange(format!(
            "sequence of length {} needs d up to index {}",
            a.len(),
            2 * (a.len() - 1)
        )));
    }
    Ok((0..a.len())
        .map(|n| {
            let s: Rational = (0..=n)
                .map(|k| Rational::from_integer(binom(2 * n as i64 + 2, 2 * k as i64)) * &cache.d[k] * &a[n - k])
                .sum();
            s / Rational::from_integer(BigInt::from(2 * n + 2))
        })
        .collect())
}

/// `a_{2n+1} = Σ_k C(2n+2, 2k+1) b_{2n+1-2k}`, by half-index.
pub fn forward_transform(b: &[Rational]) -> Vec<Rational> {
    (0..b.len())
        .map(|n| {
            (0..=n).map(|k| Rational::from_integer(binom(2 * n as i64 + 2, 2 * k as i64 + 1)) * &b[n - k]).sum()
        })
        .collect()
}

/// Solves `Σ_{j≤k} (-1)ʲ/(2j+2) C(2k+2, 2j+1) α_j = 1` for `k = 0..count` exactly.
pub fn alpha_by_linear_solve(count: usize) -> Vec<Rational> {
    let mut rows = vec![vec![Scalar::zero(); count]; count];
    for (k, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().take(k + 1) {
            let sign = if j % 2 == 1 { -1 } else { 1 };
            let c = Rational::new(binom(2 * k as i64 + 2, 2 * j as i64 + 1) * sign, BigInt::from(2 * j + 2));
            *slot = Scalar::real(c);
        }
    }
    let m = Matrix::from_rows(rows);
    let x = m.solve(&vec![Scalar::one(); count]).expect("triangular system with nonzero diagonal");
    x.into_iter().map(|s| s.re).collect()
}

/// `α_j = 2(2^{2j+2} - 1) B_{j+1}`.
pub fn alpha_closed_form(j: usize, cache: &BernoulliCache) -> Rational {
    cache.v[j + 1].clone()
}

/// `α_j = (-1)ʲ Σ_k (-1)ᵏ C(2j+2, 2k) (2^{2k} - 2) B_k`, the form produced by the inversion.
pub fn alpha_from_inversion(j: usize, cache: &BernoulliCache) -> Rational {
    let s: Rational = (0..=j)
        .map(|k| Rational::from_integer(binom(2 * j as i64 + 2, 2 * k as i64)) * cache.d_closed_form(k))
        .sum();
    if j % 2 == 1 { -s } else { s }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        crate::scalar::rat(n, d)
    }

    #[test]
    fn shifted_factorial_examples() {
        assert_eq!(shifted_factorial_poly(3), "t^3 - 3*t^2 + 2*t".parse().unwrap());
        assert_eq!(shifted_factorial(&Scalar::from_int(5), 2), Scalar::from_int(20));
        assert_eq!(shifted_factorial_poly(0), LaurentPoly::one());
    }

    #[test]
    fn stirling_examples() {
        let t = StirlingTable::build(8);
        assert_eq!((t.s(3, 1), t.s(3, 2), t.s(3, 3)), (2.into(), (-3).into(), 1.into()));
        assert_eq!((t.big_s(3, 1), t.big_s(3, 2), t.big_s(3, 3)), (1.into(), 3.into(), 1.into()));
        assert_eq!(t.inverse_pairing(4, 2).unwrap(), BigInt::zero());
        assert_eq!(t.inverse_pairing(4, 4).unwrap(), BigInt::one());
        assert_eq!(t.lah_sides(1, 1).unwrap(), ((-1).into(), (-1).into()));
        assert!(t.lah_identity_check(3, 2).unwrap());
        assert!(t.lah_identity_check(9, 2).is_err());
        for (j, k, a) in [(2, 0, 1), (2, 1, 1), (3, 2, 2)] {
            assert!(t.second_identity_check(j, k, a).unwrap());
        }
    }

    #[test]
    fn bernoulli_examples() {
        let c = BernoulliCache::build(6);
        assert_eq!(c.big_b[1], r(1, 6));
        assert_eq!(c.big_b[2], r(1, 30));
        assert_eq!(c.d[0], r(1, 1));
        assert_eq!(c.d[1], r(-1, 3));
        for k in 1..=6 {
            assert!(c.v_recurrence(k).is_zero(), "k = {k}");
        }
    }

    #[test]
    fn inversion_single_term() {
        let c = BernoulliCache::build(4);
        let a = vec![r(3, 1), r(0, 1), r(0, 1)];
        let b = inversion_transform(&a, &c).unwrap();
        assert_eq!(b[0], r(3, 2));
        assert_eq!(forward_transform(&b), a);
    }
}
