//! Evaluation representations `ρ_{(â,s)}: OA → gl(V(s₁) ⊗ … ⊗ V(sₙ))`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{generator_a, OAElement};
use crate::error::{Error, Result};
use crate::ideals::{canonical_point, hat, ReciprocalPoly};
use crate::linalg::{EchelonBasis, Matrix};
use crate::scalar::{parse_rational, Rational, Scalar};

/// A positive half-integer, stored as `2s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(two_s: u32) -> Result<Spin> {
        if two_s == 0 {
            return Err(Error::InvalidSpin(0));
        }
        Ok(Spin(two_s))
    }

    pub fn half() -> Spin {
        Spin(1)
    }

    pub fn twice(&self) -> u32 {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Spin> {
        let r = parse_rational(s.trim())?;
        let twice = r * Rational::from_integer(2.into());
        if !twice.is_integer() {
            return Err(Error::Parse(format!("spin {s} is not a half-integer")));
        }
        let n: i64 = twice.to_integer().try_into().map_err(|_| Error::Parse(format!("spin {s} out of range")))?;
        if n <= 0 {
            return Err(Error::InvalidSpin(n));
        }
        Ok(Spin(n as u32))
    }
}

impl Serialize for Spin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Spin {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `V(s)` with `h v_k = (2s-2k) v_k`, `f v_k = v_{k+1}`, `e v_k = k(2s+1-k) v_{k-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinRep {
    pub spin: Spin,
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
}

pub fn spin_matrices(spin: Spin) -> SpinRep {
    let n = spin.dim();
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    let mut h = Matrix::zeros(n, n);
    for k in 0..n {
        h[(k, k)] = Scalar::from_int(spin.0 as i64 - 2 * k as i64);
        if k + 1 < n {
            f[(k + 1, k)] = Scalar::one();
        }
        if k > 0 {
            e[(k - 1, k)] = Scalar::from_int((k * (n - k)) as i64);
        }
    }
    SpinRep { spin, e, f, h }
}

impl SpinRep {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    pub fn check_relations(&self) -> bool {
        self.e.commutator(&self.f) == self.h
            && self.h.commutator(&self.e) == self.e.scale(&Scalar::from_int(2))
            && self.h.commutator(&self.f) == self.f.scale(&Scalar::from_int(-2))
    }

    /// `ef + fe + h²/2` when it is a multiple of the identity.
    pub fn casimir(&self) -> Option<Scalar> {
        let c = &(&(&self.e * &self.f) + &(&self.f * &self.e)) + &(&self.h * &self.h).scale(&Scalar::from_ratio(1, 2));
        let v = c[(0, 0)].clone();
        (c == Matrix::identity(self.dim()).scale(&v)).then_some(v)
    }

    /// `x_e e + x_f f + x_h h`.
    pub fn act(&self, x: &[Scalar; 3]) -> Matrix {
        &(&self.e.scale(&x[0]) + &self.f.scale(&x[1])) + &self.h.scale(&x[2])
    }
}

/// Floating-point `V(s)` in an orthonormal weight basis, so that `e† = f` and `h† = h`.
pub fn spin_matrices_unitary(spin: Spin) -> [DMatrix<Complex64>; 3] {
    let n = spin.dim();
    let mut e = DMatrix::zeros(n, n);
    let mut h = DMatrix::zeros(n, n);
    for k in 0..n {
        h[(k, k)] = Complex64::new(spin.0 as f64 - 2.0 * k as f64, 0.0);
        if k > 0 {
            e[(k - 1, k)] = Complex64::new(((k * (n - k)) as f64).sqrt(), 0.0);
        }
    }
    let f = e.adjoint();
    [e, f, h]
}

/// `ev_a(X) = p(a) e + p(1/a) f + q(a) h`, as `[e, f, h]` coefficients.
pub fn evaluate(x: &OAElement, a: &Scalar) -> Result<[Scalar; 3]> {
    if a.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let inv = a.inv().unwrap();
    Ok([x.p().eval(a)?, x.p().eval(&inv)?, x.q().eval(a)?])
}

pub fn evaluate_complex(x: &OAElement, a: Complex64) -> [Complex64; 3] {
    [x.p().eval_complex(a), x.p().eval_complex(a.inv()), x.q().eval_complex(a)]
}

/// `Σ_j 1 ⊗ … ⊗ m_j ⊗ … ⊗ 1`.
fn kron_sum(parts: &[Matrix]) -> Matrix {
    let dims: Vec<usize> = parts.iter().map(Matrix::nrows).collect();
    let total: usize = dims.iter().product();
    let mut out = Matrix::zeros(total, total);
    for (j, m) in parts.iter().enumerate() {
        let left: usize = dims[..j].iter().product();
        let right: usize = dims[j + 1..].iter().product();
        let term = Matrix::identity(left).kron(m).kron(&Matrix::identity(right));
        out = &out + &term;
    }
    out
}

fn kron_sum_complex(parts: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let dims: Vec<usize> = parts.iter().map(|m| m.nrows()).collect();
    let total: usize = dims.iter().product();
    let mut out = DMatrix::zeros(total, total);
    for (j, m) in parts.iter().enumerate() {
        let left: usize = dims[..j].iter().product();
        let right: usize = dims[j + 1..].iter().product();
        out += DMatrix::identity(left, left).kronecker(m).kronecker(&DMatrix::identity(right, right));
    }
    out
}

/// The representation `ρ` at Gaussian-rational points with `M₀ = ρ(A₀)`, `M₁ = ρ(A₁)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalRep {
    pub points: Vec<Scalar>,
    pub spins: Vec<Spin>,
    pub m0: Matrix,
    pub m1: Matrix,
    factors: Vec<SpinRep>,
}

#[derive(Serialize, Deserialize)]
struct RawRep {
    points: Vec<Scalar>,
    spins: Vec<Spin>,
    dim: usize,
    #[serde(rename = "M0")]
    m0: Vec<Vec<Scalar>>,
    #[serde(rename = "M1")]
    m1: Vec<Vec<Scalar>>,
}

impl Serialize for EvalRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawRep {
            points: self.points.clone(),
            spins: self.spins.clone(),
            dim: self.dim(),
            m0: self.m0.to_rows(),
            m1: self.m1.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EvalRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRep::deserialize(d)?;
        let rep = build_rep(&raw.points, &raw.spins).map_err(serde::de::Error::custom)?;
        if rep.m0.to_rows() != raw.m0 || rep.m1.to_rows() != raw.m1 {
            return Err(serde::de::Error::custom("stored matrices do not match the points and spins"));
        }
        Ok(rep)
    }
}

pub fn build_rep(points: &[Scalar], spins: &[Spin]) -> Result<EvalRep> {
    if points.len() != spins.len() {
        return Err(Error::LengthMismatch(points.len(), spins.len()));
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if points.iter().any(Scalar::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let factors: Vec<SpinRep> = spins.iter().map(|s| spin_matrices(*s)).collect();
    let mut rep = EvalRep {
        points: points.to_vec(),
        spins: spins.to_vec(),
        m0: Matrix::zeros(0, 0),
        m1: Matrix::zeros(0, 0),
        factors,
    };
    rep.m0 = rep.image(&generator_a(0))?;
    rep.m1 = rep.image(&generator_a(1))?;
    Ok(rep)
}

impl EvalRep {
    pub fn dim(&self) -> usize {
        self.spins.iter().map(Spin::dim).product()
    }

    pub fn image(&self, x: &OAElement) -> Result<Matrix> {
        let parts = self
            .points
            .iter()
            .zip(&self.factors)
            .map(|(a, rep)| Ok(rep.act(&evaluate(x, a)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(kron_sum(&parts))
    }

    /// `Π U_{a_j}` over the distinct classes `{a_j, 1/a_j}`.
    pub fn kernel_polynomial(&self) -> Result<ReciprocalPoly> {
        kernel_polynomial(&self.points)
    }

    /// Dimension of the Lie algebra generated by `M₀, M₁`.
    pub fn lie_closure_dim(&self) -> usize {
        lie_closure_dim(&[self.m0.clone(), self.m1.clone()])
    }

    /// Dimension of `{C : [C, M₀] = [C, M₁] = 0}`.
    pub fn commutant_dim(&self) -> usize {
        commutant_dim(&[self.m0.to_complex(), self.m1.to_complex()], 1e-9)
    }
}

pub fn kernel_polynomial(points: &[Scalar]) -> Result<ReciprocalPoly> {
    let mut classes: Vec<Scalar> = Vec::new();
    for a in points {
        let c = canonical_point(a)?;
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    let roots: Vec<(Scalar, usize)> = classes.into_iter().map(|c| (c, 1)).collect();
    ReciprocalPoly::from_roots(&roots)
}

/// Dimension of the smallest subspace of `gl(n)` containing `gens` and closed under brackets.
pub fn lie_closure_dim(gens: &[Matrix]) -> usize {
    let n = gens.first().map_or(0, Matrix::nrows);
    let mut basis = EchelonBasis::new(n * n);
    let mut found: Vec<Matrix> = Vec::new();
    for g in gens {
        if basis.insert(g.as_slice()) {
            found.push(g.clone());
        }
    }
    let mut frontier = 0;
    while frontier < found.len() {
        let x = found[frontier].clone();
        for j in 0..found.len() {
            let c = x.commutator(&found[j]);
            if basis.insert(c.as_slice()) {
                found.push(c);
            }
        }
        frontier += 1;
    }
    found.len()
}

/// Numerical nullity of `C ↦ ([C, M_i])_i`, from singular values below `tol · scale`.
pub fn commutant_dim(mats: &[DMatrix<Complex64>], tol: f64) -> usize {
    let n = mats.first().map_or(0, |m| m.nrows());
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut blocks = Vec::new();
    for m in mats {
        // vec(CM - MC) = (Mᵀ ⊗ I - I ⊗ M) vec(C) in column-major order
        blocks.push(m.transpose().kronecker(&id) - id.kronecker(m));
    }
    let rows = blocks.len() * n * n;
    let mut big = DMatrix::<Complex64>::zeros(rows, n * n);
    for (b, blk) in blocks.iter().enumerate() {
        big.view_mut((b * n * n, 0), (n * n, n * n)).copy_from(blk);
    }
    let sv = big.singular_values();
    let scale = sv.iter().cloned().fold(1.0, f64::max);
    sv.iter().filter(|s| **s < tol * scale).count()
}

/// Irreducibility criterion: no `a_j = ±1` and the `â_j` pairwise distinct.
pub fn is_irreducible(points: &[Scalar]) -> Result<bool> {
    let mut hats = Vec::new();
    for a in points {
        if a.is_zero() {
            return Err(Error::ZeroPoint);
        }
        if a.is_one() || a == &Scalar::from_int(-1) {
            return Ok(false);
        }
        let h = hat(a)?;
        if hats.contains(&h) {
            return Ok(false);
        }
        hats.push(h);
    }
    Ok(true)
}

fn complex_hat(a: Complex64) -> Complex64 {
    (a + a.inv()) / 2.0
}

/// Irreducible and Hermitian on some inner product: every `â_j` real in `(-1, 1)` and distinct.
pub fn is_hermitian(points: &[Complex64], tol: f64) -> bool {
    let hats: Vec<Complex64> = points.iter().map(|a| complex_hat(*a)).collect();
    let in_range = points.iter().zip(&hats).all(|(a, h)| {
        a.norm() > tol && (a.norm() - 1.0).abs() <= tol && h.im.abs() <= tol && h.re.abs() < 1.0 - tol
    });
    let distinct = hats.iter().enumerate().all(|(i, x)| hats[i + 1..].iter().all(|y| (x - y).norm() > tol));
    in_range && distinct
}

/// `ρ(A₀), ρ(A₁)` built in the orthonormal spin bases at floating precision.
pub fn build_rep_complex(points: &[Complex64], spins: &[Spin]) -> Result<[DMatrix<Complex64>; 2]> {
    if points.len() != spins.len() {
        return Err(Error::LengthMismatch(points.len(), spins.len()));
    }
    if points.iter().any(|a| a.norm() == 0.0) {
        return Err(Error::ZeroPoint);
    }
    let mats: Vec<[DMatrix<Complex64>; 3]> = spins.iter().map(|s| spin_matrices_unitary(*s)).collect();
    let image = |x: &OAElement| {
        let parts: Vec<DMatrix<Complex64>> = points
            .iter()
            .zip(&mats)
            .map(|(a, [e, f, h])| {
                let [ce, cf, ch] = evaluate_complex(x, *a);
                e * ce + f * cf + h * ch
            })
            .collect();
        kron_sum_complex(&parts)
    };
    Ok([image(&generator_a(0)), image(&generator_a(1))])
}

/// `max ‖M - M†‖` over `ρ(A₀), ρ(A₁)` in the orthonormal bases.
pub fn hermitian_defect(points: &[Complex64], spins: &[Spin]) -> Result<f64> {
    let [m0, m1] = build_rep_complex(points, spins)?;
    Ok([m0, m1].iter().map(|m| (m - m.adjoint()).camax()).fold(0.0, f64::max))
}

/// Canonical form of `{(â_j, s_j)}`; equal keys mean equivalent representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceKey {
    pub irreducible: bool,
    pub entries: Vec<(Scalar, Spin)>,
}

pub fn equivalence_key(points: &[Scalar], spins: &[Spin]) -> Result<EquivalenceKey> {
    if points.len() != spins.len() {
        return Err(Error::LengthMismatch(points.len(), spins.len()));
    }
    let mut entries = points
        .iter()
        .zip(spins)
        .map(|(a, s)| Ok((hat(a)?, *s)))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|x, y| x.0.lex_cmp(&y.0).then(x.1.cmp(&y.1)));
    Ok(EquivalenceKey { irreducible: is_irreducible(points)?, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dg_check;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn spin_half_and_one() {
        let r = spin_matrices(Spin::half());
        assert_eq!(r.h, Matrix::diagonal(&[s("1"), s("-1")]));
        let r1 = spin_matrices("1".parse().unwrap());
        assert_eq!(r1.h, Matrix::diagonal(&[s("2"), s("0"), s("-2")]));
        for two_s in 1..6 {
            let r = spin_matrices(Spin::from_twice(two_s).unwrap());
            assert!(r.check_relations());
            // 2s(s+1) = two_s (two_s + 2) / 2
            let want = Scalar::from_ratio((two_s * (two_s + 2)) as i64, 2);
            assert_eq!(r.casimir(), Some(want));
        }
        assert!("0".parse::<Spin>().is_err());
        assert!("1/3".parse::<Spin>().is_err());
    }

    #[test]
    fn single_point_rep() {
        let rep = build_rep(&[s("2")], &[Spin::half()]).unwrap();
        let r = spin_matrices(Spin::half());
        assert_eq!(rep.m0, r.act(&[s("2"), s("2"), s("0")]));
        assert_eq!(rep.m1, r.act(&[s("4"), s("1"), s("0")]));
        assert!(dg_check(&rep.m0, &rep.m1));
    }

    #[test]
    fn irreducibility_criterion() {
        assert!(is_irreducible(&[s("2")]).unwrap());
        assert!(!is_irreducible(&[s("1")]).unwrap());
        assert!(!is_irreducible(&[s("2"), s("1/2")]).unwrap());
        let rep = build_rep(&[s("2"), s("3")], &[Spin::half(), Spin::half()]).unwrap();
        assert_eq!(rep.commutant_dim(), 1);
        let rep = build_rep(&[s("2"), s("1/2")], &[Spin::half(), Spin::half()]).unwrap();
        assert!(rep.commutant_dim() > 1);
    }

    #[test]
    fn hermitian_points() {
        let th = std::f64::consts::PI / 3.0;
        let a = Complex64::from_polar(1.0, th);
        assert!(is_hermitian(&[a], 1e-12));
        assert!(hermitian_defect(&[a], &[Spin::from_twice(2).unwrap()]).unwrap() < 1e-12);
        assert!(!is_hermitian(&[Complex64::new(2.0, 0.0)], 1e-12));
        assert!(!is_hermitian(&[Complex64::new(-1.0, 0.0)], 1e-12));
    }

    #[test]
    fn keys_identify_inverse_points() {
        let h = Spin::half();
        let one = Spin::from_twice(2).unwrap();
        let k1 = equivalence_key(&[s("2"), s("3")], &[h, one]).unwrap();
        let k2 = equivalence_key(&[s("3"), s("1/2")], &[one, h]).unwrap();
        assert_eq!(k1, k2);
    }
}
