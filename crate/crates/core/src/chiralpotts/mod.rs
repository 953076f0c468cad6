//! The superintegrable chiral Potts chain `H(k') = H₀ + k'H₁` on `(Cᴺ)^{⊗sites}`.
//!
//! `H₀ = -2 Σ_l Σ_n (1-ω⁻ⁿ)⁻¹ X_lⁿ` and `H₁ = -2 Σ_l Σ_n (1-ω⁻ⁿ)⁻¹ Z_lⁿ Z_{l+1}^{N-n}`
//! with periodic closure. The rescaled pair `A₀ = -(2/N)H₀`, `A₁ = -(2/N)H₁`
//! satisfies the Dolan–Grady relations.

mod fit;
mod spectrum;

pub use fit::{fit_onsager_form, fit_trajectory, FitComponent, SpectrumFit, TrajectoryFit};
pub use spectrum::{spectrum_sweep, Sweep};

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::dg_defect;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const DEFAULT_DIM_CAP: usize = 4096;

/// Floating-point tolerances; `ONSAGER_PRECISION` overrides them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermitian: f64,
    pub dg: f64,
    pub fit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { hermitian: 1e-12, dg: 1e-10, fit: 1e-6 }
    }
}

impl Tolerances {
    /// Parses either a single number, applied to every tolerance, or
    /// a list such as `hermitian=1e-12,dg=1e-10,fit=1e-6`.
    pub fn parse(setting: &str) -> Result<Tolerances> {
        let bad = || Error::Parse(format!("invalid precision setting `{setting}`"));
        let setting = setting.trim();
        if let Ok(x) = setting.parse::<f64>() {
            if !(x > 0.0 && x.is_finite()) {
                return Err(bad());
            }
            return Ok(Tolerances { hermitian: x, dg: x, fit: x });
        }
        let mut t = Tolerances::default();
        for part in setting.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: f64 = v.trim().parse().map_err(|_| bad())?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(bad());
            }
            match k.trim() {
                "hermitian" => t.hermitian = v,
                "dg" => t.dg = v,
                "fit" => t.fit = v,
                _ => return Err(bad()),
            }
        }
        Ok(t)
    }

    pub fn from_env() -> Result<Tolerances> {
        match std::env::var("ONSAGER_PRECISION") {
            Ok(s) => Tolerances::parse(&s),
            Err(_) => Ok(Tolerances::default()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PottsChain {
    pub n: usize,
    pub sites: usize,
    pub omega: Complex64,
    pub h0: DMatrix<Complex64>,
    pub h1: DMatrix<Complex64>,
}

fn check_params(n: usize, sites: usize, cap: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidChain(format!("N must be at least 2, got {n}")));
    }
    if sites == 0 {
        return Err(Error::InvalidChain("sites must be at least 1".into()));
    }
    let dim = (0..sites).try_fold(1usize, |acc, _| acc.checked_mul(n));
    match dim {
        Some(d) if d <= cap => Ok(d),
        Some(d) => Err(Error::DimensionTooLarge { dim: d, cap }),
        None => Err(Error::DimensionTooLarge { dim: usize::MAX, cap }),
    }
}

/// Digits of a basis index, site 0 most significant.
fn digits(mut idx: usize, n: usize, sites: usize) -> Vec<usize> {
    let mut d = vec![0; sites];
    for slot in d.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    d
}

fn index(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

/// Visits the entries of every `X_lᵖ` as `(row, col, p)` and of every `Z_lᵖ Z_{l+1}^{N-p}`
/// as `(col, k, p)`, the diagonal entry being `ωᵏ`.
fn for_each_term(n: usize, sites: usize, mut x_term: impl FnMut(usize, usize, usize), mut z_term: impl FnMut(usize, usize, usize)) {
    let dim = n.pow(sites as u32);
    for col in 0..dim {
        let d = digits(col, n, sites);
        for l in 0..sites {
            let r = (l + 1) % sites;
            for p in 1..n {
                let mut shifted = d.clone();
                shifted[l] = (d[l] + p) % n;
                x_term(index(&shifted, n), col, p);
                // ω^{p(m_l - m_{l+1})}
                let phase = (p * ((d[l] + n - d[r]) % n)) % n;
                z_term(col, phase, p);
            }
        }
    }
}

pub fn build_chain(n: usize, sites: usize) -> Result<PottsChain> {
    build_chain_with_cap(n, sites, DEFAULT_DIM_CAP)
}

pub fn build_chain_with_cap(n: usize, sites: usize, cap: usize) -> Result<PottsChain> {
    let dim = check_params(n, sites, cap)?;
    let omega = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
    let pow = |k: usize| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
    let coef: Vec<Complex64> = (0..n)
        .map(|p| if p == 0 { Complex64::new(0.0, 0.0) } else { (Complex64::new(1.0, 0.0) - pow(n - p)).inv() * -2.0 })
        .collect();
    let mut h0 = DMatrix::zeros(dim, dim);
    let mut h1 = DMatrix::zeros(dim, dim);
    for_each_term(n, sites, |row, col, p| h0[(row, col)] += coef[p], |col, phase, p| h1[(col, col)] += coef[p] * pow(phase));
    Ok(PottsChain { n, sites, omega, h0, h1 })
}

/// `H₀, H₁` over `Q(i)`, available when `ω ∈ {-1, i}`.
pub fn build_chain_exact(n: usize, sites: usize) -> Result<(Matrix, Matrix)> {
    let dim = check_params(n, sites, DEFAULT_DIM_CAP)?;
    let omega = match n {
        2 => Scalar::from_int(-1),
        4 => Scalar::i(),
        _ => return Err(Error::InvalidChain(format!("no exact arithmetic for N = {n}"))),
    };
    let pow = |k: usize| omega.pow(k as i64).unwrap();
    let coef: Vec<Scalar> = (0..n)
        .map(|p| {
            if p == 0 {
                Scalar::zero()
            } else {
                &(&Scalar::one() - &pow(n - p)).inv().unwrap() * &Scalar::from_int(-2)
            }
        })
        .collect();
    let mut h0 = Matrix::zeros(dim, dim);
    let mut h1 = Matrix::zeros(dim, dim);
    for_each_term(
        n,
        sites,
        |row, col, p| h0[(row, col)] += &coef[p],
        |col, phase, p| h1[(col, col)] += &(&coef[p] * &pow(phase)),
    );
    Ok((h0, h1))
}

/// Per-site clock and shift matrices `X|m⟩ = |m+1⟩`, `Z|m⟩ = ωᵐ|m⟩`.
pub fn clock_shift(n: usize) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let mut x = DMatrix::zeros(n, n);
    let mut z = DMatrix::zeros(n, n);
    for m in 0..n {
        x[((m + 1) % n, m)] = Complex64::new(1.0, 0.0);
        z[(m, m)] = Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64);
    }
    (x, z)
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl PottsChain {
    pub fn dim(&self) -> usize {
        self.h0.nrows()
    }

    pub fn hamiltonian(&self, kprime: f64) -> DMatrix<Complex64> {
        &self.h0 + &self.h1 * Complex64::new(kprime, 0.0)
    }

    /// `max(‖H₀ - H₀†‖, ‖H₁ - H₁†‖)` in the entrywise max norm.
    pub fn hermitian_defect(&self) -> f64 {
        max_abs(&(&self.h0 - self.h0.adjoint())).max(max_abs(&(&self.h1 - self.h1.adjoint())))
    }

    /// `‖ZX - ωXZ‖` on a single site.
    pub fn clock_relation_defect(&self) -> f64 {
        let (x, z) = clock_shift(self.n);
        max_abs(&(&z * &x - &x * &z * self.omega))
    }

    /// `max ‖T H T⁻¹ - H‖` for the cyclic site shift `T`.
    pub fn translation_defect(&self) -> f64 {
        let dim = self.dim();
        let perm: Vec<usize> = (0..dim)
            .map(|i| {
                let mut d = digits(i, self.n, self.sites);
                d.rotate_right(1);
                index(&d, self.n)
            })
            .collect();
        let shifted = |h: &DMatrix<Complex64>| DMatrix::from_fn(dim, dim, |i, j| h[(perm[i], perm[j])]);
        max_abs(&(shifted(&self.h0) - &self.h0)).max(max_abs(&(shifted(&self.h1) - &self.h1)))
    }

    /// `A₀ = -(2/N)H₀`, `A₁ = -(2/N)H₁`.
    pub fn onsager_generators(&self) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
        let s = Complex64::new(-2.0 / self.n as f64, 0.0);
        (&self.h0 * s, &self.h1 * s)
    }
}

/// Size of the Dolan–Grady defects of `A₀, A₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DgReport {
    /// Largest entry of either defect.
    pub absolute: f64,
    /// `absolute / max(1, 16‖[A₁,A₀]‖, 16‖[A₀,A₁]‖)`.
    pub relative: f64,
}

fn commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}

/// DG defect of an arbitrary pair of matrices.
pub fn dg_defect_numeric(a0: &DMatrix<Complex64>, a1: &DMatrix<Complex64>) -> DgReport {
    let one_side = |b0: &DMatrix<Complex64>, b1: &DMatrix<Complex64>| {
        let c = commutator(b1, b0);
        let t = commutator(b1, &commutator(b1, &c));
        (max_abs(&(t - &c * Complex64::new(16.0, 0.0))), 16.0 * max_abs(&c))
    };
    let (d1, s1) = one_side(a0, a1);
    let (d2, s2) = one_side(a1, a0);
    let absolute = d1.max(d2);
    DgReport { absolute, relative: absolute / s1.max(s2).max(1.0) }
}

pub fn dg_check_numeric(chain: &PottsChain) -> DgReport {
    let (a0, a1) = chain.onsager_generators();
    dg_defect_numeric(&a0, &a1)
}

/// Exact DG check for `N ∈ {2, 4}`.
pub fn dg_check_exact(n: usize, sites: usize) -> Result<bool> {
    let (h0, h1) = build_chain_exact(n, sites)?;
    let s = Scalar::from_ratio(-2, n as i64);
    let (a0, a1) = (h0.scale(&s), h1.scale(&s));
    Ok(dg_defect(&a0, &a1).is_zero() && dg_defect(&a1, &a0).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising_single_site() {
        let c = build_chain(2, 1).unwrap();
        let (x, _) = clock_shift(2);
        assert!(max_abs(&(&c.h0 + &x)) < 1e-15);
        assert!(max_abs(&(&c.h1 + DMatrix::identity(2, 2))) < 1e-15);
        let (h0, h1) = build_chain_exact(2, 1).unwrap();
        assert_eq!(h1, Matrix::identity(2).scale(&Scalar::from_int(-1)));
        assert_eq!(h0[(0, 1)], Scalar::from_int(-1));
    }

    #[test]
    fn chain_invariants() {
        for (n, sites) in [(2, 2), (3, 1), (3, 2), (4, 2)] {
            let c = build_chain(n, sites).unwrap();
            assert!(c.hermitian_defect() < 1e-12);
            assert!(c.clock_relation_defect() < 1e-12);
            assert!(c.translation_defect() < 1e-12);
            assert!(dg_check_numeric(&c).relative < 1e-10, "N = {n}, sites = {sites}");
        }
    }

    #[test]
    fn exact_dg() {
        assert!(dg_check_exact(2, 2).unwrap());
        assert!(dg_check_exact(4, 1).unwrap());
        assert!(dg_check_exact(3, 1).is_err());
    }

    #[test]
    fn dg_not_scale_invariant() {
        let c = build_chain(3, 2).unwrap();
        let (a0, a1) = c.onsager_generators();
        let two = Complex64::new(2.0, 0.0);
        assert!(dg_defect_numeric(&(&a0 * two), &(&a1 * two)).relative > 1e-3);
    }

    #[test]
    fn cap_and_params() {
        assert!(matches!(build_chain(4, 7), Err(Error::DimensionTooLarge { dim: 16384, cap: 4096 })));
        assert!(build_chain(1, 2).is_err());
        assert!(build_chain(2, 0).is_err());
    }

    #[test]
    fn precision_parsing() {
        assert_eq!(Tolerances::parse("1e-9").unwrap().dg, 1e-9);
        let t = Tolerances::parse("fit=1e-7").unwrap();
        assert_eq!((t.fit, t.dg), (1e-7, 1e-10));
        assert!(Tolerances::parse("speed=3").is_err());
        assert!(Tolerances::parse("-1").is_err());
    }
}
