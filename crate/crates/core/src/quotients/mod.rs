//! Finite quotients `OA/I_{U_a^L}` with explicit structure constants.

mod build;
mod efh;
mod lambda;
mod reduction;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix};
use crate::scalar::Scalar;

pub use build::{build_quotient, image_dimension, project, taylor_image};
pub use efh::{ad_spectrum_x0, efh_basis, efh_basis_for_order, expected_efh_algebra, AdSpectrum, EfhBasis};
pub use lambda::{lambda_model, lambda_realization, nilpotent_model, principal_degree, LambdaRealization};
pub use reduction::{y_reduction, y_reduction_closed_form, y_reduction_linear, YReduction};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sl2Kind {
    E,
    F,
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Pauli {
    One,
    Two,
    Three,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BasisLabel {
    /// Class of `uʲ/j! · x` in `sl₂ ⊗ C[u]/uᴸ`.
    Triple(Sl2Kind, usize),
    X(usize),
    Y(usize),
    Efh(Sl2Kind, usize),
    /// `λᵖ σᵏ`.
    Lambda(Pauli, usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |k: &Sl2Kind, upper: bool| match (k, upper) {
            (Sl2Kind::E, false) => "e",
            (Sl2Kind::F, false) => "f",
            (Sl2Kind::H, false) => "h",
            (Sl2Kind::E, true) => "E",
            (Sl2Kind::F, true) => "F",
            (Sl2Kind::H, true) => "H",
        };
        match self {
            BasisLabel::Triple(k, j) => write!(f, "{}_{j}", kind(k, false)),
            BasisLabel::X(k) => write!(f, "X_{k}"),
            BasisLabel::Y(k) => write!(f, "Y_{k}"),
            BasisLabel::Efh(k, j) => write!(f, "{}_{j}", kind(k, true)),
            BasisLabel::Lambda(s, p) => {
                let n = match s {
                    Pauli::One => 1,
                    Pauli::Two => 2,
                    Pauli::Three => 3,
                };
                write!(f, "lambda^{p}*sigma{n}")
            }
        }
    }
}

impl FromStr for BasisLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown basis label `{s}`"));
        if let Some(rest) = s.strip_prefix("lambda^") {
            let (p, sig) = rest.split_once("*sigma").ok_or_else(bad)?;
            let p: usize = p.parse().map_err(|_| bad())?;
            let k = match sig {
                "1" => Pauli::One,
                "2" => Pauli::Two,
                "3" => Pauli::Three,
                _ => return Err(bad()),
            };
            return Ok(BasisLabel::Lambda(k, p));
        }
        let (head, idx) = s.split_once('_').ok_or_else(bad)?;
        let j: usize = idx.parse().map_err(|_| bad())?;
        Ok(match head {
            "e" => BasisLabel::Triple(Sl2Kind::E, j),
            "f" => BasisLabel::Triple(Sl2Kind::F, j),
            "h" => BasisLabel::Triple(Sl2Kind::H, j),
            "X" => BasisLabel::X(j),
            "Y" => BasisLabel::Y(j),
            "E" => BasisLabel::Efh(Sl2Kind::E, j),
            "F" => BasisLabel::Efh(Sl2Kind::F, j),
            "H" => BasisLabel::Efh(Sl2Kind::H, j),
            _ => return Err(bad()),
        })
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BasisLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Sparse vector: `(basis index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// A finite-dimensional Lie algebra given by a basis and `[b_i, b_j] = Σ c_k b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAlgebra {
    pub a: Scalar,
    pub order: usize,
    pub basis: Vec<BasisLabel>,
    table: Vec<Vec<SparseVec>>,
}

#[derive(Serialize, Deserialize)]
struct RawQuotient {
    a: Scalar,
    #[serde(rename = "L")]
    order: usize,
    basis: Vec<BasisLabel>,
    brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
}

impl Serialize for QuotientAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let brackets = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.table[i][j].is_empty())
            .map(|(i, j)| (i, j, self.table[i][j].clone()))
            .collect();
        RawQuotient { a: self.a.clone(), order: self.order, basis: self.basis.clone(), brackets }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuotientAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawQuotient::deserialize(d)?;
        let n = raw.basis.len();
        let mut q = QuotientAlgebra::empty(raw.a, raw.order, raw.basis);
        for (i, j, v) in raw.brackets {
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(serde::de::Error::custom("bracket index out of range"));
            }
            let mut dense = vec![Scalar::zero(); n];
            for (k, c) in v {
                dense[k] += &c;
            }
            q.set_bracket(i, j, &dense);
        }
        Ok(q)
    }
}

impl QuotientAlgebra {
    pub fn empty(a: Scalar, order: usize, basis: Vec<BasisLabel>) -> Self {
        let n = basis.len();
        QuotientAlgebra { a, order, basis, table: vec![vec![Vec::new(); n]; n] }
    }

    /// Fills the table from a bracket on basis indices; only `i < j` is queried.
    pub fn from_fn<F: FnMut(usize, usize) -> Vec<Scalar>>(
        a: Scalar,
        order: usize,
        basis: Vec<BasisLabel>,
        mut bracket: F,
    ) -> Self {
        let n = basis.len();
        let mut q = QuotientAlgebra::empty(a, order, basis);
        for i in 0..n {
            for j in i + 1..n {
                let v = bracket(i, j);
                q.set_bracket(i, j, &v);
            }
        }
        q
    }

    /// Sets `[b_i, b_j] = v` and `[b_j, b_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Scalar]) {
        let neg: Vec<Scalar> = v.iter().map(|c| -c).collect();
        self.table[i][j] = to_sparse(v);
        self.table[j][i] = to_sparse(&neg);
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.table[i][j] {
                    out[*k] += &(&c * v);
                }
            }
        }
        out
    }

    pub fn check_antisymmetry(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.table[i][i].is_empty()
                && (0..n).all(|j| {
                    let neg: SparseVec = self.table[j][i].iter().map(|(k, c)| (*k, -c)).collect();
                    self.table[i][j] == neg
                })
        })
    }

    /// First basis triple violating Jacobi, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let units: Vec<Vec<Scalar>> = (0..n).map(|i| self.unit(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket(&units[i], &units[j]);
                for k in j + 1..n {
                    let jk = self.bracket(&units[j], &units[k]);
                    let ki = self.bracket(&units[k], &units[i]);
                    let a = self.bracket(&ij, &units[k]);
                    let b = self.bracket(&jk, &units[i]);
                    let c = self.bracket(&ki, &units[j]);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// Matrix of `ad x` acting on coordinate columns.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.bracket(x, &self.unit(j))).collect();
        Matrix::from_columns(&cols)
    }

    /// Span of `[s, t]` for `s` in `left` and `t` in `right`.
    pub fn bracket_span(&self, left: &[Vec<Scalar>], right: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut e = EchelonBasis::new(self.dim());
        let mut out = Vec::new();
        for s in left {
            for t in right {
                let v = self.bracket(s, t);
                if e.insert(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn full_basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.unit(i)).collect()
    }

    /// Basis of `[g, g]`.
    pub fn derived_algebra(&self) -> Vec<Vec<Scalar>> {
        let all = self.full_basis();
        self.bracket_span(&all, &all)
    }

    /// Dimensions of `s ⊇ [s,s] ⊇ [s,[s,s]] ⊇ …` until the chain stabilizes.
    pub fn lower_central_series(&self, sub: &[Vec<Scalar>]) -> Vec<usize> {
        let mut dims = vec![sub.len()];
        let mut cur = sub.to_vec();
        loop {
            let next = self.bracket_span(sub, &cur);
            if next.len() == cur.len() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            cur = next;
        }
    }

    /// Dimensions of `s ⊇ [s,s] ⊇ [[s,s],[s,s]] ⊇ …`.
    pub fn derived_series(&self, sub: &[Vec<Scalar>]) -> Vec<usize> {
        let mut dims = vec![sub.len()];
        let mut cur = sub.to_vec();
        loop {
            let next = self.bracket_span(&cur, &cur);
            if next.len() == cur.len() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            cur = next;
        }
    }

    /// Dimension of the centralizer of `sub` inside `sub`.
    pub fn center_dim_of(&self, sub: &[Vec<Scalar>]) -> usize {
        if sub.is_empty() {
            return 0;
        }
        // unknown combination Σ c_i s_i commuting with every s_j
        let n = self.dim();
        let mut rows = Vec::new();
        for sj in sub {
            let images: Vec<Vec<Scalar>> = sub.iter().map(|si| self.bracket(si, sj)).collect();
            for k in 0..n {
                rows.push(images.iter().map(|v| v[k].clone()).collect::<Vec<_>>());
            }
        }
        let m = Matrix::from_rows(rows);
        sub.len() - m.rank()
    }

    pub fn is_nilpotent_sub(&self, sub: &[Vec<Scalar>]) -> bool {
        self.lower_central_series(sub).last() == Some(&0)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series(&self.full_basis()).last() == Some(&0)
    }

    /// The same algebra in the basis whose `i`-th element has coordinates `new_basis[i]`.
    pub fn change_basis(&self, new_basis: &[Vec<Scalar>], labels: Vec<BasisLabel>) -> Result<QuotientAlgebra> {
        let n = self.dim();
        if new_basis.len() != n || labels.len() != n {
            return Err(Error::Invalid(format!("expected {n} basis vectors")));
        }
        let p = Matrix::from_columns(new_basis);
        let pinv = p.inverse().ok_or_else(|| Error::Invalid("new basis is not independent".into()))?;
        Ok(QuotientAlgebra::from_fn(self.a.clone(), self.order, labels, |i, j| {
            pinv.mul_vec(&self.bracket(&new_basis[i], &new_basis[j]))
        }))
    }

    /// Exact equality of structure constants, ignoring labels.
    pub fn same_structure(&self, other: &QuotientAlgebra) -> bool {
        self.dim() == other.dim() && self.table == other.table
    }
}
