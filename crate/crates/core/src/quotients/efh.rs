//! The `E_j, F_j, H_j` basis of `OA_{1,2l}` and the eigenspaces of `ad X_0`.

use crate::combinat::binom;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};

use super::build::build_quotient;
use super::{BasisLabel, QuotientAlgebra, Sl2Kind};

/// `E_j, F_j, H_j` for `j < l` as vectors over the `X/Y` basis of `OA_{1,2l}`.
#[derive(Clone, Debug)]
pub struct EfhBasis {
    pub l: usize,
    pub labels: Vec<BasisLabel>,
    /// `vectors[i]` has the `X/Y` coordinates of `labels[i]`.
    pub vectors: Vec<Vec<Scalar>>,
    /// `OA_{1,2l}` rewritten over `labels`.
    pub algebra: QuotientAlgebra,
    pub source: QuotientAlgebra,
}

fn efh_labels(l: usize) -> Vec<BasisLabel> {
    (0..l)
        .flat_map(|j| [Sl2Kind::E, Sl2Kind::F, Sl2Kind::H].map(|k| BasisLabel::Efh(k, j)))
        .collect()
}

fn efh_pos(kind: Sl2Kind, j: usize) -> usize {
    3 * j + kind as usize
}

fn add_scaled(out: &mut [Scalar], v: &[Scalar], c: &Scalar) {
    for (o, x) in out.iter_mut().zip(v) {
        *o += &(x * c);
    }
}

fn scaled(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Rejects odd `L`, which has no `E/F/H` basis.
pub fn efh_basis_for_order(order: usize) -> Result<EfhBasis> {
    if order % 2 == 1 {
        return Err(Error::OddOrder(order));
    }
    efh_basis(order / 2)
}

pub fn efh_basis(l: usize) -> Result<EfhBasis> {
    if l == 0 {
        return Err(Error::ZeroOrder);
    }
    let q = build_quotient(&Scalar::one(), 2 * l)?;
    let x = |k: usize| q.unit(q.index_of(&BasisLabel::X(k)).unwrap());
    let y = |k: usize| q.unit(q.index_of(&BasisLabel::Y(k)).unwrap());
    let n = q.dim();

    // X_1 - Σ_{k=1}^{2l-1} (-1)^k X_k
    let mut tail = x(1);
    for k in 1..2 * l {
        add_scaled(&mut tail, &x(k), &int(-sign(k)));
    }
    let quarter_y1 = scaled(&y(1), &Scalar::from_ratio(1, 4));
    let mut e0 = quarter_y1.clone();
    add_scaled(&mut e0, &tail, &Scalar::from_ratio(1, 8));
    let mut f0 = quarter_y1;
    add_scaled(&mut f0, &tail, &Scalar::from_ratio(-1, 8));
    let h0 = scaled(&x(0), &Scalar::from_ratio(1, 2));

    let mut es = vec![e0];
    let mut fs = vec![f0];
    let h1 = q.bracket(&es[0], &fs[0]);
    let half = Scalar::from_ratio(1, 2);
    for j in 1..l {
        let e = scaled(&q.bracket(&h1, &es[j - 1]), &half);
        let f = scaled(&q.bracket(&h1, &fs[j - 1]), &-&half);
        es.push(e);
        fs.push(f);
    }
    let mut hs = vec![h0];
    for j in 1..l {
        hs.push(q.bracket(&es[0], &fs[j - 1]));
    }

    let labels = efh_labels(l);
    let mut vectors = vec![vec![Scalar::zero(); n]; n];
    for j in 0..l {
        vectors[efh_pos(Sl2Kind::E, j)] = es[j].clone();
        vectors[efh_pos(Sl2Kind::F, j)] = fs[j].clone();
        vectors[efh_pos(Sl2Kind::H, j)] = hs[j].clone();
    }
    let algebra = q.change_basis(&vectors, labels.clone())?;
    Ok(EfhBasis { l, labels, vectors, algebra, source: q })
}

/// Truncated relations `[E_j,F_k] = H_{j+k+1}`, `[H_j,E_k] = 2E_{j+k}`, `[H_j,F_k] = -2F_{j+k}`,
/// `[E,E] = [F,F] = [H,H] = 0`, with indices past `l-1` read as zero.
pub fn expected_efh_algebra(l: usize) -> QuotientAlgebra {
    let labels = efh_labels(l);
    let basis = labels.clone();
    QuotientAlgebra::from_fn(Scalar::one(), 2 * l, basis, |i, j| {
        let mut out = vec![Scalar::zero(); 3 * l];
        let (BasisLabel::Efh(a, p), BasisLabel::Efh(b, r)) = (&labels[i], &labels[j]) else {
            unreachable!()
        };
        use Sl2Kind::*;
        let (kind, idx, c) = match (a, b) {
            (E, F) => (H, p + r + 1, 1),
            (F, E) => (H, p + r + 1, -1),
            (H, E) => (E, p + r, 2),
            (E, H) => (E, p + r, -2),
            (H, F) => (F, p + r, -2),
            (F, H) => (F, p + r, 2),
            _ => return out,
        };
        if idx < l {
            out[efh_pos(kind, idx)] = int(c);
        }
        out
    })
}

impl EfhBasis {
    pub fn vector(&self, kind: Sl2Kind, j: usize) -> &[Scalar] {
        &self.vectors[efh_pos(kind, j)]
    }

    /// First pair of labels whose bracket differs from the truncated relations.
    pub fn relation_violation(&self) -> Option<(BasisLabel, BasisLabel)> {
        let expected = expected_efh_algebra(self.l);
        let n = self.labels.len();
        for i in 0..n {
            for j in 0..n {
                if self.algebra.basis_bracket(i, j) != expected.basis_bracket(i, j) {
                    return Some((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        None
    }

    pub fn satisfies_relations(&self) -> bool {
        self.relation_violation().is_none()
    }
}

/// Eigenspaces of `ad X_0` on `OA_{1,2l}`, together with checks of the listed eigenvectors.
#[derive(Clone, Debug)]
pub struct AdSpectrum {
    pub l: usize,
    /// `(eigenvalue, eigenspace basis)` for `0, 4, -4`.
    pub eigenspaces: Vec<(i64, Vec<Vec<Scalar>>)>,
    /// Sum of the eigenspace dimensions equals `dim OA_{1,2l}`.
    pub diagonalizable: bool,
    pub zero_vectors: Vec<Vec<Scalar>>,
    pub plus_vectors: Vec<Vec<Scalar>>,
    pub minus_vectors: Vec<Vec<Scalar>>,
    /// Every listed vector is nonzero and an eigenvector for its eigenvalue.
    pub listed_vectors_ok: bool,
    /// The listed vectors for each eigenvalue are independent.
    pub listed_vectors_span: bool,
    pub zero_vectors_commute: bool,
}

impl AdSpectrum {
    pub fn multiplicities(&self) -> (usize, usize, usize) {
        let d = |ev: i64| self.eigenspaces.iter().find(|(e, _)| *e == ev).map_or(0, |(_, b)| b.len());
        (d(0), d(4), d(-4))
    }

    pub fn holds(&self) -> bool {
        let l = self.l;
        self.multiplicities() == (l, l, l)
            && self.diagonalizable
            && self.listed_vectors_ok
            && self.listed_vectors_span
            && self.zero_vectors_commute
    }
}

pub fn ad_spectrum_x0(l: usize) -> Result<AdSpectrum> {
    if l == 0 {
        return Err(Error::ZeroOrder);
    }
    let q = build_quotient(&Scalar::one(), 2 * l)?;
    let n = q.dim();
    let x = |k: usize| q.unit(q.index_of(&BasisLabel::X(k)).unwrap());
    let y = |k: usize| q.unit(q.index_of(&BasisLabel::Y(k)).unwrap());
    let x0 = x(0);
    let ad = q.ad_matrix(&x0);

    let eigenspaces: Vec<(i64, Vec<Vec<Scalar>>)> = [0i64, 4, -4]
        .into_iter()
        .map(|ev| (ev, (&ad - &Matrix::identity(n).scale(&int(ev))).nullspace()))
        .collect();
    let total: usize = eigenspaces.iter().map(|(_, b)| b.len()).sum();

    let big = |k: usize, j: usize| Scalar::real(Rational::from_integer(binom(k as i64 - 1, j as i64)));
    let mut zero_vectors = vec![x0.clone()];
    for j in 2..=l {
        let mut v = vec![Scalar::zero(); n];
        for k in 2 * j - 2..2 * l {
            add_scaled(&mut v, &x(k), &(&big(k, 2 * j - 4) * &int(sign(k))));
        }
        zero_vectors.push(v);
    }
    let mut plus_vectors = Vec::new();
    let mut minus_vectors = Vec::new();
    for j in 1..=l {
        let mut w = x(2 * j - 1);
        for k in 2 * j - 1..2 * l {
            add_scaled(&mut w, &x(k), &(&big(k, 2 * j - 2) * &int(-sign(k))));
        }
        let mut p = scaled(&y(2 * j - 1), &int(2));
        add_scaled(&mut p, &w, &Scalar::one());
        let mut m = scaled(&y(2 * j - 1), &int(2));
        add_scaled(&mut m, &w, &int(-1));
        plus_vectors.push(p);
        minus_vectors.push(m);
    }

    let is_eigen = |v: &Vec<Scalar>, ev: i64| {
        !v.iter().all(Scalar::is_zero) && ad.mul_vec(v) == scaled(v, &int(ev))
    };
    let listed_vectors_ok = zero_vectors.iter().all(|v| is_eigen(v, 0))
        && plus_vectors.iter().all(|v| is_eigen(v, 4))
        && minus_vectors.iter().all(|v| is_eigen(v, -4));
    let independent = |vs: &[Vec<Scalar>]| Matrix::from_columns(vs).rank() == vs.len();
    let listed_vectors_span =
        independent(&zero_vectors) && independent(&plus_vectors) && independent(&minus_vectors);
    let zero_vectors_commute = zero_vectors
        .iter()
        .enumerate()
        .all(|(i, a)| zero_vectors[i + 1..].iter().all(|b| q.bracket(a, b).iter().all(Scalar::is_zero)));

    Ok(AdSpectrum {
        l,
        eigenspaces,
        diagonalizable: total == n,
        zero_vectors,
        plus_vectors,
        minus_vectors,
        listed_vectors_ok,
        listed_vectors_span,
        zero_vectors_commute,
    })
}
