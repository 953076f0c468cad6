//! The `λ`-coordinate model of `OA_{1,L}` and the nilpotent model of its derived ideal.
//!
//! With `λ = (t - t⁻¹)/2` one has `u = λ - 1 + √(1+λ²)` and `v = -λ - 1 + √(1+λ²)`,
//! so `X_k` and `Y_k` become truncated power series in `λ` with Pauli coefficients.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::TruncatedSeries;
use crate::scalar::{Rational, Scalar};

use super::build::build_quotient;
use super::efh::efh_basis;
use super::{BasisLabel, Pauli, QuotientAlgebra, Sl2Kind};

#[derive(Clone, Debug)]
pub struct LambdaRealization {
    pub order: usize,
    pub source: QuotientAlgebra,
    /// `λᵖσᵏ` with `σ¹` at even and `σ², σ³` at odd powers below `L`.
    pub model: QuotientAlgebra,
    /// Column `i` holds the image of `source.basis[i]`.
    pub change: Matrix,
    pub lower_triangular: bool,
    pub invertible: bool,
    /// Diagonal is `2` on `X_{2n}`, `2i` on `X_{2n+1}`, `-2` on `Y_{2n+1}`.
    pub diagonal_ok: bool,
    /// `uᵏ + vᵏ` is even and `uᵏ - vᵏ` odd in `λ`.
    pub parity_ok: bool,
    /// `change · [x, y] = [change·x, change·y]` on all basis pairs.
    pub transports: bool,
    /// Lowest terms of `u^{2n+1} - v^{2n+1}` and `u^{2n} + v^{2n}` are `2λ^{2n+1}` and `2λ^{2n}`.
    pub leading_ratios_ok: bool,
    /// For even `L`: `H_j ↦ λ^{2j}σ¹`, `E_j ↦ λ^{2j+1}(iσ² - σ³)/2`, `F_j ↦ λ^{2j+1}(-iσ² - σ³)/2`.
    pub efh_images_ok: Option<bool>,
    /// Numbers of `σ¹`, `σ²`, `σ³` basis elements.
    pub part_dims: (usize, usize, usize),
}

impl LambdaRealization {
    pub fn holds(&self) -> bool {
        self.lower_triangular
            && self.invertible
            && self.diagonal_ok
            && self.parity_ok
            && self.transports
            && self.leading_ratios_ok
            && self.efh_images_ok != Some(false)
    }
}

fn lambda_basis(order: usize) -> Vec<BasisLabel> {
    let mut b = Vec::new();
    for p in 0..order {
        if p % 2 == 0 {
            b.push(BasisLabel::Lambda(Pauli::One, p));
        } else {
            b.push(BasisLabel::Lambda(Pauli::Two, p));
            b.push(BasisLabel::Lambda(Pauli::Three, p));
        }
    }
    b
}

/// `[σᵃ, σᵇ] = 2i ε_{abc} σᶜ`.
fn pauli_bracket(a: Pauli, b: Pauli) -> Option<(Pauli, i64)> {
    use Pauli::*;
    match (a, b) {
        (One, Two) => Some((Three, 1)),
        (Two, One) => Some((Three, -1)),
        (Two, Three) => Some((One, 1)),
        (Three, Two) => Some((One, -1)),
        (Three, One) => Some((Two, 1)),
        (One, Three) => Some((Two, -1)),
        _ => None,
    }
}

/// `λᵖσᵏ` truncated at `λ^L`.
pub fn lambda_model(order: usize) -> QuotientAlgebra {
    let basis = lambda_basis(order);
    let labels = basis.clone();
    QuotientAlgebra::from_fn(Scalar::one(), order, basis, |i, j| {
        let mut out = vec![Scalar::zero(); labels.len()];
        let (BasisLabel::Lambda(a, p), BasisLabel::Lambda(b, r)) = (&labels[i], &labels[j]) else {
            unreachable!()
        };
        if let Some((c, s)) = pauli_bracket(*a, *b) {
            if let Some(k) = labels.iter().position(|l| l == &BasisLabel::Lambda(c, p + r)) {
                out[k] = &Scalar::i() * &Scalar::from_int(2 * s);
            }
        }
        out
    })
}

fn series(coeffs: Vec<Scalar>) -> TruncatedSeries {
    TruncatedSeries::new(Scalar::zero(), coeffs)
}

/// `√(1+λ²)` from the binomial series, truncated at `λ^L`.
fn sqrt_one_plus_sq(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Scalar::zero(); order];
    let half = Rational::new(1.into(), 2.into());
    let mut c = Rational::from_integer(1.into());
    for m in 0.. {
        if 2 * m >= order {
            break;
        }
        coeffs[2 * m] = Scalar::real(c.clone());
        c = c * (&half - Rational::from_integer(m.into())) / Rational::from_integer((m + 1).into());
    }
    series(coeffs)
}

/// Powers `uᵏ` and `vᵏ` for `k < L` as series in `λ`.
fn uv_lambda_powers(order: usize) -> (Vec<TruncatedSeries>, Vec<TruncatedSeries>) {
    let s = sqrt_one_plus_sq(order);
    let mut shift = vec![Scalar::zero(); order];
    shift[0] = Scalar::from_int(-1);
    if order > 1 {
        shift[1] = Scalar::one();
    }
    let u = s.add(&series(shift.clone()));
    if order > 1 {
        shift[1] = Scalar::from_int(-1);
    }
    let v = s.add(&series(shift));
    let mut one = vec![Scalar::zero(); order];
    one[0] = Scalar::one();
    let (mut cu, mut cv) = (series(one.clone()), series(one));
    let (mut up, mut vp) = (Vec::new(), Vec::new());
    for _ in 0..order {
        up.push(cu.clone());
        vp.push(cv.clone());
        cu = cu.mul(&u);
        cv = cv.mul(&v);
    }
    (up, vp)
}

fn lowest_term(s: &TruncatedSeries) -> Option<(usize, Scalar)> {
    s.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone()))
}

pub fn lambda_realization(order: usize) -> Result<LambdaRealization> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let source = build_quotient(&Scalar::one(), order)?;
    let model = lambda_model(order);
    let (up, vp) = uv_lambda_powers(order);
    let n = source.dim();
    let pos = |c: Pauli, p: usize| model.index_of(&BasisLabel::Lambda(c, p));

    let mut parity_ok = true;
    let mut columns = Vec::with_capacity(n);
    for label in &source.basis {
        let mut col = vec![Scalar::zero(); n];
        match label {
            BasisLabel::X(k) => {
                let plus = up[*k].add(&vp[*k]);
                let minus = up[*k].sub(&vp[*k]);
                for p in 0..order {
                    let (cp, cm) = (plus.coeff(p), minus.coeff(p));
                    if p % 2 == 0 {
                        col[pos(Pauli::One, p).unwrap()] = cp;
                        parity_ok &= cm.is_zero();
                    } else {
                        col[pos(Pauli::Two, p).unwrap()] = &Scalar::i() * &cm;
                        parity_ok &= cp.is_zero();
                    }
                }
            }
            BasisLabel::Y(k) => {
                let sign = Scalar::from_int(if k % 2 == 1 { -1 } else { 1 });
                let minus = up[*k].sub(&vp[*k]);
                for p in 0..order {
                    let cm = minus.coeff(p);
                    if p % 2 == 1 {
                        col[pos(Pauli::Three, p).unwrap()] = &sign * &cm;
                    } else {
                        parity_ok &= cm.is_zero();
                    }
                }
            }
            _ => unreachable!("X/Y basis"),
        }
        columns.push(col);
    }
    let change = Matrix::from_columns(&columns);

    let diagonal_ok = source.basis.iter().enumerate().all(|(i, label)| {
        let want = match label {
            BasisLabel::X(k) if k % 2 == 0 => Scalar::from_int(2),
            BasisLabel::X(_) => &Scalar::i() * &Scalar::from_int(2),
            _ => Scalar::from_int(-2),
        };
        change[(i, i)] == want
    });

    let transports = (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = change.mul_vec(&source.bracket(&source.unit(i), &source.unit(j)));
            lhs == model.bracket(&columns[i], &columns[j])
        })
    });

    let two = Scalar::from_int(2);
    let leading_ratios_ok = (0..order).all(|k| {
        let s = if k % 2 == 0 { up[k].add(&vp[k]) } else { up[k].sub(&vp[k]) };
        lowest_term(&s) == Some((k, two.clone()))
    });

    let efh_images_ok = if order.is_multiple_of(2) {
        let b = efh_basis(order / 2)?;
        let half = Scalar::from_ratio(1, 2);
        let ihalf = &Scalar::i() * &half;
        let mut ok = true;
        for j in 0..order / 2 {
            let mut h = vec![Scalar::zero(); n];
            h[pos(Pauli::One, 2 * j).unwrap()] = Scalar::one();
            let mut e = vec![Scalar::zero(); n];
            e[pos(Pauli::Two, 2 * j + 1).unwrap()] = ihalf.clone();
            e[pos(Pauli::Three, 2 * j + 1).unwrap()] = -&half;
            let mut f = e.clone();
            f[pos(Pauli::Two, 2 * j + 1).unwrap()] = -&ihalf;
            ok &= change.mul_vec(b.vector(Sl2Kind::H, j)) == h;
            ok &= change.mul_vec(b.vector(Sl2Kind::E, j)) == e;
            ok &= change.mul_vec(b.vector(Sl2Kind::F, j)) == f;
        }
        Some(ok)
    } else {
        None
    };

    let count = |c: Pauli| model.basis.iter().filter(|l| matches!(l, BasisLabel::Lambda(k, _) if *k == c)).count();
    Ok(LambdaRealization {
        order,
        lower_triangular: change.is_lower_triangular(),
        invertible: change.rank() == n,
        diagonal_ok,
        parity_ok,
        transports,
        leading_ratios_ok,
        efh_images_ok,
        part_dims: (count(Pauli::One), count(Pauli::Two), count(Pauli::Three)),
        source,
        model,
        change,
    })
}

fn nilpotent_labels(l: usize) -> Vec<BasisLabel> {
    let mut b = vec![BasisLabel::Triple(Sl2Kind::E, 0)];
    for j in 1..l {
        for k in [Sl2Kind::E, Sl2Kind::F, Sl2Kind::H] {
            b.push(BasisLabel::Triple(k, j));
        }
    }
    if l > 0 {
        b.push(BasisLabel::Triple(Sl2Kind::F, l));
    }
    b
}

/// `Ce ⊕ x·sl₂[x]` modulo `xˡe`, `xˡh` and all degrees above `l`; labels are `xʲ·k`.
pub fn nilpotent_model(l: usize) -> Result<QuotientAlgebra> {
    if l == 0 {
        return Err(Error::ZeroOrder);
    }
    let basis = nilpotent_labels(l);
    let labels = basis.clone();
    Ok(QuotientAlgebra::from_fn(Scalar::one(), 2 * l, basis, |i, j| {
        let mut out = vec![Scalar::zero(); labels.len()];
        let (BasisLabel::Triple(a, p), BasisLabel::Triple(b, r)) = (&labels[i], &labels[j]) else {
            unreachable!()
        };
        use Sl2Kind::*;
        let (k, s) = match (a, b) {
            (E, F) => (H, 1),
            (F, E) => (H, -1),
            (H, E) => (E, 2),
            (E, H) => (E, -2),
            (H, F) => (F, -2),
            (F, H) => (F, 2),
            _ => return out,
        };
        if let Some(idx) = labels.iter().position(|x| x == &BasisLabel::Triple(k, p + r)) {
            out[idx] = Scalar::from_int(s);
        }
        out
    }))
}

/// Principal degree of a nilpotent-model label: `e ↦ 1`, `f ↦ -1`, `h ↦ 0`, `x ↦ 2`.
pub fn principal_degree(label: &BasisLabel) -> Option<i64> {
    match label {
        BasisLabel::Triple(k, j) => Some(
            2 * *j as i64
                + match k {
                    Sl2Kind::E => 1,
                    Sl2Kind::F => -1,
                    Sl2Kind::H => 0,
                },
        ),
        BasisLabel::Lambda(_, p) => Some(*p as i64),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        for order in 1..=6 {
            let r = lambda_realization(order).unwrap();
            assert!(r.holds(), "L = {order}: {r:?}");
        }
    }

    #[test]
    fn odd_part_dims() {
        let r = lambda_realization(7).unwrap();
        assert_eq!(r.part_dims, (4, 3, 3));
    }

    #[test]
    fn sqrt_series() {
        let s = sqrt_one_plus_sq(6);
        assert_eq!(s.mul(&s).coeffs()[..], [Scalar::one(), Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()]);
    }

    #[test]
    fn nilpotent_model_matches_derived_ideal() {
        for l in 1..=4 {
            let m = nilpotent_model(l).unwrap();
            assert_eq!(m.dim(), 3 * l - 1);
            assert!(m.check_jacobi());
            let q = build_quotient(&Scalar::one(), 2 * l).unwrap();
            let d = q.derived_algebra();
            assert_eq!(d.len(), 3 * l - 1);
            assert_eq!(q.lower_central_series(&d), m.lower_central_series(&m.full_basis()));
            assert_eq!(q.center_dim_of(&d), m.center_dim_of(&m.full_basis()));
        }
    }
}
