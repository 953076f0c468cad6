//! Construction of `OA_{a,L}` and the projection `OA → OA_{a,L}`.

use num_bigint::BigInt;

use crate::algebra::{generator_a, generator_g, OAElement};
use crate::combinat::{factorial, gbinom};
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::poly::TruncatedSeries;
use crate::scalar::{Rational, Scalar};

use super::reduction::y_reduction_closed_form;
use super::{BasisLabel, QuotientAlgebra, Sl2Kind};

fn is_unit_point(a: &Scalar) -> Option<i64> {
    if a.is_one() {
        Some(1)
    } else if a == &Scalar::from_int(-1) {
        Some(-1)
    } else {
        None
    }
}

fn check_args(a: &Scalar, order: usize) -> Result<()> {
    if a.is_zero() {
        return Err(Error::ZeroPoint);
    }
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(())
}

fn weight(j: usize) -> Scalar {
    Scalar::real(Rational::from_integer(factorial(j)))
}

/// Coordinates of `s_{a,L}(X)` on `e_0, f_0, h_0, e_1, …` where `e_j = uʲ/j!·e`.
pub fn taylor_image(x: &OAElement, a: &Scalar, order: usize) -> Result<Vec<Scalar>> {
    check_args(a, order)?;
    let pe = x.p().taylor_expand(a, order)?;
    let pf = x.p().invert_variable().taylor_expand(a, order)?;
    let ph = x.q().taylor_expand(a, order)?;
    Ok(interleave(&pe, &pf, &ph))
}

fn interleave(pe: &TruncatedSeries, pf: &TruncatedSeries, ph: &TruncatedSeries) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(3 * pe.order());
    for j in 0..pe.order() {
        let w = weight(j);
        out.push(&pe.coeff(j) * &w);
        out.push(&pf.coeff(j) * &w);
        out.push(&ph.coeff(j) * &w);
    }
    out
}

fn triple_basis(order: usize) -> Vec<BasisLabel> {
    (0..order)
        .flat_map(|j| [Sl2Kind::E, Sl2Kind::F, Sl2Kind::H].map(|k| BasisLabel::Triple(k, j)))
        .collect()
}

fn xy_basis(order: usize) -> Vec<BasisLabel> {
    let mut b = Vec::new();
    for k in 0..order {
        b.push(BasisLabel::X(k));
        if k % 2 == 1 {
            b.push(BasisLabel::Y(k));
        }
    }
    b
}

/// `uᵏ` and `vᵏ` for `v = 1/t - 1 = -u/(1+u)`, truncated at `u^L`.
fn uv_powers(order: usize) -> (Vec<TruncatedSeries>, Vec<TruncatedSeries>) {
    let one = Scalar::one();
    let mut u = TruncatedSeries::zero(one.clone(), order);
    let mut v_coeffs = vec![Scalar::zero(); order];
    for (m, c) in v_coeffs.iter_mut().enumerate().skip(1) {
        *c = Scalar::from_int(if m % 2 == 1 { -1 } else { 1 });
    }
    let v = TruncatedSeries::new(one.clone(), v_coeffs);
    if order > 1 {
        let mut c = vec![Scalar::zero(); order];
        c[1] = Scalar::one();
        u = TruncatedSeries::new(one.clone(), c);
    }
    let mut up = vec![];
    let mut vp = vec![];
    let mut cu = TruncatedSeries::new(one.clone(), {
        let mut c = vec![Scalar::zero(); order];
        c[0] = Scalar::one();
        c
    });
    let mut cv = cu.clone();
    for _ in 0..order {
        up.push(cu.clone());
        vp.push(cv.clone());
        cu = cu.mul(&u);
        cv = cv.mul(&v);
    }
    (up, vp)
}

/// Taylor coordinates at `t = 1` of `X_k = 2uᵏe + 2vᵏf` and `Y_k = (-1)ᵏ(uᵏ - vᵏ)h`,
/// listed in the `X_0, X_1, Y_1, X_2, …` basis order.
pub(crate) fn xy_images(order: usize) -> Vec<Vec<Scalar>> {
    let (up, vp) = uv_powers(order);
    let zero = TruncatedSeries::zero(Scalar::one(), order);
    let two = Scalar::from_int(2);
    let mut out = Vec::new();
    for k in 0..order {
        out.push(interleave(&up[k].scale(&two), &vp[k].scale(&two), &zero));
        if k % 2 == 1 {
            out.push(interleave(&zero, &zero, &up[k].sub(&vp[k]).scale(&Scalar::from_int(-1))));
        }
    }
    out
}

/// Dimension of the image of `OA` in `sl₂ ⊗ C[u]/uᴸ`, from the span of projected generators.
pub fn image_dimension(a: &Scalar, order: usize) -> Result<usize> {
    check_args(a, order)?;
    let l = order as i64;
    let mut e = EchelonBasis::new(3 * order);
    for m in -l..=2 * l {
        e.insert(&taylor_image(&generator_a(m), a, order)?);
    }
    for m in 1..=2 * l {
        e.insert(&taylor_image(&generator_g(m), a, order)?);
    }
    Ok(e.rank())
}

/// Coordinates of the class of `X` over the basis of [`build_quotient`].
pub fn project(x: &OAElement, a: &Scalar, order: usize) -> Result<Vec<Scalar>> {
    check_args(a, order)?;
    match is_unit_point(a) {
        None => taylor_image(x, a, order),
        Some(-1) => project(&x.sigma(), &Scalar::one(), order),
        Some(_) => {
            let mut e = EchelonBasis::new(3 * order);
            for v in xy_images(order) {
                if !e.insert(&v) {
                    return Err(Error::Invalid("X/Y images are dependent".into()));
                }
            }
            let img = taylor_image(x, a, order)?;
            e.coordinates(&img).ok_or_else(|| Error::Invalid("element projects outside the X/Y span".into()))
        }
    }
}

/// `OA_{a,L}`: the Taylor model for `a ≠ ±1`, the `X/Y` presentation for `a = ±1`.
pub fn build_quotient(a: &Scalar, order: usize) -> Result<QuotientAlgebra> {
    check_args(a, order)?;
    match is_unit_point(a) {
        None => {
            let dim = image_dimension(a, order)?;
            if dim != 3 * order {
                return Err(Error::Invalid(format!("image has dimension {dim}, expected {}", 3 * order)));
            }
            let basis = triple_basis(order);
            let labels = basis.clone();
            Ok(QuotientAlgebra::from_fn(a.clone(), order, basis, |i, j| taylor_bracket(&labels, i, j)))
        }
        Some(sign) => {
            let mut q = xy_quotient(order);
            q.a = Scalar::from_int(sign);
            Ok(q)
        }
    }
}

/// `[x_i, y_j] = C(i+j, i) [x, y]_{i+j}` in the weighted basis.
fn taylor_bracket(basis: &[BasisLabel], i: usize, j: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); basis.len()];
    let (BasisLabel::Triple(x, p), BasisLabel::Triple(y, q)) = (&basis[i], &basis[j]) else {
        unreachable!("triple basis")
    };
    let deg = p + q;
    if 3 * deg >= basis.len() {
        return out;
    }
    let c = Scalar::real(Rational::from_integer(crate::combinat::binom(deg as i64, *p as i64)));
    let at = |k: Sl2Kind| 3 * deg + k as usize;
    use Sl2Kind::*;
    let (k, s) = match (x, y) {
        (E, F) => (H, 1),
        (F, E) => (H, -1),
        (H, E) => (E, 2),
        (E, H) => (E, -2),
        (H, F) => (F, -2),
        (F, H) => (F, 2),
        _ => return out,
    };
    out[at(k)] = &c * &Scalar::from_int(s);
    out
}

struct XyIndex {
    order: usize,
    x: Vec<usize>,
    y: Vec<Option<usize>>,
    gamma: crate::linalg::Matrix,
    dim: usize,
}

impl XyIndex {
    fn new(order: usize) -> Self {
        let basis = xy_basis(order);
        let mut x = vec![0; order];
        let mut y = vec![None; order];
        for (i, b) in basis.iter().enumerate() {
            match b {
                BasisLabel::X(k) => x[*k] = i,
                BasisLabel::Y(k) => y[*k] = Some(i),
                _ => unreachable!(),
            }
        }
        XyIndex { order, x, y, gamma: y_reduction_closed_form(order), dim: basis.len() }
    }

    fn add_x(&self, out: &mut [Scalar], m: usize, c: &Scalar) {
        if m < self.order {
            out[self.x[m]] += c;
        }
    }

    /// Adds `c·Y_m`, rewriting even `m` through the reduction.
    fn add_y(&self, out: &mut [Scalar], m: usize, c: &Scalar) {
        if m >= self.order || m == 0 {
            return;
        }
        if m % 2 == 1 {
            out[self.y[m].unwrap()] += c;
            return;
        }
        for k in 0..self.order / 2 {
            let g = &self.gamma[(m / 2, k)];
            if !g.is_zero() {
                out[self.y[2 * k + 1].unwrap()] += &(c * g);
            }
        }
    }

    /// `[X_n, X_k] = 4(-1)ⁿ Σ_a C(a+k-1, a) Y_{a+n+k}`.
    fn xx(&self, n: usize, k: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        let sign = if n % 2 == 1 { -4 } else { 4 };
        for a in 0..self.order.saturating_sub(n + k) {
            let c: BigInt = gbinom((a + k) as i64 - 1, a as i64) * sign;
            self.add_y(&mut out, a + n + k, &Scalar::real(Rational::from_integer(c)));
        }
        out
    }

    /// `[Y_n, X_k] = 2((-1)ⁿ X_{n+k} - Σ_a (-1)ᵃ C(a+n-1, a) X_{a+n+k})`.
    fn yx(&self, n: usize, k: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        self.add_x(&mut out, n + k, &Scalar::from_int(if n % 2 == 1 { -2 } else { 2 }));
        for a in 0..self.order.saturating_sub(n + k) {
            let mut c: BigInt = gbinom((a + n) as i64 - 1, a as i64) * -2;
            if a % 2 == 1 {
                c = -c;
            }
            self.add_x(&mut out, a + n + k, &Scalar::real(Rational::from_integer(c)));
        }
        out
    }
}

fn xy_quotient(order: usize) -> QuotientAlgebra {
    let idx = XyIndex::new(order);
    let basis = xy_basis(order);
    let labels = basis.clone();
    QuotientAlgebra::from_fn(Scalar::one(), order, basis, |i, j| match (&labels[i], &labels[j]) {
        (BasisLabel::X(n), BasisLabel::X(k)) => idx.xx(*n, *k),
        (BasisLabel::Y(n), BasisLabel::X(k)) => idx.yx(*n, *k),
        (BasisLabel::X(k), BasisLabel::Y(n)) => idx.yx(*n, *k).iter().map(|c| -c).collect(),
        _ => vec![Scalar::zero(); idx.dim],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::make_reciprocal;

    #[test]
    fn small_quotients() {
        let q = build_quotient(&Scalar::from_int(2), 1).unwrap();
        assert_eq!(q.dim(), 3);
        // [e_0, f_0] = h_0
        assert_eq!(q.basis_bracket(0, 1), &vec![(2, Scalar::one())]);
        assert_eq!(build_quotient(&Scalar::one(), 1).unwrap().dim(), 1);
        assert_eq!(build_quotient(&Scalar::one(), 4).unwrap().dim(), 6);
        assert_eq!(build_quotient(&Scalar::zero(), 2), Err(Error::ZeroPoint));
    }

    #[test]
    fn projection_of_a1_at_two() {
        let v = project(&generator_a(1), &Scalar::from_int(2), 2).unwrap();
        let expect: Vec<Scalar> =
            ["4", "1", "0", "2", "-1/2", "0"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(v, expect);
    }

    #[test]
    fn binomial_projection_at_one() {
        let order = 5;
        let q = build_quotient(&Scalar::one(), order).unwrap();
        for m in 0..8 {
            let v = project(&generator_a(m), &Scalar::one(), order).unwrap();
            for k in 0..order {
                let i = q.index_of(&BasisLabel::X(k)).unwrap();
                let c = Scalar::real(Rational::from_integer(crate::combinat::binom(m, k as i64)));
                assert_eq!(v[i], c);
            }
        }
    }

    #[test]
    fn kernel_contains_ideal() {
        let p = make_reciprocal(&[(Scalar::from_int(2), 2)]).unwrap();
        let x = OAElement::new(p.poly().clone(), crate::poly::LaurentPoly::zero()).unwrap();
        assert!(project(&x, &Scalar::from_int(2), 2).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn xy_brackets_match_taylor_realization() {
        // the weighted Taylor table is the bracket of sl₂ ⊗ C[u]/uᴸ at any point
        for order in 1..=7 {
            let q = build_quotient(&Scalar::one(), order).unwrap();
            let taylor = QuotientAlgebra::from_fn(Scalar::one(), order, triple_basis(order), {
                let labels = triple_basis(order);
                move |i, j| taylor_bracket(&labels, i, j)
            });
            let images = xy_images(order);
            for i in 0..q.dim() {
                for j in 0..q.dim() {
                    let lhs = taylor.bracket(&images[i], &images[j]);
                    let mut rhs = vec![Scalar::zero(); 3 * order];
                    for (k, c) in q.basis_bracket(i, j) {
                        for (r, x) in rhs.iter_mut().zip(&images[*k]) {
                            *r += &(x * c);
                        }
                    }
                    assert_eq!(lhs, rhs, "L = {order}, {} {}", q.basis[i], q.basis[j]);
                }
            }
        }
    }
}
