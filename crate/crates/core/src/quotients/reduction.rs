//! Elimination of the even `Y_{2n}` in `OA_{1,L}`.
//!
//! Antisymmetry of `[X_n, X_k]` forces
//! `(1 + (-1)ⁿ) Yₙ + Σ_{a≥1} C(a+n-1, a) Y_{a+n} = 0`, and with `Y_m = 0` for
//! `m ≥ L` these relations express each `Y_{2n}` through the odd `Y_{2k+1}`.

use num_bigint::BigInt;

use crate::combinat::{binom, gbinom, BernoulliCache};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};

/// Rows `n` (for `2n < L`) give `Y_{2n} = Σ_k M[n][k] Y_{2k+1}` (for `2k+1 < L`).
#[derive(Clone, Debug, PartialEq)]
pub struct YReduction {
    pub order: usize,
    pub coefficients: Matrix,
    /// Linear solve and closed form agree exactly.
    pub routes_agree: bool,
    /// The odd-`n` constraints hold identically once even `Y`s are eliminated.
    pub odd_constraints_hold: bool,
}

fn even_count(order: usize) -> usize {
    order.div_ceil(2)
}

fn odd_count(order: usize) -> usize {
    order / 2
}

/// Coefficient of `Y_{n+a}` in constraint `n`: `1 + (-1)ⁿ` for `a = 0`, else `C(a+n-1, a)`.
fn constraint_coeff(n: usize, a: usize) -> BigInt {
    if a == 0 {
        BigInt::from(if n.is_multiple_of(2) { 2 } else { 0 })
    } else {
        gbinom((a + n) as i64 - 1, a as i64)
    }
}

/// Solves the even constraints as one linear system.
pub fn y_reduction_linear(order: usize) -> (Matrix, bool) {
    let ne = even_count(order);
    let no = odd_count(order);
    // A·y_even = -B·y_odd, rows are the constraints with even n
    let mut a = Matrix::zeros(ne, ne);
    let mut b = Matrix::zeros(ne, no);
    for r in 0..ne {
        let n = 2 * r;
        for m in n..order {
            let c = Scalar::real(Rational::from_integer(constraint_coeff(n, m - n)));
            if m % 2 == 0 {
                a[(r, m / 2)] = c;
            } else {
                b[(r, m / 2)] = c;
            }
        }
    }
    let mut coeffs = Matrix::zeros(ne, no);
    for col in 0..no {
        let rhs: Vec<Scalar> = b.column(col).iter().map(|c| -c).collect();
        let y = a.solve(&rhs).expect("even constraints are triangular with diagonal 2");
        for (r, v) in y.into_iter().enumerate() {
            coeffs[(r, col)] = v;
        }
    }
    // the odd-n constraints must now hold on their own
    let mut odd_ok = true;
    for n in (1..order).step_by(2) {
        let mut combo = vec![Scalar::zero(); no];
        for m in n + 1..order {
            let c = Scalar::real(Rational::from_integer(constraint_coeff(n, m - n)));
            if m % 2 == 1 {
                combo[m / 2] += &c;
            } else {
                for (k, slot) in combo.iter_mut().enumerate() {
                    *slot += &(&c * &coeffs[(m / 2, k)]);
                }
            }
        }
        odd_ok &= combo.iter().all(Scalar::is_zero);
    }
    (coeffs, odd_ok)
}

/// `Y_{2n} = Σ_{k≥n} (-1)^{k-n+1} (4^{k-n+1}-1) B_{k-n+1}/(k-n+1) · C(2k, 2n-1) Y_{2k+1}`.
pub fn y_reduction_closed_form(order: usize) -> Matrix {
    let ne = even_count(order);
    let no = odd_count(order);
    let cache = BernoulliCache::build(no + 1);
    let mut m = Matrix::zeros(ne, no);
    for n in 1..ne {
        for k in n..no {
            let mm = k - n + 1;
            let num = (num_traits::pow(BigInt::from(4), mm) - 1) * binom(2 * k as i64, 2 * n as i64 - 1);
            let mut c = Rational::from_integer(num) * &cache.big_b[mm] / Rational::from_integer(BigInt::from(mm));
            if mm % 2 == 1 {
                c = -c;
            }
            m[(n, k)] = Scalar::real(c);
        }
    }
    m
}

pub fn y_reduction(order: usize) -> YReduction {
    let (lin, odd_ok) = y_reduction_linear(order);
    let closed = y_reduction_closed_form(order);
    YReduction { order, routes_agree: lin == closed, coefficients: closed, odd_constraints_hold: odd_ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y0_row_vanishes() {
        let r = y_reduction(8);
        assert!(r.coefficients.row(0).iter().all(Scalar::is_zero));
        assert!(r.routes_agree && r.odd_constraints_hold);
    }

    #[test]
    fn top_even_row_vanishes_for_odd_order() {
        for order in [3, 5, 7, 9] {
            let r = y_reduction(order);
            let top = (order - 1) / 2;
            assert!(r.coefficients.row(top).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn y2_for_order_six() {
        let (lin, _) = y_reduction_linear(6);
        let closed = y_reduction_closed_form(6);
        assert_eq!(lin.row(1), closed.row(1));
        // Y_2 = -Y_3 + Y_5 ... the leading coefficient is -(4-1)(1/6)·C(2,1) = -1
        assert_eq!(closed[(1, 1)], Scalar::from_int(-1));
    }
}
