//! Fits of eigenvalue trajectories to `a + bk' + 2N Σ_j m_j √(1 + k'² - 2k' cos θ_j)`.
//!
//! For fixed `θ` the model is linear in `(a, b, 2N m_j)`, so the linear part is projected
//! out by least squares and only the angles are optimized, by Levenberg–Marquardt from
//! a grid of starting points.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spectrum::Sweep;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryFit {
    pub trajectory: usize,
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub thetas: Vec<f64>,
    /// `m_j = c_j / 2N` for the fitted coefficients `c_j`.
    pub m: Vec<f64>,
    /// Largest absolute deviation over the samples.
    pub residual: f64,
}

/// Trajectories sharing `a`, `b` and the set of angles, differing only in the `m_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitComponent {
    pub a: f64,
    pub b: f64,
    pub thetas: Vec<f64>,
    pub trajectories: Vec<usize>,
    pub assignments: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFit {
    /// `a`, `b` of the lowest trajectory.
    pub a: f64,
    pub b: f64,
    /// All distinct angles met in any trajectory.
    pub thetas: Vec<f64>,
    /// Largest number of angles used by a single trajectory.
    pub n: usize,
    /// `assignments[t][j]` is the `m` of trajectory `t` at `thetas[j]`, zero when absent.
    pub assignments: Vec<Vec<f64>>,
    pub residual: f64,
    /// Every nonzero `m_j` is `±1/2`.
    pub all_spin_half: bool,
    /// Every nonzero `m_j` is a half-integer.
    pub half_integral: bool,
    pub components: Vec<FitComponent>,
    pub trajectories: Vec<TrajectoryFit>,
}

const M_TOL: f64 = 1e-6;
const THETA_EPS: f64 = 1e-9;

fn radical(k: f64, theta: f64) -> f64 {
    (1.0 + k * k - 2.0 * k * theta.cos()).sqrt()
}

struct Problem<'a> {
    ks: &'a [f64],
    ys: DVector<f64>,
}

impl Problem<'_> {
    fn design(&self, thetas: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(self.ks.len(), 2 + thetas.len(), |i, j| match j {
            0 => 1.0,
            1 => self.ks[i],
            _ => radical(self.ks[i], thetas[j - 2]),
        })
    }

    /// Linear coefficients and residual vector for fixed angles.
    fn project(&self, thetas: &[f64]) -> (DVector<f64>, DVector<f64>) {
        let d = self.design(thetas);
        let x = d
            .clone()
            .svd(true, true)
            .solve(&self.ys, 1e-13)
            .unwrap_or_else(|_| DVector::zeros(2 + thetas.len()));
        let r = &self.ys - &d * &x;
        (x, r)
    }

    fn cost(&self, thetas: &[f64]) -> f64 {
        self.project(thetas).1.norm_squared()
    }

    fn jacobian(&self, thetas: &[f64]) -> DMatrix<f64> {
        let h = 1e-6;
        let mut j = DMatrix::zeros(self.ks.len(), thetas.len());
        for c in 0..thetas.len() {
            let mut up = thetas.to_vec();
            let mut dn = thetas.to_vec();
            up[c] = clamp(up[c] + h);
            dn[c] = clamp(dn[c] - h);
            let diff = self.project(&up).1 - self.project(&dn).1;
            j.set_column(c, &(diff / (up[c] - dn[c])));
        }
        j
    }

    fn levenberg_marquardt(&self, start: &[f64]) -> (Vec<f64>, f64) {
        let mut theta = start.to_vec();
        let mut cost = self.cost(&theta);
        let mut mu = 1e-3;
        for _ in 0..200 {
            let (_, r) = self.project(&theta);
            let j = self.jacobian(&theta);
            let g = j.transpose() * &r;
            let a = j.transpose() * &j;
            let mut improved = false;
            while mu < 1e12 {
                let mut m = a.clone();
                for d in 0..theta.len() {
                    m[(d, d)] += mu * (a[(d, d)] + 1e-12);
                }
                let Some(step) = m.lu().solve(&(-&g)) else {
                    mu *= 4.0;
                    continue;
                };
                let trial: Vec<f64> = theta.iter().zip(step.iter()).map(|(t, s)| clamp(t + s)).collect();
                let c = self.cost(&trial);
                if c < cost {
                    let moved = trial.iter().zip(&theta).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                    theta = trial;
                    cost = c;
                    mu = (mu / 3.0).max(1e-12);
                    improved = moved > 1e-15;
                    break;
                }
                mu *= 4.0;
            }
            if !improved || cost < 1e-30 {
                break;
            }
        }
        (theta, cost)
    }
}

fn clamp(t: f64) -> f64 {
    t.clamp(THETA_EPS, PI - THETA_EPS)
}

/// Increasing `n`-tuples from a grid on `(0, π)`.
fn starts(n: usize) -> Vec<Vec<f64>> {
    let g = match n {
        1 => 48,
        2 => 24,
        3 => 12,
        _ => 8,
    };
    let grid: Vec<f64> = (0..g).map(|i| PI * (i as f64 + 0.5) / g as f64).collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    if n > g {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| grid[i]).collect());
        let mut p = n;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            if idx[p] < g - n + p {
                idx[p] += 1;
                for q in p + 1..n {
                    idx[q] = idx[q - 1] + 1;
                }
                break;
            }
        }
    }
}

fn fit_fixed_n(pb: &Problem, n: usize, n_states: usize, trajectory: usize) -> TrajectoryFit {
    let thetas = if n == 0 {
        Vec::new()
    } else {
        let mut cands: Vec<(f64, Vec<f64>)> = starts(n).into_iter().map(|s| (pb.cost(&s), s)).collect();
        cands.sort_by(|x, y| x.0.total_cmp(&y.0));
        cands
            .iter()
            .take(6)
            .map(|(_, s)| pb.levenberg_marquardt(s))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap()
            .0
    };
    let (x, r) = pb.project(&thetas);
    let scale = 2.0 * n_states as f64;
    let mut terms: Vec<(f64, f64)> = thetas.iter().enumerate().map(|(j, t)| (*t, x[2 + j] / scale)).collect();
    terms.sort_by(|p, q| p.0.total_cmp(&q.0));
    TrajectoryFit {
        trajectory,
        n,
        a: x[0],
        b: x[1],
        thetas: terms.iter().map(|t| t.0).collect(),
        m: terms.iter().map(|t| t.1).collect(),
        residual: r.amax(),
    }
}

/// Smallest `n ≤ n_max` whose fit has residual below `tol`.
pub fn fit_trajectory(
    ks: &[f64],
    ys: &[f64],
    n_states: usize,
    n_max: usize,
    tol: f64,
    trajectory: usize,
) -> Result<TrajectoryFit> {
    let pb = Problem { ks, ys: DVector::from_column_slice(ys) };
    let n_max = n_max.min(ks.len().saturating_sub(2) / 2);
    let mut best: Option<TrajectoryFit> = None;
    for n in 0..=n_max {
        let f = fit_fixed_n(&pb, n, n_states, trajectory);
        if f.residual < tol {
            return Ok(f);
        }
        if best.as_ref().is_none_or(|b| f.residual < b.residual) {
            best = Some(f);
        }
    }
    let b = best.unwrap();
    Err(Error::FitFailed { trajectory, n: b.n, residual: b.residual })
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-6 * x.abs().max(y.abs()).max(1.0)
}

pub fn fit_onsager_form(sweep: &Sweep, n_states: usize, tol: f64) -> Result<SpectrumFit> {
    let n_max = sweep.trajectories.len() / 2;
    let fits = sweep
        .trajectories
        .par_iter()
        .enumerate()
        .map(|(t, ys)| fit_trajectory(&sweep.samples, ys, n_states, n_max, tol, t))
        .collect::<Result<Vec<_>>>()?;

    let mut thetas: Vec<f64> = Vec::new();
    for f in &fits {
        for t in &f.thetas {
            if !thetas.iter().any(|u| close(*u, *t)) {
                thetas.push(*t);
            }
        }
    }
    thetas.sort_by(f64::total_cmp);
    let assignments: Vec<Vec<f64>> = fits
        .iter()
        .map(|f| {
            thetas
                .iter()
                .map(|u| f.thetas.iter().zip(&f.m).filter(|(t, _)| close(**t, *u)).map(|(_, m)| m).sum())
                .collect()
        })
        .collect();

    let mut components: Vec<FitComponent> = Vec::new();
    for f in &fits {
        let found = components.iter_mut().find(|c| {
            close(c.a, f.a)
                && close(c.b, f.b)
                && c.thetas.len() == f.thetas.len()
                && c.thetas.iter().zip(&f.thetas).all(|(x, y)| close(*x, *y))
        });
        match found {
            Some(c) => {
                c.trajectories.push(f.trajectory);
                c.assignments.push(f.m.clone());
            }
            None => components.push(FitComponent {
                a: f.a,
                b: f.b,
                thetas: f.thetas.clone(),
                trajectories: vec![f.trajectory],
                assignments: vec![f.m.clone()],
            }),
        }
    }

    let ms = || fits.iter().flat_map(|f| f.m.iter().copied());
    let all_spin_half = ms().all(|m| (m.abs() - 0.5).abs() < M_TOL);
    let half_integral = ms().all(|m| (2.0 * m - (2.0 * m).round()).abs() < M_TOL && (2.0 * m).round() != 0.0);
    let ground = &fits[0];
    Ok(SpectrumFit {
        a: ground.a,
        b: ground.b,
        n: fits.iter().map(|f| f.n).max().unwrap_or(0),
        residual: fits.iter().map(|f| f.residual).fold(0.0, f64::max),
        thetas,
        assignments,
        all_spin_half,
        half_integral,
        components,
        trajectories: fits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| 2.0 * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn recovers_synthetic_angles() {
        let ks = grid(21);
        let ys: Vec<f64> = ks.iter().map(|&k| 0.3 - 1.2 * k + 2.0 * radical(k, 1.1) - 2.0 * radical(k, 2.3)).collect();
        let f = fit_trajectory(&ks, &ys, 2, 4, 1e-9, 0).unwrap();
        assert_eq!(f.n, 2);
        assert!((f.thetas[0] - 1.1).abs() < 1e-7 && (f.thetas[1] - 2.3).abs() < 1e-7);
        assert!((f.m[0] - 0.5).abs() < 1e-7 && (f.m[1] + 0.5).abs() < 1e-7);
    }

    #[test]
    fn linear_trajectory_needs_no_angles() {
        let ks = grid(11);
        let ys: Vec<f64> = ks.iter().map(|&k| 2.0 - 3.0 * k).collect();
        let f = fit_trajectory(&ks, &ys, 3, 3, 1e-10, 0).unwrap();
        assert_eq!(f.n, 0);
        assert!((f.b + 3.0).abs() < 1e-10);
    }

    #[test]
    fn start_tuples() {
        assert_eq!(starts(1).len(), 48);
        assert_eq!(starts(2).len(), 24 * 23 / 2);
        assert!(starts(3).iter().all(|s| s[0] < s[1] && s[1] < s[2]));
    }
}
