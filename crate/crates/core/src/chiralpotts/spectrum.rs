//! Spectra of `H(k')` along a sweep of `k'`, linked into continuous trajectories.

use nalgebra::SymmetricEigen;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PottsChain;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sweep {
    pub samples: Vec<f64>,
    /// Ascending eigenvalues at each sample.
    pub spectra: Vec<Vec<f64>>,
    /// `trajectories[t][i]` follows one eigenvalue across the samples.
    pub trajectories: Vec<Vec<f64>>,
}

/// Lagrange extrapolation through the last (up to three) points.
fn extrapolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let m = xs.len().min(3);
    let (xs, ys) = (&xs[xs.len() - m..], &ys[ys.len() - m..]);
    let mut acc = 0.0;
    for i in 0..m {
        let mut w = 1.0;
        for j in 0..m {
            if i != j {
                w *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        acc += w * ys[i];
    }
    acc
}

/// Assigns each new spectrum to trajectories by sorting the extrapolated predictions,
/// so a crossing predicted by the local trend is followed rather than reflected.
fn link(samples: &[f64], spectra: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let Some(first) = spectra.first() else {
        return Vec::new();
    };
    let mut traj: Vec<Vec<f64>> = first.iter().map(|&e| vec![e]).collect();
    for i in 1..spectra.len() {
        let pred: Vec<f64> = traj.iter().map(|t| extrapolate(&samples[..i], t, samples[i])).collect();
        let mut order: Vec<usize> = (0..traj.len()).collect();
        order.sort_by(|&a, &b| pred[a].total_cmp(&pred[b]));
        for (rank, &t) in order.iter().enumerate() {
            traj[t].push(spectra[i][rank]);
        }
    }
    traj
}

pub fn spectrum_sweep(chain: &PottsChain, samples: &[f64]) -> Sweep {
    let spectra: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|&k| {
            let mut ev: Vec<f64> = SymmetricEigen::new(chain.hamiltonian(k)).eigenvalues.iter().copied().collect();
            ev.sort_by(f64::total_cmp);
            ev
        })
        .collect();
    let trajectories = link(samples, &spectra);
    Sweep { samples: samples.to_vec(), spectra, trajectories }
}
