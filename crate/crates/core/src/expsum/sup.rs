//! Sup-profiles of ±1-weighted exponential sums over a θ grid.

use rayon::prelude::*;

use super::phase::PhaseEval;
use super::theta::Theta;
use super::ExpsumError;
use crate::checkpoints;
use crate::sum;

/// Default Farey order of the grid.
pub const DEFAULT_FAREY_ORDER: u64 = 32;
/// Default number of equally spaced fixed-point offsets.
pub const DEFAULT_OFFSETS: u32 = 256;

/// All reduced fractions p/q with q ≤ order, 0 ≤ p/q < 1, ascending.
pub fn farey_fractions(order: u64) -> Vec<Theta> {
    let mut grid = vec![Theta::zero()];
    for q in 2..=order {
        for p in 1..q {
            if num_integer::gcd(p, q) == 1 {
                grid.push(Theta::Rational { p, q });
            }
        }
    }
    grid.sort_by(|a, b| a.as_f64().total_cmp(&b.as_f64()));
    grid
}

/// The default grid: Farey fractions of the given order plus `offsets`
/// equally spaced points shifted by golden/2, which keeps the irrational
/// part of the grid away from low-order rational resonances.
pub fn default_theta_grid(farey_order: u64, offsets: u32) -> Vec<Theta> {
    let mut grid = farey_fractions(farey_order);
    let Theta::Fixed(golden) = Theta::golden() else {
        unreachable!()
    };
    let shift = golden >> 1;
    let step = (u128::MAX / offsets as u128).wrapping_add(1); // ≈ 2^128/offsets
    for j in 0..offsets {
        // j/offsets + golden/2 mod 1, in fixed point
        grid.push(Theta::Fixed(
            (j as u128).wrapping_mul(step).wrapping_add(shift),
        ));
    }
    grid
}

/// One checkpoint of a sup-profile.
#[derive(Debug, Clone, Copy)]
pub struct SupPoint {
    pub n: u64,
    /// max over the grid of |Σ_{k≤n} c_k e^{2πi k θ}| (unnormalized).
    pub sup: f64,
    pub argmax: Theta,
}

/// Sup over the grid of the weighted exponential sum at each checkpoint.
///
/// Weights are ±1 and indexed by the integer k (weights[k-1] is c_k).
pub fn sup_profile_series(
    weights: &[i8],
    grid: &[Theta],
    cps: &[u64],
) -> Result<Vec<SupPoint>, ExpsumError> {
    checkpoints::validate(cps, weights.len() as u64)?;
    assert!(!grid.is_empty(), "empty θ grid");
    debug_assert!(weights.iter().all(|&c| c == 1 || c == -1));

    // per θ: |partial sum| at every checkpoint
    let per_theta: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|theta| {
            let eval = PhaseEval::new(theta);
            sum::partial_sums(cps, |k| eval.unit(k) * weights[(k - 1) as usize] as f64)
                .into_iter()
                .map(|(_, s)| s.norm())
                .collect()
        })
        .collect();

    Ok(cps
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let mut best = 0usize;
            for (i, series) in per_theta.iter().enumerate() {
                if series[j] > per_theta[best][j] {
                    best = i;
                }
            }
            SupPoint {
                n,
                sup: per_theta[best][j],
                argmax: grid[best],
            }
        })
        .collect())
}

/// Sup over the grid at a single length N.
pub fn sup_profile(weights: &[i8], grid: &[Theta], n: u64) -> Result<SupPoint, ExpsumError> {
    Ok(sup_profile_series(weights, grid, &[n])?[0])
}
