//! Time averages of observables along arithmetic sequences.
//!
//! `S_{N} = (1/N) Σ_{n≤N} φ(f^{a_n} x)`, its square-free-masked variant
//! (normalized by N, not by the mask count), convergence reports against a
//! target, and weighted series `(1/N) Σ c_n φ(f^n x)` for the
//! linear-disjointness experiments.

mod average;
mod disjoint;

pub use average::{
    convergence_report, masked_time_average_series, time_average_series, AverageSeries,
    ConvergenceReport, MaskedAverageSeries, MaskedPoint,
};
pub use disjoint::linear_disjointness_series;

/// Errors from average evaluation.
#[derive(Debug, thiserror::Error)]
pub enum ErgodicError {
    #[error(transparent)]
    Checkpoints(#[from] crate::checkpoints::InvalidCheckpoints),
    #[error(transparent)]
    Dyn(#[from] crate::dynsys::DynError),
    #[error("mask covers [1, {max_n}] but checkpoints reach {needed}")]
    MaskTooShort { max_n: u64, needed: u64 },
}
