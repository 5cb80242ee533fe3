//! Exponential sums and uniform-distribution tests.
//!
//! The central object is the averaged Weyl sum `(1/N) Σ_{n≤N} e^{2πi a_n θ}`
//! over a sequence (a_n): it vanishes for all θ exactly when the sequence is
//! uniformly behaved, for rational θ when it is uniformly distributed in ℤ,
//! and for irrational θ when it is rotationally distributed. The module also
//! provides the quantitative companions: star discrepancy, residue and
//! natural densities, square-free-restricted sums, sup-profiles over θ
//! grids with log-log rate fits, and the exact finite identity that
//! transfers sums along a subsequence to weighted sums over ℕ.

mod density;
mod discrepancy;
mod panel;
mod phase;
mod ratefit;
mod rdtest;
mod sup;
mod theta;
mod transfer;
mod weyl;

pub use density::{
    a_density, densities, prop_dad_check, residue_densities, DadReport, DensityReport,
    DensitySeries, DAD_SLACK,
};
pub use discrepancy::discrepancy_star;
pub use panel::{number_theory_panel, PanelRow};
pub use phase::PhaseEval;
pub use ratefit::{rate_fit, RateFit};
pub use rdtest::{rd_test, RdReport, DEFAULT_H_MAX};
pub use sup::{
    default_theta_grid, farey_fractions, sup_profile, sup_profile_series, SupPoint,
    DEFAULT_FAREY_ORDER, DEFAULT_OFFSETS,
};
pub use theta::{Theta, ThetaError};
pub use transfer::finite_transfer_identity_check;
pub use weyl::{restricted_weyl_series, weyl_series, WeylSeries};

/// Errors from distribution-test evaluation.
#[derive(Debug, thiserror::Error)]
pub enum ExpsumError {
    #[error(transparent)]
    Checkpoints(#[from] crate::checkpoints::InvalidCheckpoints),
    #[error("operation requires an irrational (fixed-point) θ, got rational {0}")]
    RationalTheta(String),
    #[error("sequence value {value} exceeds indicator range {max_n}")]
    RangeOverflow { value: u64, max_n: u64 },
    #[error("lower density estimate of the subsequence is zero")]
    DegenerateLowerDensity,
    #[error("rate fit needs at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("rate fit requires positive values, got {0}")]
    NonPositiveValue(f64),
    #[error("modulus must be ≥ 2, got {0}")]
    BadModulus(u64),
}
