//! Averaged Weyl sums along a sequence, plain and square-free-restricted.

use num_complex::Complex64;

use super::phase::PhaseEval;
use super::theta::Theta;
use super::ExpsumError;
use crate::arithseq::IndicatorSequence;
use crate::checkpoints;
use crate::sum;

/// Checkpointed values of `(1/N) Σ_{n≤N} e^{2πi a_n θ}`.
#[derive(Debug, Clone)]
pub struct WeylSeries {
    pub theta: Theta,
    pub sequence_label: String,
    /// (N, averaged sum) with N strictly increasing; |value| ≤ 1 throughout.
    pub checkpoints: Vec<(u64, Complex64)>,
}

impl WeylSeries {
    pub fn final_value(&self) -> Complex64 {
        self.checkpoints.last().map(|&(_, v)| v).unwrap_or_default()
    }

    pub fn final_abs(&self) -> f64 {
        self.final_value().norm()
    }
}

/// `(1/N_j) Σ_{n≤N_j} e^{2πi a_n θ}` at each checkpoint.
pub fn weyl_series(
    values: &[u64],
    theta: &Theta,
    cps: &[u64],
    label: impl Into<String>,
) -> Result<WeylSeries, ExpsumError> {
    checkpoints::validate(cps, values.len() as u64)?;
    let eval = PhaseEval::new(theta);
    let sums = sum::partial_sums(cps, |n| eval.unit(values[(n - 1) as usize]));
    Ok(WeylSeries {
        theta: *theta,
        sequence_label: label.into(),
        checkpoints: sums.into_iter().map(|(n, s)| (n, s / n as f64)).collect(),
    })
}

/// `(1/N_j) Σ_{n≤N_j, n∈mask} e^{2πi a_n θ}` at each checkpoint.
///
/// Normalization is by N, not by the mask count; excluded terms contribute
/// an exact zero, so the all-ones mask reproduces `weyl_series` bit for bit.
pub fn restricted_weyl_series(
    values: &[u64],
    mask: &IndicatorSequence,
    theta: &Theta,
    cps: &[u64],
    label: impl Into<String>,
) -> Result<WeylSeries, ExpsumError> {
    checkpoints::validate(cps, values.len() as u64)?;
    let last = *cps.last().unwrap();
    if last > mask.max_n() {
        return Err(ExpsumError::RangeOverflow {
            value: last,
            max_n: mask.max_n(),
        });
    }
    let eval = PhaseEval::new(theta);
    let sums = sum::partial_sums(cps, |n| {
        if mask.contains(n) {
            eval.unit(values[(n - 1) as usize])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(WeylSeries {
        theta: *theta,
        sequence_label: label.into(),
        checkpoints: sums.into_iter().map(|(n, s)| (n, s / n as f64)).collect(),
    })
}
