//! Weighted orbit series for linear-disjointness experiments.

use crate::checkpoints;
use crate::dynsys::{observe, Flow, FlowPoint, Observable};
use crate::sum;

use super::average::AverageSeries;
use super::ErgodicError;

/// `S_{N_j} = (1/N_j) Σ_{n≤N_j} c_n φ(f^n x)` at each checkpoint.
///
/// Weights are ±1 (or −1/0/1 for Möbius-style weights), indexed by n.
/// The orbit runs along ℕ itself: the n-th term visits f^n x.
pub fn linear_disjointness_series(
    c_values: &[f64],
    flow: &Flow,
    obs: &Observable,
    x: &FlowPoint,
    cps: &[u64],
    label: impl Into<String>,
) -> Result<AverageSeries, ErgodicError> {
    checkpoints::validate(cps, c_values.len() as u64)?;
    observe(flow, obs, x)?;
    let x = *x;
    let sums = sum::partial_sums(cps, |n| {
        let fx = flow.iterate(&x, n).expect("validated");
        let phi = crate::dynsys::observe_term(flow, obs, &fx);
        num_complex::Complex64::new(c_values[(n - 1) as usize] * phi, 0.0)
    });
    Ok(AverageSeries {
        flow_label: flow.to_string(),
        observable_label: obs.to_string(),
        sequence_label: label.into(),
        start_label: format!("{x:?}"),
        checkpoints: sums
            .into_iter()
            .map(|(n, s)| (n, s.re / n as f64))
            .collect(),
    })
}
