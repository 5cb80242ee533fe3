//! The exact finite identity `Σ_{k≤N} e^{2πi a_k θ} = Σ_{n≤a_N} t_n e^{2πi n θ}`
//! for a subsequence (a_k) with indicator (t_n).
//!
//! Both sides run over the same unit-modulus terms, so any deviation is
//! floating reordering noise; the check evaluates the two routes
//! independently and reports the worst deviation over a prefix schedule.

use num_complex::Complex64;

use super::phase::PhaseEval;
use super::theta::Theta;
use super::ExpsumError;
use crate::arithseq::{subsequence_of, IndicatorSequence};
use crate::checkpoints;
use crate::sum::Kahan;

/// Max |LHS − RHS| over a geometric schedule of prefixes up to N.
pub fn finite_transfer_identity_check(
    ind: &IndicatorSequence,
    theta: &Theta,
    n: u64,
) -> Result<f64, ExpsumError> {
    let listing = subsequence_of(ind).map_err(|_| ExpsumError::DegenerateLowerDensity)?;
    checkpoints::validate(&[n], listing.len())?;
    let eval = PhaseEval::new(theta);
    let values = &listing.values()[..n as usize];

    let schedule = checkpoints::geometric_to(16.min(n), 2.0, n);
    let mut worst = 0.0f64;
    let (mut lre, mut lim) = (Kahan::default(), Kahan::default());
    let (mut rre, mut rim) = (Kahan::default(), Kahan::default());
    let mut k = 0usize; // listing terms consumed
    let mut m = 0u64; // integers consumed on the indicator side
    for &cp in &schedule {
        // LHS: Σ_{k ≤ cp} e(a_k θ), phases from the listing values
        while (k as u64) < cp {
            let u = eval.unit(values[k]);
            lre.add(u.re);
            lim.add(u.im);
            k += 1;
        }
        // RHS: Σ_{n ≤ a_cp} t_n e(nθ), phases from the integers themselves
        let a_cp = values[(cp - 1) as usize];
        while m < a_cp {
            m += 1;
            if ind.contains(m) {
                let u = eval.unit(m);
                rre.add(u.re);
                rim.add(u.im);
            }
        }
        let lhs = Complex64::new(lre.value(), lim.value());
        let rhs = Complex64::new(rre.value(), rim.value());
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}
