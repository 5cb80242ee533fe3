//! Rotational-distribution test: is (a_n θ) uniformly distributed mod 1?

use super::discrepancy::discrepancy_star;
use super::phase::PhaseEval;
use super::theta::Theta;
use super::ExpsumError;
use crate::sum;

/// Per-θ evidence for `(a_n θ)` being u.d. mod 1.
#[derive(Debug, Clone)]
pub struct RdReport {
    pub theta: Theta,
    /// |(1/N) Σ e^{2πi h a_n θ}| for h = 1..=h_max.
    pub weyl_abs: Vec<f64>,
    /// Star discrepancy of {frac(a_n θ)}.
    pub dstar: f64,
    /// All Weyl moduli below the tolerance.
    pub pass: bool,
}

pub const DEFAULT_H_MAX: u32 = 3;

/// Evaluates the Weyl criterion (h = 1..=h_max) and D*_N of frac(a_n θ) for
/// each irrational (fixed-point) θ. Rational θ is rejected.
pub fn rd_test(
    values: &[u64],
    thetas: &[Theta],
    n: u64,
    h_max: u32,
    tolerance: f64,
) -> Result<Vec<RdReport>, ExpsumError> {
    crate::checkpoints::validate(&[n], values.len() as u64)?;
    let mut reports = Vec::with_capacity(thetas.len());
    for theta in thetas {
        let Theta::Fixed(frac) = *theta else {
            return Err(ExpsumError::RationalTheta(theta.to_string()));
        };
        let mut weyl_abs = Vec::with_capacity(h_max as usize);
        for h in 1..=h_max {
            // frac(h·a·θ) = a · (hθ mod 1) mod 1 — reuse the phase machinery
            // with the harmonic folded into θ.
            let theta_h = Theta::Fixed(frac.wrapping_mul(h as u128));
            let eval = PhaseEval::new(&theta_h);
            let total = sum::sum_range(1, n, |k| eval.unit(values[(k - 1) as usize]));
            weyl_abs.push(total.norm() / n as f64);
        }
        let eval = PhaseEval::new(theta);
        let points: Vec<f64> = (1..=n)
            .map(|k| eval.frac_multiple(values[(k - 1) as usize]))
            .collect();
        let dstar = discrepancy_star(&points);
        let pass = weyl_abs.iter().all(|&v| v < tolerance);
        reports.push(RdReport {
            theta: *theta,
            weyl_abs,
            dstar,
            pass,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithseq::{build_sieve_tables, subsequence_of, IndicatorName, IndicatorSequence};

    #[test]
    fn identity_along_golden_passes() {
        let values: Vec<u64> = (1..=100_000).collect();
        let reports = rd_test(&values, &[Theta::golden()], 100_000, 3, 0.01).unwrap();
        assert!(reports[0].pass, "weyl_abs = {:?}", reports[0].weyl_abs);
        assert!(reports[0].dstar < 0.001);
    }

    #[test]
    fn squarefree_listing_along_golden() {
        let n = 1_000_000u64;
        let t = build_sieve_tables(2 * n).unwrap();
        let sf = subsequence_of(&IndicatorSequence::named(IndicatorName::Sf, &t)).unwrap();
        assert!(sf.len() >= n);
        let reports = rd_test(&sf.values()[..n as usize], &[Theta::golden()], n, 1, 0.05).unwrap();
        assert!(reports[0].weyl_abs[0] < 0.05);
    }

    #[test]
    fn rational_theta_is_rejected() {
        let values: Vec<u64> = (1..=10).map(|k| 2 * k).collect();
        let err = rd_test(&values, &[Theta::rational(1, 2).unwrap()], 10, 3, 0.1);
        assert!(matches!(err, Err(ExpsumError::RationalTheta(_))));
    }
}
