//! Checkpointed time averages and convergence reports.

use crate::arithseq::IndicatorSequence;
use crate::checkpoints;
use crate::dynsys::{observe, Flow, FlowPoint, Observable};
use crate::sum;

use super::ErgodicError;

/// A real-valued average series with its experiment labels.
#[derive(Debug, Clone)]
pub struct AverageSeries {
    pub flow_label: String,
    pub observable_label: String,
    pub sequence_label: String,
    pub start_label: String,
    /// (N, S_N) with N strictly increasing; |S_N| ≤ max|φ| ≤ 1.
    pub checkpoints: Vec<(u64, f64)>,
}

impl AverageSeries {
    pub fn final_value(&self) -> f64 {
        self.checkpoints.last().map(|&(_, v)| v).unwrap_or(0.0)
    }
}

fn orbit_term<'a>(
    flow: &'a Flow,
    obs: &'a Observable,
    x: &FlowPoint,
    a_values: &'a [u64],
) -> Result<impl Fn(u64) -> f64 + Sync + 'a, ErgodicError> {
    // validate once; the hot path then runs unchecked
    observe(flow, obs, x)?;
    let x = *x;
    Ok(move |n: u64| {
        let a = a_values[(n - 1) as usize];
        let fx = flow.iterate(&x, a).expect("validated");
        crate::dynsys::observe_term(flow, obs, &fx)
    })
}

/// `S_{N_j} = (1/N_j) Σ_{n≤N_j} φ(f^{a_n} x)` at each checkpoint.
pub fn time_average_series(
    flow: &Flow,
    obs: &Observable,
    x: &FlowPoint,
    a_values: &[u64],
    cps: &[u64],
) -> Result<AverageSeries, ErgodicError> {
    checkpoints::validate(cps, a_values.len() as u64)?;
    let term = orbit_term(flow, obs, x, a_values)?;
    let sums = sum::partial_sums(cps, |n| num_complex::Complex64::new(term(n), 0.0));
    Ok(AverageSeries {
        flow_label: flow.to_string(),
        observable_label: obs.to_string(),
        sequence_label: String::new(),
        start_label: format!("{x:?}"),
        checkpoints: sums
            .into_iter()
            .map(|(n, s)| (n, s.re / n as f64))
            .collect(),
    })
}

/// One checkpoint of a masked average.
#[derive(Debug, Clone, Copy)]
pub struct MaskedPoint {
    pub n: u64,
    /// (1/N) Σ_{n≤N, n∈mask} φ(f^{a_n} x) — normalized by N.
    pub value: f64,
    /// #{n ≤ N : n ∈ mask}.
    pub mask_count: u64,
}

impl MaskedPoint {
    /// The conditional average: the same sum divided by the mask count
    /// instead of N. Zero when the mask is empty so far.
    pub fn conditional_value(&self) -> f64 {
        if self.mask_count == 0 {
            0.0
        } else {
            self.value * self.n as f64 / self.mask_count as f64
        }
    }
}

/// A masked average series; same labels as [`AverageSeries`].
#[derive(Debug, Clone)]
pub struct MaskedAverageSeries {
    pub flow_label: String,
    pub observable_label: String,
    pub sequence_label: String,
    pub start_label: String,
    pub mask_label: String,
    pub checkpoints: Vec<MaskedPoint>,
}

impl MaskedAverageSeries {
    pub fn final_value(&self) -> f64 {
        self.checkpoints.last().map(|p| p.value).unwrap_or(0.0)
    }
}

/// `(1/N_j) Σ_{n≤N_j, n∈mask} φ(f^{a_n} x)` at each checkpoint.
///
/// Terms outside the mask contribute an exact zero, so the all-ones mask
/// reproduces [`time_average_series`] bit for bit.
pub fn masked_time_average_series(
    flow: &Flow,
    obs: &Observable,
    x: &FlowPoint,
    a_values: &[u64],
    mask: &IndicatorSequence,
    cps: &[u64],
) -> Result<MaskedAverageSeries, ErgodicError> {
    checkpoints::validate(cps, a_values.len() as u64)?;
    let needed = *cps.last().unwrap();
    if mask.max_n() < needed {
        return Err(ErgodicError::MaskTooShort {
            max_n: mask.max_n(),
            needed,
        });
    }
    let term = orbit_term(flow, obs, x, a_values)?;
    let sums = sum::partial_sums(cps, |n| {
        if mask.contains(n) {
            num_complex::Complex64::new(term(n), 0.0)
        } else {
            num_complex::Complex64::new(0.0, 0.0)
        }
    });
    // mask counts are cheap to track separately and exactly
    let mut counts = Vec::with_capacity(cps.len());
    let mut count = 0u64;
    let mut prev = 0u64;
    for &n in cps {
        for k in prev + 1..=n {
            if mask.contains(k) {
                count += 1;
            }
        }
        counts.push(count);
        prev = n;
    }
    Ok(MaskedAverageSeries {
        flow_label: flow.to_string(),
        observable_label: obs.to_string(),
        sequence_label: String::new(),
        start_label: format!("{x:?}"),
        mask_label: mask.name().to_string(),
        checkpoints: sums
            .into_iter()
            .zip(counts)
            .map(|((n, s), mask_count)| MaskedPoint {
                n,
                value: s.re / n as f64,
                mask_count,
            })
            .collect(),
    })
}

/// Residuals of a series against a target value.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub target: f64,
    /// (N, |S_N − target|).
    pub residuals: Vec<(u64, f64)>,
    pub final_residual: f64,
    /// Final residual strictly below the first.
    pub monotone_improvement: bool,
}

/// Residual series |S_N − target| with an improvement flag.
pub fn convergence_report(series: &[(u64, f64)], target: f64) -> ConvergenceReport {
    assert!(!series.is_empty(), "empty series");
    let residuals: Vec<(u64, f64)> = series
        .iter()
        .map(|&(n, v)| (n, (v - target).abs()))
        .collect();
    let final_residual = residuals.last().unwrap().1;
    let monotone_improvement = final_residual < residuals[0].1;
    ConvergenceReport {
        target,
        residuals,
        final_residual,
        monotone_improvement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithseq::{build_sieve_tables, sequence_values, IndicatorName, SequenceSpec};
    use crate::dynsys::{FlowSpec, HarmonicPart, Side};
    use crate::expsum::{residue_densities, Theta};

    #[test]
    fn cyclic_average_along_big_omega_tends_to_half() {
        let n = 1_000_000u64;
        let t = build_sieve_tables(n).unwrap();
        let omega = sequence_values(&SequenceSpec::BigOmega, n, &t).unwrap();
        let flow = Flow::new(FlowSpec::Cyclic { q: 2 }).unwrap();
        let obs = Observable::StateIndicator { r: 0 };
        let s =
            time_average_series(&flow, &obs, &FlowPoint::State(0), &omega, &[10_000, n]).unwrap();
        assert!((s.final_value() - 0.5).abs() < 0.005);
    }

    #[test]
    fn cyclic_average_equals_residue_density_exactly() {
        // the two computations are the same count — equality is bitwise
        let n = 200_000u64;
        let t = build_sieve_tables(n).unwrap();
        let omega = sequence_values(&SequenceSpec::BigOmega, n, &t).unwrap();
        let q = 4u64;
        let flow = Flow::new(FlowSpec::Cyclic { q }).unwrap();
        let cps = crate::checkpoints::geometric_to(100, 10f64.sqrt(), n);
        let dens = residue_densities(&omega, q, &cps).unwrap();
        for r in 0..q {
            let obs = Observable::StateIndicator { r };
            let s = time_average_series(&flow, &obs, &FlowPoint::State(0), &omega, &cps).unwrap();
            for (point, report) in s.checkpoints.iter().zip(&dens) {
                assert_eq!(point.1.to_bits(), report.densities[r as usize].to_bits());
            }
        }
    }

    #[test]
    fn odometer_cylinder_along_big_omega() {
        let n = 1_000_000u64;
        let t = build_sieve_tables(n).unwrap();
        let omega = sequence_values(&SequenceSpec::BigOmega, n, &t).unwrap();
        let flow = Flow::new(FlowSpec::Odometer { depth: 48 }).unwrap();
        let obs = Observable::Cylinder { word: 0, depth: 1 };
        let s = time_average_series(&flow, &obs, &FlowPoint::Word(0), &omega, &[n]).unwrap();
        assert!((s.final_value() - 0.5).abs() < 0.005);
    }

    #[test]
    fn odometer_cylinder_average_equals_residue_density_exactly() {
        // cylinder of depth k along a ≡ residue density of a mod 2^k
        let n = 100_000u64;
        let t = build_sieve_tables(n).unwrap();
        let omega = sequence_values(&SequenceSpec::BigOmega, n, &t).unwrap();
        let k = 3u32;
        let flow = Flow::new(FlowSpec::Odometer { depth: 48 }).unwrap();
        let cps = [1000, n];
        let dens = residue_densities(&omega, 1 << k, &cps).unwrap();
        for r in 0..(1u64 << k) {
            let obs = Observable::Cylinder { word: r, depth: k };
            let s = time_average_series(&flow, &obs, &FlowPoint::Word(0), &omega, &cps).unwrap();
            for (point, report) in s.checkpoints.iter().zip(&dens) {
                assert_eq!(point.1.to_bits(), report.densities[r as usize].to_bits());
            }
        }
    }

    #[test]
    fn rotation_harmonic_along_identity_matches_geometric_bound() {
        let n = 100_000u64;
        let t = build_sieve_tables(100).unwrap();
        let id = sequence_values(&SequenceSpec::Identity, n, &t).unwrap();
        let flow = Flow::new(FlowSpec::Rotation {
            rho: Theta::golden(),
        })
        .unwrap();
        let obs = Observable::Harmonic {
            h: 1,
            part: HarmonicPart::Re,
        };
        let s = time_average_series(&flow, &obs, &FlowPoint::Angle(0), &id, &[n]).unwrap();
        let theta = Theta::golden().as_f64();
        let bound = 1.0 / (n as f64 * (std::f64::consts::PI * theta).sin());
        assert!(s.final_value().abs() <= bound + 1e-12);
        assert!(s.final_value().abs() < 1e-4);
    }

    #[test]
    fn all_values_bounded_by_sup_norm() {
        let n = 100_000u64;
        let t = build_sieve_tables(n).unwrap();
        let omega = sequence_values(&SequenceSpec::BigOmega, n, &t).unwrap();
        let flow = Flow::new(FlowSpec::Rotation {
            rho: Theta::golden(),
        })
        .unwrap();
        let obs = Observable::Harmonic {
            h: 2,
            part: HarmonicPart::Im,
        };
        let cps = crate::checkpoints::geometric_to(10, 2.0, n);
        let s = time_average_series(&flow, &obs, &FlowPoint::Angle(0), &omega, &cps).unwrap();
        for &(_, v) in &s.checkpoints {
            assert!(v.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn all_ones_mask_reproduces_unmasked_bitwise() {
        let n = 100_000u64;
        let t = build_sieve_tables(n).unwrap();
        let omega = sequence_values(&SequenceSpec::BigOmega, n, &t).unwrap();
        let flow = Flow::new(FlowSpec::Cyclic { q: 3 }).unwrap();
        let obs = Observable::StateIndicator { r: 1 };
        let mask = IndicatorSequence::all_ones(n);
        let cps = [100, 10_000, n];
        let plain = time_average_series(&flow, &obs, &FlowPoint::State(0), &omega, &cps).unwrap();
        let masked =
            masked_time_average_series(&flow, &obs, &FlowPoint::State(0), &omega, &mask, &cps)
                .unwrap();
        for (a, b) in plain.checkpoints.iter().zip(&masked.checkpoints) {
            assert_eq!(a.1.to_bits(), b.value.to_bits());
        }
    }

    #[test]
    fn empty_mask_gives_zero_everywhere() {
        let n = 1000u64;
        let t = build_sieve_tables(n).unwrap();
        let id = sequence_values(&SequenceSpec::Identity, n, &t).unwrap();
        let flow = Flow::new(FlowSpec::Cyclic { q: 2 }).unwrap();
        let obs = Observable::StateIndicator { r: 0 };
        let mask = IndicatorSequence::empty(n);
        let s = masked_time_average_series(&flow, &obs, &FlowPoint::State(0), &id, &mask, &[10, n])
            .unwrap();
        for p in &s.checkpoints {
            assert_eq!(p.value, 0.0);
            assert_eq!(p.mask_count, 0);
            assert_eq!(p.conditional_value(), 0.0);
        }
    }

    #[test]
    fn masked_small_omega_average_on_squarefree() {
        // (1/N) Σ_{n∈SF} [ω(n) even] → (6/π²)·(1/2)
        let n = 1_000_000u64;
        let t = build_sieve_tables(n).unwrap();
        let w = sequence_values(&SequenceSpec::SmallOmega, n, &t).unwrap();
        let mask = IndicatorSequence::named(IndicatorName::Sf, &t);
        let flow = Flow::new(FlowSpec::Cyclic { q: 2 }).unwrap();
        let obs = Observable::StateIndicator { r: 0 };
        let s =
            masked_time_average_series(&flow, &obs, &FlowPoint::State(0), &w, &mask, &[n]).unwrap();
        let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI) / 2.0;
        assert!(
            (s.final_value() - target).abs() < 0.01,
            "{}",
            s.final_value()
        );
        // conditional value re-normalizes by the mask count: ≈ 1/2
        let cond = s.checkpoints.last().unwrap().conditional_value();
        assert!((cond - 0.5).abs() < 0.01);
    }

    #[test]
    fn denjoy_composed_harmonic_converges_to_the_quadrature() {
        let n = 100_000u64;
        let t = build_sieve_tables(100).unwrap();
        let id = sequence_values(&SequenceSpec::Identity, n, &t).unwrap();
        let flow = Flow::new(FlowSpec::Denjoy {
            rho: Theta::golden(),
            gap_ratio: 0.5,
            truncation: 64,
        })
        .unwrap();
        let obs = Observable::ComposedHarmonic {
            h: 1,
            part: HarmonicPart::Re,
        };
        let x = FlowPoint::Denjoy {
            y: 0,
            side: Side::Left,
        };
        let s = time_average_series(&flow, &obs, &x, &id, &[10_000, n]).unwrap();
        let target = crate::dynsys::space_average(&flow, &obs).unwrap();
        assert!(
            (s.final_value() - target).abs() < 0.05,
            "S_N = {}, ∫φdν = {target}",
            s.final_value()
        );
    }

    #[test]
    fn convergence_report_flags() {
        let constant = vec![(10u64, 0.5), (100, 0.5), (1000, 0.5)];
        let r = convergence_report(&constant, 0.5);
        assert!(r.residuals.iter().all(|&(_, d)| d == 0.0));
        assert_eq!(r.final_residual, 0.0);

        let diverging = vec![(10u64, 0.4), (100, 0.4), (1000, 0.4)];
        let r = convergence_report(&diverging, 0.5);
        assert!(!r.monotone_improvement);

        let improving = vec![(10u64, 0.3), (100, 0.45), (1000, 0.49)];
        let r = convergence_report(&improving, 0.5);
        assert!(r.monotone_improvement);
        assert!((r.final_residual - 0.01).abs() < 1e-15);
    }

    #[test]
    fn liouville_mean_series_converges_to_zero() {
        let n = 1_000_000u64;
        let t = build_sieve_tables(n).unwrap();
        let rows = crate::expsum::number_theory_panel(&t, &[10_000, n]).unwrap();
        let series: Vec<(u64, f64)> = rows.iter().map(|r| (r.n, r.liouville_mean)).collect();
        let report = convergence_report(&series, 0.0);
        assert!(report.final_residual < 0.002);
    }
}
