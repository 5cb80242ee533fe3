//! Mean-stability probes along an arithmetic sequence.
//!
//! Each probe samples pairs (x, y) with d(x, y) < δ — x uniform for the
//! flow's natural measure, y a perturbation of x — and follows both orbits
//! through f^{a_n}. The mean-Lyapunov probe reports the worst per-pair
//! density of indices with d(f^{a_n}x, f^{a_n}y) ≥ ε; the
//! mean-equicontinuity probe reports the worst per-pair Cesàro average of
//! the orbit distances. These are finite-N proxies: the exceptional set is
//! measured per pair, which is the weaker of the two readings the
//! definition admits.

use rayon::prelude::*;

use crate::fixed;
use crate::rng::SplitMix64;
use crate::sum::{sum_range_f64, Kahan};

use super::flow::{word_mask, Flow, FlowPoint, FlowSpec, Side};
use super::DynError;

/// Worst-case pair statistics from a stability probe.
#[derive(Debug, Clone, Copy)]
pub struct ProbeReport {
    pub delta: f64,
    /// Closeness threshold for the exceptional count; infinite for the
    /// mean-equicontinuity probe, which has none.
    pub epsilon: f64,
    pub pairs_tested: u64,
    /// max over pairs of #{n ≤ N : d(f^{a_n}x, f^{a_n}y) ≥ ε} / N.
    pub worst_exceptional_density: f64,
    /// max over pairs of (1/N) Σ_{n≤N} d(f^{a_n}x, f^{a_n}y).
    pub worst_mean_distance: f64,
}

fn uniform_point(flow: &Flow, rng: &mut SplitMix64) -> FlowPoint {
    match flow.spec() {
        FlowSpec::Rotation { .. } => FlowPoint::Angle(rng.next_u128()),
        FlowSpec::Cyclic { q } => FlowPoint::State(rng.next_u64() % q),
        FlowSpec::Odometer { depth } => FlowPoint::Word(rng.next_u64() & word_mask(*depth)),
        FlowSpec::Denjoy { .. } => FlowPoint::Denjoy {
            y: rng.next_u128(),
            side: if rng.next_u64() & 1 == 0 {
                Side::Left
            } else {
                Side::Right
            },
        },
    }
}

/// A companion point within δ of x, in the flow's own metric.
fn perturb_within(flow: &Flow, x: &FlowPoint, delta: f64, rng: &mut SplitMix64) -> FlowPoint {
    match (flow.spec(), *x) {
        (FlowSpec::Rotation { .. }, FlowPoint::Angle(a)) => {
            // offset uniform in [0, δ), either direction
            let mag = fixed::mul_frac(rng.next_u128(), fixed::from_f64(delta));
            let b = if rng.next_u64() & 1 == 0 {
                a.wrapping_add(mag)
            } else {
                a.wrapping_sub(mag)
            };
            FlowPoint::Angle(b)
        }
        // δ < 1: the only point within δ in the discrete metric is x itself
        (FlowSpec::Cyclic { .. }, p @ FlowPoint::State(_)) => p,
        (FlowSpec::Odometer { depth }, FlowPoint::Word(w)) => {
            // share the first k digits with 2^{-k} < δ, randomize the rest
            let k = (-delta.log2()).floor() as u32 + 1;
            if k >= *depth {
                return FlowPoint::Word(w);
            }
            let keep = word_mask(k);
            FlowPoint::Word((w & keep) | (rng.next_u64() & word_mask(*depth) & !keep))
        }
        (FlowSpec::Denjoy { .. }, FlowPoint::Denjoy { y, side }) => {
            // shrink a base offset until the embedded distance clears δ;
            // only finitely many gaps exist, so halving terminates
            let mut off = fixed::mul_frac(rng.next_u128(), fixed::from_f64(delta));
            let negative = rng.next_u64() & 1 == 0;
            loop {
                let y2 = if negative {
                    y.wrapping_sub(off)
                } else {
                    y.wrapping_add(off)
                };
                let candidate = FlowPoint::Denjoy { y: y2, side };
                if flow.metric(x, &candidate).expect("same kind") < delta {
                    return candidate;
                }
                off >>= 1;
            }
        }
        _ => unreachable!("point drawn from the same flow"),
    }
}

struct PairStats {
    exceptional_density: f64,
    mean_distance: f64,
}

fn run_pairs(
    flow: &Flow,
    a_values: &[u64],
    delta: f64,
    epsilon: f64,
    pairs: u64,
    n: u64,
    seed: u64,
) -> Result<ProbeReport, DynError> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(DynError::BadDelta(delta));
    }
    assert!(pairs >= 1, "need at least one pair");
    assert!(
        n as usize <= a_values.len(),
        "probe horizon beyond sequence length"
    );
    let mut root = SplitMix64::new(seed);
    let pair_seeds: Vec<u64> = (0..pairs).map(|_| root.fork_seed()).collect();

    let stats: Vec<PairStats> = pair_seeds
        .par_iter()
        .map(|&pair_seed| {
            let mut rng = SplitMix64::new(pair_seed);
            let x = uniform_point(flow, &mut rng);
            let y = perturb_within(flow, &x, delta, &mut rng);
            let mut exceptional = 0u64;
            let mut mean = Kahan::default();
            for &a in &a_values[..n as usize] {
                let fx = flow.iterate(&x, a).expect("kind checked");
                let fy = flow.iterate(&y, a).expect("kind checked");
                let d = flow.metric(&fx, &fy).expect("kind checked");
                if d >= epsilon {
                    exceptional += 1;
                }
                mean.add(d);
            }
            PairStats {
                exceptional_density: exceptional as f64 / n as f64,
                mean_distance: mean.value() / n as f64,
            }
        })
        .collect();

    let mut report = ProbeReport {
        delta,
        epsilon,
        pairs_tested: pairs,
        worst_exceptional_density: 0.0,
        worst_mean_distance: 0.0,
    };
    for s in stats {
        report.worst_exceptional_density =
            report.worst_exceptional_density.max(s.exceptional_density);
        report.worst_mean_distance = report.worst_mean_distance.max(s.mean_distance);
    }
    Ok(report)
}

/// Mean-Lyapunov-stability probe: exceptional index density per pair.
pub fn mls_probe(
    flow: &Flow,
    a_values: &[u64],
    delta: f64,
    epsilon: f64,
    pairs: u64,
    n: u64,
    seed: u64,
) -> Result<ProbeReport, DynError> {
    run_pairs(flow, a_values, delta, epsilon, pairs, n, seed)
}

/// Mean-equicontinuity probe: Cesàro average of orbit distances per pair.
pub fn meq_probe(
    flow: &Flow,
    a_values: &[u64],
    delta: f64,
    pairs: u64,
    n: u64,
    seed: u64,
) -> Result<ProbeReport, DynError> {
    run_pairs(flow, a_values, delta, f64::INFINITY, pairs, n, seed)
}

/// (1/N) Σ_{n≤N} d(f^{a_n}x, f^{a_n}z): the mean-attraction functional of x
/// toward the orbit of z.
pub fn mean_attraction(
    flow: &Flow,
    x: &FlowPoint,
    z: &FlowPoint,
    a_values: &[u64],
    n: u64,
) -> Result<f64, DynError> {
    flow.check_point(x)?;
    flow.check_point(z)?;
    assert!(n as usize <= a_values.len() && n >= 1);
    let total = sum_range_f64(1, n, |k| {
        let a = a_values[(k - 1) as usize];
        let fx = flow.iterate(x, a).expect("kind checked");
        let fz = flow.iterate(z, a).expect("kind checked");
        flow.metric(&fx, &fz).expect("kind checked")
    });
    Ok(total / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::Theta;

    fn rotation() -> Flow {
        Flow::new(FlowSpec::Rotation {
            rho: Theta::golden(),
        })
        .unwrap()
    }

    fn denjoy() -> Flow {
        Flow::new(FlowSpec::Denjoy {
            rho: Theta::golden(),
            gap_ratio: 0.5,
            truncation: 64,
        })
        .unwrap()
    }

    #[test]
    fn rotation_has_no_exceptional_indices() {
        // isometry: distances are constant along the orbit, δ ≤ ε
        let flow = rotation();
        let a: Vec<u64> = (1..=1000).collect();
        let r = mls_probe(&flow, &a, 1e-3, 1e-3, 16, 1000, 0).unwrap();
        assert_eq!(r.worst_exceptional_density, 0.0);
    }

    #[test]
    fn cyclic_pairs_are_identical() {
        let flow = Flow::new(FlowSpec::Cyclic { q: 7 }).unwrap();
        let a: Vec<u64> = (1..=500).collect();
        let r = mls_probe(&flow, &a, 0.4, 0.5, 8, 500, 1).unwrap();
        assert_eq!(r.worst_exceptional_density, 0.0);
        assert_eq!(r.worst_mean_distance, 0.0);
    }

    #[test]
    fn odometer_mean_distance_is_bounded_by_shared_prefix() {
        // pairs share k digits with 2^{-k} < δ; addition preserves the
        // congruence mod 2^k, so every orbit distance stays ≤ 2^{-k}
        let flow = Flow::new(FlowSpec::Odometer { depth: 32 }).unwrap();
        let a: Vec<u64> = (1..=10_000).collect();
        let delta = 2f64.powi(-6);
        let r = meq_probe(&flow, &a, delta, 16, 10_000, 2).unwrap();
        assert!(r.worst_mean_distance <= delta);
    }

    #[test]
    fn rotation_mean_distance_is_the_initial_distance() {
        let flow = rotation();
        let x = FlowPoint::Angle(0);
        let z = FlowPoint::Angle(fixed::from_f64(0.01));
        let a: Vec<u64> = (1..=5000).collect();
        let m = mean_attraction(&flow, &x, &z, &a, 5000).unwrap();
        assert!((m - 0.01).abs() < 1e-12);
        let same = mean_attraction(&flow, &x, &x, &a, 5000).unwrap();
        assert_eq!(same, 0.0);
    }

    #[test]
    fn denjoy_gap_endpoints_attract_in_the_mean() {
        // both endpoints of gap 0 follow the gap orbit; distances are the
        // shrinking gap lengths, so the mean is below the initial length
        let flow = denjoy();
        let x = FlowPoint::Denjoy {
            y: 0,
            side: Side::Right,
        };
        let z = FlowPoint::Denjoy {
            y: 0,
            side: Side::Left,
        };
        let initial = flow.metric(&x, &z).unwrap();
        let a: Vec<u64> = (1..=10_000).collect();
        let m = mean_attraction(&flow, &x, &z, &a, 10_000).unwrap();
        assert!(m <= initial);
        assert!(m < 1e-3, "gap lengths shrink geometrically: {m}");
    }

    #[test]
    fn rotation_meq_mean_distance_is_the_pair_distance() {
        // isometry: the Cesàro average equals each pair's initial distance,
        // so the worst mean distance stays below δ
        let flow = rotation();
        let a: Vec<u64> = (1..=2000).collect();
        let delta = 1e-3;
        let r = meq_probe(&flow, &a, delta, 16, 2000, 11).unwrap();
        assert!(r.worst_mean_distance > 0.0);
        assert!(r.worst_mean_distance < delta + 1e-12);
    }

    #[test]
    fn denjoy_meq_along_naturals() {
        let flow = denjoy();
        let a: Vec<u64> = (1..=100_000).collect();
        let r = meq_probe(&flow, &a, 1e-4, 8, 100_000, 4).unwrap();
        assert!(r.worst_mean_distance < 0.05, "{r:?}");
        assert_eq!(r.epsilon, f64::INFINITY);
        assert_eq!(r.worst_exceptional_density, 0.0);
    }

    #[test]
    fn denjoy_probe_sees_small_exceptional_density() {
        let flow = denjoy();
        let a: Vec<u64> = (1..=20_000).collect();
        let r = mls_probe(&flow, &a, 1e-4, 0.05, 8, 20_000, 3).unwrap();
        assert!(r.worst_exceptional_density < 0.05, "{r:?}");
    }

    #[test]
    fn probes_are_deterministic_across_thread_counts() {
        let flow = denjoy();
        let a: Vec<u64> = (1..=2000).collect();
        let reference = mls_probe(&flow, &a, 1e-4, 0.05, 8, 2000, 7).unwrap();
        for threads in [1usize, 2, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let got = pool
                .install(|| mls_probe(&flow, &a, 1e-4, 0.05, 8, 2000, 7))
                .unwrap();
            assert_eq!(
                got.worst_exceptional_density.to_bits(),
                reference.worst_exceptional_density.to_bits()
            );
            assert_eq!(
                got.worst_mean_distance.to_bits(),
                reference.worst_mean_distance.to_bits()
            );
        }
    }

    #[test]
    fn delta_is_validated() {
        let flow = rotation();
        let a: Vec<u64> = (1..=10).collect();
        assert!(matches!(
            mls_probe(&flow, &a, 0.7, 0.1, 1, 10, 0),
            Err(DynError::BadDelta(_))
        ));
    }
}
