//! Property tests for the structural invariants.

use bitvec::prelude::*;
use proptest::prelude::*;

use ubseq_core::arithseq::{subsequence_of, IndicatorSequence};
use ubseq_core::dynsys::{Flow, FlowPoint, FlowSpec};
use ubseq_core::expsum::{discrepancy_star, residue_densities, weyl_series, Theta};
use ubseq_core::fixed;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subsequence_count_identity(bits in proptest::collection::vec(any::<bool>(), 1..512)) {
        prop_assume!(bits.iter().any(|&b| b));
        let mut bv: BitVec<u8, Lsb0> = BitVec::new();
        for b in &bits {
            bv.push(*b);
        }
        let ind = IndicatorSequence::from_bits(bv, "random");
        let sub = subsequence_of(&ind).unwrap();
        // #(A ∩ [1, a_N]) = N for every prefix
        for (idx, &a) in sub.values().iter().enumerate() {
            let count = (1..=a).filter(|&n| ind.contains(n)).count();
            prop_assert_eq!(count, idx + 1);
        }
        prop_assert_eq!(sub.len(), ind.count());
    }

    #[test]
    fn weyl_average_is_bounded_by_one(
        values in proptest::collection::vec(0u64..1_000_000, 1..300),
        num in 1u64..1000,
        den_extra in 1u64..1000,
        fixed_bits in any::<u128>(),
    ) {
        let n = values.len() as u64;
        let thetas = [
            Theta::rational(num, num + den_extra).unwrap(),
            Theta::Fixed(fixed_bits),
        ];
        for theta in thetas {
            let s = weyl_series(&values, &theta, &[n], "random").unwrap();
            prop_assert!(s.final_abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn discrepancy_is_in_unit_interval(points in proptest::collection::vec(0.0f64..1.0, 1..200)) {
        let d = discrepancy_star(&points);
        prop_assert!(d > 0.0 && d <= 1.0);
    }

    #[test]
    fn residue_density_rows_sum_to_one(
        values in proptest::collection::vec(any::<u64>(), 1..300),
        m in 2u64..64,
    ) {
        let n = values.len() as u64;
        let reports = residue_densities(&values, m, &[n]).unwrap();
        let total: f64 = reports[0].densities.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iterate_semigroup_law(
        seed in any::<u128>(),
        m in 0u64..1_000_000,
        n in 0u64..1_000_000,
        q in 2u64..64,
        depth in 1u32..=64,
    ) {
        let flows = [
            Flow::new(FlowSpec::Rotation { rho: Theta::golden() }).unwrap(),
            Flow::new(FlowSpec::Cyclic { q }).unwrap(),
            Flow::new(FlowSpec::Odometer { depth }).unwrap(),
        ];
        for flow in &flows {
            let x = match flow.spec() {
                FlowSpec::Rotation { .. } => FlowPoint::Angle(seed),
                FlowSpec::Cyclic { q } => FlowPoint::State((seed as u64) % q),
                FlowSpec::Odometer { depth } => {
                    FlowPoint::Word(if *depth == 64 { seed as u64 } else { (seed as u64) & ((1 << depth) - 1) })
                }
                _ => unreachable!(),
            };
            let joint = flow.iterate(&x, m + n).unwrap();
            let staged = flow.iterate(&flow.iterate(&x, m).unwrap(), n).unwrap();
            prop_assert_eq!(joint, staged);
        }
    }

    #[test]
    fn fixed_point_circle_distance_is_a_metric(a in any::<u128>(), b in any::<u128>(), c in any::<u128>()) {
        let dab = fixed::circle_dist(a, b);
        let dba = fixed::circle_dist(b, a);
        prop_assert_eq!(dab.to_bits(), dba.to_bits());
        prop_assert!(dab <= 0.5 + 1e-15);
        let dac = fixed::circle_dist(a, c);
        let dcb = fixed::circle_dist(c, b);
        prop_assert!(dab <= dac + dcb + 1e-12);
    }
}
