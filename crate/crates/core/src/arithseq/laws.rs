//! Sampled complete-additivity and complete-multiplicativity checks.
//!
//! Exhaustive pair checks are quadratic, so pairs (m, n) with m·n ≤ max_n
//! are sampled with the splitmix generator; the same seed always yields the
//! same pairs.

use crate::rng::SplitMix64;

/// Outcome of a sampled law check.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub trials: u64,
    pub violations: u64,
    /// First few violating pairs (m, n), capped.
    pub witnesses: Vec<(u64, u64)>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

const WITNESS_CAP: usize = 10;

fn check_law(
    values: &[u64],
    trials: u64,
    seed: u64,
    mut accept: impl FnMut(u64, u64) -> bool,
    law: impl Fn(u64, u64, u64) -> bool,
) -> LawReport {
    let max_n = values.len() as u64;
    assert!(max_n >= 2, "need at least two values");
    let a = |n: u64| values[(n - 1) as usize];
    let mut rng = SplitMix64::new(seed);
    let mut violations = 0;
    let mut witnesses = Vec::new();
    let mut done = 0;
    while done < trials {
        let m = rng.below_inclusive(max_n);
        let n = rng.below_inclusive(max_n / m);
        if !accept(m, n) {
            continue;
        }
        done += 1;
        if !law(a(m), a(n), a(m * n)) {
            violations += 1;
            if witnesses.len() < WITNESS_CAP {
                witnesses.push((m, n));
            }
        }
    }
    LawReport {
        trials,
        violations,
        witnesses,
    }
}

/// Checks a_{mn} = a_m + a_n on sampled pairs with m·n ≤ max_n.
pub fn additivity_check(values: &[u64], trials: u64, seed: u64) -> LawReport {
    additivity_check_where(values, trials, seed, |_, _| true)
}

/// As [`additivity_check`], restricted to pairs accepted by the filter
/// (e.g. coprime pairs for functions that are only additive there).
pub fn additivity_check_where(
    values: &[u64],
    trials: u64,
    seed: u64,
    accept: impl FnMut(u64, u64) -> bool,
) -> LawReport {
    check_law(values, trials, seed, accept, |am, an, amn| {
        am.checked_add(an) == Some(amn)
    })
}

/// Checks a_{mn} = a_m · a_n on sampled pairs with m·n ≤ max_n.
pub fn multiplicativity_check(values: &[u64], trials: u64, seed: u64) -> LawReport {
    check_law(
        values,
        trials,
        seed,
        |_, _| true,
        |am, an, amn| am.checked_mul(an) == Some(amn),
    )
}
