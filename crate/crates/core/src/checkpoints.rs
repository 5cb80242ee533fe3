//! Checkpoint schedules for convergence series.

/// Geometric schedule `N_j = round(N_0 · g^j)`, clipped to `max` and ending
/// exactly at `max`. Duplicates from rounding are collapsed.
///
/// Defaults used by the command line are `N_0 = 10^3`, `g = √10`.
pub fn geometric_to(start: u64, ratio: f64, max: u64) -> Vec<u64> {
    assert!(start >= 1 && ratio > 1.0);
    let mut out = Vec::new();
    if max == 0 {
        return out;
    }
    let mut x = start as f64;
    while x < max as f64 {
        let n = x.round() as u64;
        if n >= max {
            break;
        }
        if n >= 1 && out.last() != Some(&n) {
            out.push(n);
        }
        x *= ratio;
    }
    if out.last() != Some(&max) {
        out.push(max);
    }
    out
}

/// Validates a checkpoint list: strictly increasing, ≥ 1, last ≤ `available`.
pub fn validate(checkpoints: &[u64], available: u64) -> Result<(), InvalidCheckpoints> {
    if checkpoints.is_empty() {
        return Err(InvalidCheckpoints::Empty);
    }
    let mut prev = 0u64;
    for &n in checkpoints {
        if n <= prev {
            return Err(InvalidCheckpoints::NotIncreasing(n));
        }
        prev = n;
    }
    if prev > available {
        return Err(InvalidCheckpoints::BeyondRange {
            last: prev,
            available,
        });
    }
    Ok(())
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InvalidCheckpoints {
    #[error("checkpoint list is empty")]
    Empty,
    #[error("checkpoints must be strictly increasing and ≥ 1 (at {0})")]
    NotIncreasing(u64),
    #[error("last checkpoint {last} exceeds available length {available}")]
    BeyondRange { last: u64, available: u64 },
}
