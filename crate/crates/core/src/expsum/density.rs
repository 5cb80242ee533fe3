//! Residue-class densities, natural densities, and a-densities.
//!
//! All counts are exact integers; division happens only at checkpoint
//! emission. Upper/lower densities at finite N are reported as max/min over
//! the tail half of the checkpoint series — estimates of the limsup/liminf,
//! never claims to equal them.

use super::ExpsumError;
use crate::arithseq::{IndicatorSequence, Subsequence};
use crate::checkpoints;

/// Densities of the residue classes of (a_n) mod m at one checkpoint.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub modulus: u64,
    pub n_used: u64,
    /// Index r holds the density of {n ≤ N : a_n ≡ r (mod m)}; rows sum to 1.
    pub densities: Vec<f64>,
}

/// Density of {n ≤ N : a_n ≡ r (mod m)} for every residue r, at each
/// checkpoint.
pub fn residue_densities(
    values: &[u64],
    m: u64,
    cps: &[u64],
) -> Result<Vec<DensityReport>, ExpsumError> {
    if m < 2 {
        return Err(ExpsumError::BadModulus(m));
    }
    checkpoints::validate(cps, values.len() as u64)?;
    let mut counts = vec![0u64; m as usize];
    let mut out = Vec::with_capacity(cps.len());
    let mut prev = 0u64;
    for &n in cps {
        for k in prev + 1..=n {
            counts[(values[(k - 1) as usize] % m) as usize] += 1;
        }
        out.push(DensityReport {
            modulus: m,
            n_used: n,
            densities: counts.iter().map(|&c| c as f64 / n as f64).collect(),
        });
        prev = n;
    }
    Ok(out)
}

/// A density series with tail-half upper/lower estimates.
#[derive(Debug, Clone)]
pub struct DensitySeries {
    /// (N, count/N) at each checkpoint.
    pub series: Vec<(u64, f64)>,
    /// Max of the tail half of the series.
    pub upper: f64,
    /// Min of the tail half of the series.
    pub lower: f64,
}

fn tail_estimates(series: &[(u64, f64)]) -> (f64, f64) {
    let tail = &series[series.len() / 2..];
    let upper = tail.iter().map(|&(_, v)| v).fold(f64::MIN, f64::max);
    let lower = tail.iter().map(|&(_, v)| v).fold(f64::MAX, f64::min);
    (upper, lower)
}

/// Natural density series of a subset E: #(E ∩ [1, N]) / N.
pub fn densities(e: &IndicatorSequence, cps: &[u64]) -> Result<DensitySeries, ExpsumError> {
    checkpoints::validate(cps, e.max_n())?;
    let mut count = 0u64;
    let mut series = Vec::with_capacity(cps.len());
    let mut prev = 0u64;
    for &n in cps {
        for k in prev + 1..=n {
            if e.contains(k) {
                count += 1;
            }
        }
        series.push((n, count as f64 / n as f64));
        prev = n;
    }
    let (upper, lower) = tail_estimates(&series);
    Ok(DensitySeries {
        series,
        upper,
        lower,
    })
}

/// a-density series of E along (a_n): #{n ≤ N : a_n ∈ E} / N, counted with
/// multiplicity. Values beyond E's range make membership undecidable and
/// are an error; a_n = 0 is simply not a member.
pub fn a_density(
    values: &[u64],
    e: &IndicatorSequence,
    cps: &[u64],
) -> Result<DensitySeries, ExpsumError> {
    checkpoints::validate(cps, values.len() as u64)?;
    let mut count = 0u64;
    let mut series = Vec::with_capacity(cps.len());
    let mut prev = 0u64;
    for &n in cps {
        for k in prev + 1..=n {
            let v = values[(k - 1) as usize];
            match e.contains_checked(v) {
                Some(true) => count += 1,
                Some(false) => {}
                None => {
                    return Err(ExpsumError::RangeOverflow {
                        value: v,
                        max_n: e.max_n(),
                    })
                }
            }
        }
        series.push((n, count as f64 / n as f64));
        prev = n;
    }
    let (upper, lower) = tail_estimates(&series);
    Ok(DensitySeries {
        series,
        upper,
        lower,
    })
}

/// Finite-N check of the a-density bound D̄_a(E) ≤ D̄(E)/D̲(a) for a
/// subsequence a with positive lower density.
#[derive(Debug, Clone)]
pub struct DadReport {
    /// #{n ≤ N : a_n ∈ E}/N.
    pub lhs: f64,
    /// D̄(E) estimate divided by D̲(a) estimate.
    pub rhs: f64,
    pub holds: bool,
}

/// Slack allowed on the finite-N proxy of the density inequality.
pub const DAD_SLACK: f64 = 0.02;

/// Verifies the finite-N proxy of `D̄_a(E) ≤ D̄(E)/D̲(a)` with [`DAD_SLACK`].
///
/// The first N listing values supply the left side; the right side uses
/// tail-half estimates over a geometric schedule ending exactly at a_N.
pub fn prop_dad_check(
    a: &Subsequence,
    e: &IndicatorSequence,
    n: u64,
) -> Result<DadReport, ExpsumError> {
    checkpoints::validate(&[n], a.len())?;
    let prefix = &a.values()[..n as usize];
    let a_last = prefix[prefix.len() - 1];

    let mut hits = 0u64;
    for &v in prefix {
        match e.contains_checked(v) {
            Some(true) => hits += 1,
            Some(false) => {}
            None => {
                return Err(ExpsumError::RangeOverflow {
                    value: v,
                    max_n: e.max_n(),
                })
            }
        }
    }
    let lhs = hits as f64 / n as f64;

    let cps = checkpoints::geometric_to(1000.min(a_last), 10f64.sqrt(), a_last);
    let e_upper = densities(e, &cps)?.upper;

    // lower density of a as a subset of ℕ over the same schedule
    let mut member = vec![false; (a_last + 1) as usize];
    for &v in prefix {
        member[v as usize] = true;
    }
    let mut count = 0u64;
    let mut a_series = Vec::with_capacity(cps.len());
    let mut prev = 0u64;
    for &m in &cps {
        for k in prev + 1..=m {
            if member[k as usize] {
                count += 1;
            }
        }
        a_series.push((m, count as f64 / m as f64));
        prev = m;
    }
    let (_, a_lower) = tail_estimates(&a_series);
    if a_lower <= 0.0 {
        return Err(ExpsumError::DegenerateLowerDensity);
    }

    let rhs = e_upper / a_lower;
    Ok(DadReport {
        lhs,
        rhs,
        holds: lhs <= rhs + DAD_SLACK,
    })
}
