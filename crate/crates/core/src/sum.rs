//! Deterministic compensated summation.
//!
//! Every series in this crate is reduced the same way: terms are split into
//! fixed chunks of 2^16 consecutive indices, each chunk is accumulated
//! sequentially with Kahan compensation, and the chunk totals are combined
//! by a pairwise tree in index order. Chunks may be *computed* on any number
//! of worker threads, but the reduction order never changes, so the result
//! is identical to the last bit across thread counts.

use num_complex::Complex64;
use rayon::prelude::*;

/// Chunk length of the fixed reduction layout.
pub const CHUNK: u64 = 1 << 16;

/// Kahan–Babuška compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    compensation: f64,
}

impl Kahan {
    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

fn pairwise(parts: &[Complex64]) -> Complex64 {
    match parts.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => parts[0],
        n => {
            let (a, b) = parts.split_at(n / 2);
            pairwise(a) + pairwise(b)
        }
    }
}

/// Sum of `term(i)` for `i` in `[lo, hi]` (inclusive), in the fixed order.
///
/// Chunk boundaries are anchored at `lo`, so the same `(lo, hi)` range always
/// reduces identically regardless of parallelism.
pub fn sum_range<F>(lo: u64, hi: u64, term: F) -> Complex64
where
    F: Fn(u64) -> Complex64 + Sync,
{
    if lo > hi {
        return Complex64::new(0.0, 0.0);
    }
    let count = hi - lo + 1;
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = lo + c * CHUNK;
            let end = (start + CHUNK - 1).min(hi);
            let mut re = Kahan::default();
            let mut im = Kahan::default();
            for i in start..=end {
                let t = term(i);
                re.add(t.re);
                im.add(t.im);
            }
            Complex64::new(re.value(), im.value())
        })
        .collect();
    pairwise(&parts)
}

/// Real-valued variant of [`sum_range`].
pub fn sum_range_f64<F>(lo: u64, hi: u64, term: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    sum_range(lo, hi, |i| Complex64::new(term(i), 0.0)).re
}

/// Running partial sums `Σ_{i=1..N_j} term(i)` at each checkpoint.
///
/// Each checkpoint segment is reduced with [`sum_range`] and the segment
/// totals are chained; the layout depends only on the checkpoint list.
pub fn partial_sums<F>(checkpoints: &[u64], term: F) -> Vec<(u64, Complex64)>
where
    F: Fn(u64) -> Complex64 + Sync,
{
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut running = Complex64::new(0.0, 0.0);
    let mut prev = 0u64;
    for &n in checkpoints {
        running += sum_range(prev + 1, n, &term);
        out.push((n, running));
        prev = n;
    }
    out
}
