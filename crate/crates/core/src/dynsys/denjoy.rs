//! Denjoy counter-example on its Cantor set, as an embedding into the circle.
//!
//! The minimal Cantor system is parameterized by the base rotation: a point
//! is a base angle y plus a side tag that distinguishes the two endpoints of
//! a blown-up gap. Gap k (k ∈ ℤ, |k| ≤ K) sits at frac(kρ) and has length
//! `l_k = G·2^{-|k|}/3`, so the total gap mass is G (up to the truncation
//! tail G·2^{-K}·2/3). The embedding
//!
//! `Φ(y, side) = (1−G)·y + Σ { l_k : frac(kρ) < y, or = y with side right }`
//!
//! is strictly increasing and conjugates the base rotation to the Denjoy
//! homeomorphism on the image. All arithmetic is 128-bit fixed point; `f64`
//! appears only at the boundary.

use crate::fixed;

use super::flow::Side;

#[derive(Debug, Clone)]
pub struct DenjoyMap {
    rho: u128,
    gap_ratio: f64,
    truncation: u32,
    /// Gap positions frac(kρ) with their lengths, sorted by position.
    gaps: Vec<(u128, u128)>,
    /// prefix[i] = Σ_{j<i} len_j.
    prefix: Vec<u128>,
    one_minus_g: u128,
}

impl DenjoyMap {
    pub fn new(rho: u128, gap_ratio: f64, truncation: u32) -> Self {
        assert!(
            gap_ratio > 0.0 && gap_ratio < 1.0,
            "gap ratio must be in (0,1)"
        );
        assert!(truncation >= 1);
        let g_fixed = fixed::from_f64(gap_ratio);
        let base_len = g_fixed / 3;
        let mut gaps: Vec<(u128, u128)> = Vec::with_capacity(2 * truncation as usize + 1);
        for k in -(truncation as i64)..=truncation as i64 {
            let pos = if k >= 0 {
                (k as u128).wrapping_mul(rho)
            } else {
                ((-k) as u128).wrapping_mul(rho).wrapping_neg()
            };
            gaps.push((pos, base_len >> k.unsigned_abs()));
        }
        gaps.sort_unstable_by_key(|&(pos, _)| pos);
        let mut prefix = Vec::with_capacity(gaps.len() + 1);
        let mut acc = 0u128;
        prefix.push(0);
        for &(_, len) in &gaps {
            acc += len;
            prefix.push(acc);
        }
        Self {
            rho,
            gap_ratio,
            truncation,
            gaps,
            prefix,
            one_minus_g: g_fixed.wrapping_neg(), // 2^128 − G = 1 − G as a fraction
        }
    }

    pub fn rho(&self) -> u128 {
        self.rho
    }

    pub fn gap_ratio(&self) -> f64 {
        self.gap_ratio
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Bound on the gap mass lost to truncation: G·2^{-K}.
    pub fn tail_bound(&self) -> f64 {
        self.gap_ratio * (self.truncation as f64).exp2().recip()
    }

    /// Length of gap k.
    pub fn gap_len_fixed(&self, k: i64) -> u128 {
        (fixed::from_f64(self.gap_ratio) / 3) >> k.unsigned_abs().min(127)
    }

    /// The embedding Φ as a 128-bit fraction.
    pub fn embed_fixed(&self, y: u128, side: Side) -> u128 {
        let idx = self.gaps.partition_point(|&(pos, _)| pos < y);
        let mut v = fixed::mul_frac(self.one_minus_g, y) + self.prefix[idx];
        if side == Side::Right {
            if let Some(&(pos, len)) = self.gaps.get(idx) {
                if pos == y {
                    v += len;
                }
            }
        }
        v
    }

    /// The embedding Φ in [0, 1).
    pub fn embed(&self, y: u128, side: Side) -> f64 {
        fixed::to_f64(self.embed_fixed(y, side))
    }

    /// Distance between two embedded points, as the circle metric on the
    /// image of Φ (the metric the Cantor set inherits from 𝕋).
    pub fn metric(&self, a: (u128, Side), b: (u128, Side)) -> f64 {
        fixed::circle_dist(self.embed_fixed(a.0, a.1), self.embed_fixed(b.0, b.1))
    }

    /// Direct-series oracle for Φ: plain O(K) scan over the unsorted gap
    /// family. Kept independent of the sorted/prefix fast path.
    pub fn embed_fixed_direct(&self, y: u128, side: Side) -> u128 {
        let mut v = fixed::mul_frac(self.one_minus_g, y);
        for k in -(self.truncation as i64)..=self.truncation as i64 {
            let pos = if k >= 0 {
                (k as u128).wrapping_mul(self.rho)
            } else {
                ((-k) as u128).wrapping_mul(self.rho).wrapping_neg()
            };
            let len = self.gap_len_fixed(k);
            if pos < y || (pos == y && side == Side::Right) {
                v += len;
            }
        }
        v
    }
}
