//! 128-bit binary fractions of the unit interval.
//!
//! A `u128` value `x` represents the real number `x / 2^128 ∈ [0, 1)`.
//! Addition wraps, which is exactly addition mod 1; multiplying by an
//! integer `n` with `wrapping_mul` is exactly `n·x mod 1`. A plain `f64`
//! phase `a·θ mod 1` loses all fractional accuracy once `a·θ ≈ 2^53`;
//! the fixed representation keeps ≥ 60 correct fraction bits for any
//! 64-bit integer multiplier.

/// One unit in the last place of the top 64 bits, as a fraction of 1.
pub const HI64_ULP: f64 = 1.0 / 18_446_744_073_709_551_616.0; // 2^-64

/// Fraction of 1 carried by the top 64 bits of a fixed-point value.
#[inline]
pub fn to_f64(x: u128) -> f64 {
    ((x >> 64) as u64) as f64 * HI64_ULP
}

/// Exact conversion of an `f64` in `[0, 1)` to a 128-bit fraction.
///
/// An `f64` has a 53-bit significand, so the value is always exactly
/// representable; no rounding occurs.
pub fn from_f64(x: f64) -> u128 {
    assert!((0.0..1.0).contains(&x), "fraction out of [0,1): {x}");
    // x * 2^64 is exact (power-of-two scaling), as is the split below.
    let scaled = x * 18_446_744_073_709_551_616.0;
    let hi = scaled.floor();
    let lo = (scaled - hi) * 18_446_744_073_709_551_616.0;
    ((hi as u64 as u128) << 64) | (lo as u64 as u128)
}

/// Truncated product of two fractions: `⌊a·b / 2^128⌋`, i.e. `a·b` as a
/// fraction of 1 with error below 2^-128.
pub fn mul_frac(a: u128, b: u128) -> u128 {
    let (a_hi, a_lo) = ((a >> 64) as u64 as u128, a as u64 as u128);
    let (b_hi, b_lo) = ((b >> 64) as u64 as u128, b as u64 as u128);
    let hi = a_hi * b_hi;
    let mid1 = a_hi * b_lo;
    let mid2 = a_lo * b_hi;
    let lo = a_lo * b_lo;
    let carry = ((lo >> 64) + (mid1 as u64 as u128) + (mid2 as u64 as u128)) >> 64;
    hi + (mid1 >> 64) + (mid2 >> 64) + carry
}

/// Distance on the circle ℝ/ℤ between two fractions, in `[0, 1/2]`.
pub fn circle_dist(a: u128, b: u128) -> f64 {
    let d = a.wrapping_sub(b);
    let d = d.min(d.wrapping_neg());
    to_f64(d)
}
