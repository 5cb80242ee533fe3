//! Rotation angles: exact rationals and 128-bit fixed-point fractions.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

/// A rotation angle θ ∈ [0, 1).
///
/// Rationals are kept exact (reduced p/q); irrationals are surrogated by a
/// 128-bit binary fraction, which is what every phase computation consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theta {
    Rational { p: u64, q: u64 },
    Fixed(u128),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error(
        "cannot parse θ from {0:?}: expected rat:p/q, fix:<32 hex digits>, golden, or sqrt2m1"
    )]
    Malformed(String),
    #[error("rational θ = {p}/{q} must lie in (0, 1)")]
    OutOfRange { p: u64, q: u64 },
}

impl Theta {
    /// θ = 0, the plain (untwisted) mean. Only the sup-profile grid and the
    /// plain-mean path use it; `parse` never produces it.
    pub fn zero() -> Self {
        Theta::Rational { p: 0, q: 1 }
    }

    /// Reduced rational in (0, 1).
    pub fn rational(p: u64, q: u64) -> Result<Self, ThetaError> {
        if q == 0 || p == 0 || p >= q {
            return Err(ThetaError::OutOfRange { p, q });
        }
        let g = p.gcd(&q);
        Ok(Theta::Rational { p: p / g, q: q / g })
    }

    /// (√5 − 1)/2 truncated to 128 fraction bits.
    pub fn golden() -> Self {
        Theta::Fixed(sqrt_frac(5, true))
    }

    /// √2 − 1 truncated to 128 fraction bits.
    pub fn sqrt2m1() -> Self {
        Theta::Fixed(sqrt_frac(2, false))
    }

    /// Parses "rat:p/q", "fix:<32 hex digits>", "golden", or "sqrt2m1".
    pub fn parse(text: &str) -> Result<Self, ThetaError> {
        let malformed = || ThetaError::Malformed(text.to_string());
        match text {
            "golden" => return Ok(Self::golden()),
            "sqrt2m1" => return Ok(Self::sqrt2m1()),
            _ => {}
        }
        if let Some(rest) = text.strip_prefix("rat:") {
            let (p, q) = rest.split_once('/').ok_or_else(malformed)?;
            let p: u64 = p.parse().map_err(|_| malformed())?;
            let q: u64 = q.parse().map_err(|_| malformed())?;
            return Self::rational(p, q);
        }
        if let Some(hex) = text.strip_prefix("fix:") {
            if hex.len() != 32 {
                return Err(malformed());
            }
            let v = u128::from_str_radix(hex, 16).map_err(|_| malformed())?;
            return Ok(Theta::Fixed(v));
        }
        Err(malformed())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Theta::Rational { .. })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Theta::Rational { p: 0, .. }) || matches!(self, Theta::Fixed(0))
    }

    /// The angle as a 128-bit fraction; rationals are truncated,
    /// `⌊2^128 p / q⌋`.
    pub fn to_fixed(&self) -> u128 {
        match *self {
            Theta::Fixed(v) => v,
            Theta::Rational { p, q } => {
                let num = BigUint::from(p) << 128u32;
                let v: BigUint = num / BigUint::from(q);
                let v: BigUint = v & BigUint::from(u128::MAX);
                let digits = v.to_u64_digits();
                let lo = digits.first().copied().unwrap_or(0) as u128;
                let hi = digits.get(1).copied().unwrap_or(0) as u128;
                (hi << 64) | lo
            }
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Theta::Rational { p, q } => p as f64 / q as f64,
            Theta::Fixed(v) => crate::fixed::to_f64(v),
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Theta::Rational { p, q } => write!(f, "rat:{p}/{q}"),
            Theta::Fixed(v) => write!(f, "fix:{v:032x}"),
        }
    }
}

/// ⌊2^128 · x⌋ where x = (√d − 1)/2 if `half`, else √d − 1 (for d = 2).
///
/// Computed by an exact integer square root of d · 2^256.
fn sqrt_frac(d: u32, half: bool) -> u128 {
    let wide: BigUint = BigUint::from(d) << 256u32;
    let root = wide.sqrt(); // ⌊√(d·2^256)⌋ = ⌊√d · 2^128⌋
    let one: BigUint = BigUint::from(1u8) << 128u32;
    let frac = if half {
        (root - &one) >> 1
    } else {
        root - &one
    };
    let digits = frac.to_u64_digits();
    let lo = digits.first().copied().unwrap_or(0) as u128;
    let hi = digits.get(1).copied().unwrap_or(0) as u128;
    (hi << 64) | lo
}
