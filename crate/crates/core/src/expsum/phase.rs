//! Per-θ phase evaluation: a → e^{2πi a θ}.
//!
//! Rational θ = p/q: the phase class is the exact residue
//! ((a mod q)·p) mod q, looked up in a table of the q-th roots of unity.
//! Fixed-point θ: the phase is the top 64 bits of a·θ mod 1 carried in
//! 128-bit arithmetic. Either way no accuracy is lost to large a.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::theta::Theta;
use crate::fixed;

/// Largest q for which a root-of-unity table is materialized; beyond it the
/// residue is still exact but the root is evaluated per term.
const ROOT_TABLE_MAX_Q: u64 = 1 << 16;

/// Prepared evaluator of a ↦ e^{2πi a θ} for one θ.
pub struct PhaseEval {
    theta: Theta,
    kind: Kind,
}

enum Kind {
    Rational {
        p: u64,
        q: u64,
        roots: Option<Vec<Complex64>>,
    },
    Fixed {
        frac: u128,
    },
}

fn root_of_unity(k: u64, q: u64) -> Complex64 {
    // exact at the quadrant points so that ±1 and ±i phases cancel exactly
    if (4 * k).is_multiple_of(q) {
        return match (4 * k) / q {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (TAU * (k as f64 / q as f64)).sin_cos();
    Complex64::new(c, s)
}

impl PhaseEval {
    pub fn new(theta: &Theta) -> Self {
        let kind = match *theta {
            Theta::Rational { p, q } => {
                let roots =
                    (q <= ROOT_TABLE_MAX_Q).then(|| (0..q).map(|k| root_of_unity(k, q)).collect());
                Kind::Rational { p, q, roots }
            }
            Theta::Fixed(frac) => Kind::Fixed { frac },
        };
        Self {
            theta: *theta,
            kind,
        }
    }

    pub fn theta(&self) -> &Theta {
        &self.theta
    }

    /// e^{2πi a θ}.
    #[inline]
    pub fn unit(&self, a: u64) -> Complex64 {
        match &self.kind {
            Kind::Rational { p, q, roots } => {
                let k = ((a % q) as u128 * *p as u128 % *q as u128) as u64;
                match roots {
                    Some(table) => table[k as usize],
                    None => root_of_unity(k, *q),
                }
            }
            Kind::Fixed { frac } => {
                let phase = fixed::to_f64((a as u128).wrapping_mul(*frac));
                let (s, c) = (TAU * phase).sin_cos();
                Complex64::new(c, s)
            }
        }
    }

    /// The fractional part of a·θ in [0, 1).
    #[inline]
    pub fn frac_multiple(&self, a: u64) -> f64 {
        match &self.kind {
            Kind::Rational { p, q, .. } => {
                let k = ((a % q) as u128 * *p as u128 % *q as u128) as u64;
                k as f64 / *q as f64
            }
            Kind::Fixed { frac } => fixed::to_f64((a as u128).wrapping_mul(*frac)),
        }
    }
}
