//! Observables and invariant-measure integrals.

use std::f64::consts::TAU;
use std::fmt;

use crate::fixed;

use super::flow::{word_mask, Flow, FlowPoint, FlowSpec, Side};
use super::DynError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicPart {
    Re,
    Im,
}

/// A continuous observable, bounded by 1 in absolute value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// Re or Im of e^{2πi h x} on circle coordinates, h ≠ 0.
    Harmonic { h: i32, part: HarmonicPart },
    /// Indicator of the cylinder: the first `depth` digits equal `word`.
    Cylinder { word: u64, depth: u32 },
    /// Indicator of one cyclic state.
    StateIndicator { r: u64 },
    /// Harmonic composed with the Denjoy embedding.
    ComposedHarmonic { h: i32, part: HarmonicPart },
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::Harmonic { h, part } => {
                write!(
                    f,
                    "harm:{h}:{}",
                    if *part == HarmonicPart::Re {
                        "re"
                    } else {
                        "im"
                    }
                )
            }
            Observable::Cylinder { word, depth } => {
                write!(f, "cyl:")?;
                for m in 0..*depth {
                    write!(f, "{}", (word >> m) & 1)?;
                }
                Ok(())
            }
            Observable::StateIndicator { r } => write!(f, "state:{r}"),
            Observable::ComposedHarmonic { h, part } => {
                write!(
                    f,
                    "denharm:{h}:{}",
                    if *part == HarmonicPart::Re {
                        "re"
                    } else {
                        "im"
                    }
                )
            }
        }
    }
}

/// frac(h·x) for a signed harmonic index, exactly in fixed point.
#[inline]
fn harmonic_frac(h: i32, x: u128) -> u128 {
    if h >= 0 {
        (h as u128).wrapping_mul(x)
    } else {
        (h.unsigned_abs() as u128).wrapping_mul(x).wrapping_neg()
    }
}

#[inline]
fn harmonic_value(h: i32, part: HarmonicPart, x: u128) -> f64 {
    let (s, c) = (TAU * fixed::to_f64(harmonic_frac(h, x))).sin_cos();
    match part {
        HarmonicPart::Re => c,
        HarmonicPart::Im => s,
    }
}

/// Checks that an observable can be evaluated on the points of a flow.
pub fn check_compatible(flow: &Flow, obs: &Observable) -> Result<(), DynError> {
    let ok = match (flow.spec(), obs) {
        (FlowSpec::Rotation { .. }, Observable::Harmonic { h, .. }) => *h != 0,
        (FlowSpec::Cyclic { q }, Observable::StateIndicator { r }) => r < q,
        (FlowSpec::Odometer { depth }, Observable::Cylinder { depth: k, word }) => {
            k <= depth && (word & !word_mask(*k)) == 0
        }
        (FlowSpec::Denjoy { .. }, Observable::ComposedHarmonic { h, .. }) => *h != 0,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(DynError::KindMismatch(format!("{obs} on {flow}")))
    }
}

/// φ(x). The observable must be compatible with the point's flow.
pub fn observe(flow: &Flow, obs: &Observable, x: &FlowPoint) -> Result<f64, DynError> {
    check_compatible(flow, obs)?;
    flow.check_point(x)?;
    Ok(observe_unchecked(flow, obs, x))
}

#[inline]
pub(crate) fn observe_unchecked(flow: &Flow, obs: &Observable, x: &FlowPoint) -> f64 {
    match (obs, *x) {
        (Observable::Harmonic { h, part }, FlowPoint::Angle(a)) => harmonic_value(*h, *part, a),
        (Observable::Cylinder { word, depth }, FlowPoint::Word(w)) => {
            if (w ^ word) & word_mask(*depth) == 0 {
                1.0
            } else {
                0.0
            }
        }
        (Observable::StateIndicator { r }, FlowPoint::State(s)) => {
            if s == *r {
                1.0
            } else {
                0.0
            }
        }
        (Observable::ComposedHarmonic { h, part }, FlowPoint::Denjoy { y, side }) => {
            let embedded = flow.denjoy_map().expect("denjoy flow").embed_fixed(y, side);
            harmonic_value(*h, *part, embedded)
        }
        _ => unreachable!("compatibility checked on entry"),
    }
}

/// Circle coordinate of an embedded Denjoy point: Φ(y, side) in [0, 1).
pub fn denjoy_embed(flow: &Flow, x: &FlowPoint) -> Result<f64, DynError> {
    flow.check_point(x)?;
    match (flow.denjoy_map(), x) {
        (Some(map), FlowPoint::Denjoy { y, side }) => Ok(map.embed(*y, *side)),
        _ => Err(DynError::KindMismatch(format!("embed of {x:?} on {flow}"))),
    }
}

/// Number of quadrature nodes for the Denjoy push-forward integral.
pub const DENJOY_QUADRATURE_NODES: u32 = 1 << 16;

/// ∫ φ dν for the unique invariant measure ν of the flow.
///
/// Rotation: Lebesgue, so any nonzero harmonic integrates to 0 exactly.
/// Odometer: ν of a depth-k cylinder is 2^{-k} exactly. Cyclic: 1/q.
/// Denjoy: ν is the push-forward of Lebesgue under the embedding; the
/// integral is a midpoint quadrature with 2^16 nodes.
pub fn space_average(flow: &Flow, obs: &Observable) -> Result<f64, DynError> {
    check_compatible(flow, obs)?;
    Ok(match (flow.spec(), obs) {
        (FlowSpec::Rotation { .. }, Observable::Harmonic { .. }) => 0.0,
        (FlowSpec::Odometer { .. }, Observable::Cylinder { depth, .. }) => {
            (*depth as f64).exp2().recip()
        }
        (FlowSpec::Cyclic { q }, Observable::StateIndicator { .. }) => (*q as f64).recip(),
        (FlowSpec::Denjoy { .. }, Observable::ComposedHarmonic { h, part }) => {
            let map = flow.denjoy_map().expect("denjoy flow");
            let m = DENJOY_QUADRATURE_NODES as u64;
            // midpoint nodes y_i = (2i+1)/(2M), exact in fixed point for M = 2^16
            let total = crate::sum::sum_range_f64(0, m - 1, |i| {
                let y = ((2 * i + 1) as u128) << (127 - 16);
                harmonic_value(*h, *part, map.embed_fixed(y, Side::Left))
            });
            total / m as f64
        }
        _ => unreachable!("compatibility checked on entry"),
    })
}
