//! Flow descriptors, points, iteration, and metrics.

use std::fmt;

use crate::expsum::Theta;
use crate::fixed;

use super::denjoy::DenjoyMap;
use super::DynError;

/// Which endpoint of a blown-up gap a Denjoy point is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Parameters of a model system.
#[derive(Debug, Clone)]
pub enum FlowSpec {
    /// Rigid rotation x ↦ x + ρ mod 1.
    Rotation { rho: Theta },
    /// x ↦ x + 1 mod q on {0, …, q−1}.
    Cyclic { q: u64 },
    /// Adding machine on D-bit words, 1 ≤ D ≤ 64.
    Odometer { depth: u32 },
    /// Denjoy counter-example on its Cantor set.
    Denjoy {
        rho: Theta,
        gap_ratio: f64,
        truncation: u32,
    },
}

/// A point of the space the flow acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowPoint {
    /// Circle angle as a 128-bit fraction.
    Angle(u128),
    /// Cyclic state in [0, q).
    State(u64),
    /// Odometer word; bit m is the digit i_m.
    Word(u64),
    /// Denjoy point: base angle and gap side.
    Denjoy { y: u128, side: Side },
}

/// A prepared flow: validated descriptor plus any precomputed structure.
#[derive(Debug, Clone)]
pub struct Flow {
    spec: FlowSpec,
    denjoy: Option<DenjoyMap>,
}

impl Flow {
    pub fn new(spec: FlowSpec) -> Result<Self, DynError> {
        let denjoy = match &spec {
            FlowSpec::Rotation { rho } => {
                let Theta::Fixed(_) = rho else {
                    return Err(DynError::RationalRho);
                };
                None
            }
            FlowSpec::Cyclic { q } => {
                if *q < 2 {
                    return Err(DynError::BadDescriptor(format!(
                        "cyclic state count {q} < 2"
                    )));
                }
                None
            }
            FlowSpec::Odometer { depth } => {
                if *depth < 1 || *depth > 64 {
                    return Err(DynError::BadDescriptor(format!(
                        "odometer depth {depth} outside 1..=64"
                    )));
                }
                None
            }
            FlowSpec::Denjoy {
                rho,
                gap_ratio,
                truncation,
            } => {
                let Theta::Fixed(r) = rho else {
                    return Err(DynError::RationalRho);
                };
                if !(*gap_ratio > 0.0 && *gap_ratio < 1.0) {
                    return Err(DynError::BadDescriptor(format!(
                        "gap ratio {gap_ratio} outside (0,1)"
                    )));
                }
                if *truncation < 1 {
                    return Err(DynError::BadDescriptor("truncation must be ≥ 1".into()));
                }
                Some(DenjoyMap::new(*r, *gap_ratio, *truncation))
            }
        };
        Ok(Self { spec, denjoy })
    }

    pub fn spec(&self) -> &FlowSpec {
        &self.spec
    }

    pub fn denjoy_map(&self) -> Option<&DenjoyMap> {
        self.denjoy.as_ref()
    }

    /// Default start point: angle 0, state 0, all-zero word, (0, left).
    pub fn default_start(&self) -> FlowPoint {
        match self.spec {
            FlowSpec::Rotation { .. } => FlowPoint::Angle(0),
            FlowSpec::Cyclic { .. } => FlowPoint::State(0),
            FlowSpec::Odometer { .. } => FlowPoint::Word(0),
            FlowSpec::Denjoy { .. } => FlowPoint::Denjoy {
                y: 0,
                side: Side::Left,
            },
        }
    }

    /// Validates that a point belongs to this flow's space.
    pub fn check_point(&self, x: &FlowPoint) -> Result<(), DynError> {
        let ok = match (&self.spec, x) {
            (FlowSpec::Rotation { .. }, FlowPoint::Angle(_)) => true,
            (FlowSpec::Cyclic { q }, FlowPoint::State(s)) => s < q,
            (FlowSpec::Odometer { depth }, FlowPoint::Word(w)) => {
                *depth == 64 || *w < (1u64 << depth)
            }
            (FlowSpec::Denjoy { .. }, FlowPoint::Denjoy { .. }) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(DynError::KindMismatch(format!(
                "point {x:?} does not belong to {}",
                self
            )))
        }
    }

    /// f^n(x): a single multiply-add, modular add, or masked add.
    pub fn iterate(&self, x: &FlowPoint, n: u64) -> Result<FlowPoint, DynError> {
        self.check_point(x)?;
        Ok(match (&self.spec, *x) {
            (FlowSpec::Rotation { rho }, FlowPoint::Angle(a)) => {
                FlowPoint::Angle(a.wrapping_add((n as u128).wrapping_mul(rho.to_fixed())))
            }
            (FlowSpec::Cyclic { q }, FlowPoint::State(s)) => FlowPoint::State((s + n % q) % q),
            (FlowSpec::Odometer { depth }, FlowPoint::Word(w)) => {
                FlowPoint::Word(w.wrapping_add(n) & word_mask(*depth))
            }
            (FlowSpec::Denjoy { rho, .. }, FlowPoint::Denjoy { y, side }) => FlowPoint::Denjoy {
                y: y.wrapping_add((n as u128).wrapping_mul(rho.to_fixed())),
                side,
            },
            _ => unreachable!("checked above"),
        })
    }

    /// The metric of the space: circle distance (rotation), discrete 0/1
    /// (cyclic), dyadic digit metric (odometer), circle distance between
    /// embedded points (Denjoy).
    pub fn metric(&self, x: &FlowPoint, y: &FlowPoint) -> Result<f64, DynError> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(match (&self.spec, *x, *y) {
            (FlowSpec::Rotation { .. }, FlowPoint::Angle(a), FlowPoint::Angle(b)) => {
                fixed::circle_dist(a, b)
            }
            (FlowSpec::Cyclic { .. }, FlowPoint::State(a), FlowPoint::State(b)) => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
            (FlowSpec::Odometer { depth }, FlowPoint::Word(a), FlowPoint::Word(b)) => {
                word_metric(a ^ b, *depth)
            }
            (
                FlowSpec::Denjoy { .. },
                FlowPoint::Denjoy { y: a, side: sa },
                FlowPoint::Denjoy { y: b, side: sb },
            ) => self.denjoy.as_ref().unwrap().metric((a, sa), (b, sb)),
            _ => unreachable!("checked above"),
        })
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            FlowSpec::Rotation { rho } => write!(f, "rotation:{rho}"),
            FlowSpec::Cyclic { q } => write!(f, "cyclic:{q}"),
            FlowSpec::Odometer { depth } => write!(f, "odometer:{depth}"),
            FlowSpec::Denjoy {
                rho,
                gap_ratio,
                truncation,
            } => write!(f, "denjoy:{rho}:{gap_ratio}:{truncation}"),
        }
    }
}

#[inline]
pub(crate) fn word_mask(depth: u32) -> u64 {
    if depth >= 64 {
        u64::MAX
    } else {
        (1u64 << depth) - 1
    }
}

/// d(w, w') = Σ_{m<D} |i_m − i'_m| / 2^{m+1}, given the xor of the words.
#[inline]
pub(crate) fn word_metric(mut diff: u64, depth: u32) -> f64 {
    diff &= word_mask(depth);
    let mut d = 0.0f64;
    while diff != 0 {
        let m = diff.trailing_zeros();
        d += (m as f64 + 1.0).exp2().recip();
        diff &= diff - 1;
    }
    d
}
