//! Model dynamical systems with exact fast iteration.
//!
//! Four flows, each minimal and uniquely ergodic on its space:
//!
//! - rigid circle rotation by an irrational surrogate angle ρ;
//! - the finite cyclic system x ↦ x+1 mod q;
//! - the dyadic odometer (adding machine) on D-bit words;
//! - a Denjoy counter-example restricted to its invariant Cantor set,
//!   realized by blowing up the orbit of 0 of the rotation by ρ into gaps
//!   with summable lengths.
//!
//! Iteration is O(1) per step count: `f^n` is a single 128-bit multiply-add
//! (rotation, Denjoy base), a modular add (cyclic), or a masked integer add
//! (odometer) — never repeated composition.

mod denjoy;
mod flow;
mod observe;
mod probe;

pub use denjoy::DenjoyMap;
pub use flow::{Flow, FlowPoint, FlowSpec, Side};
pub(crate) use observe::observe_unchecked as observe_term;
pub use observe::{denjoy_embed, observe, space_average, HarmonicPart, Observable};
pub use probe::{mean_attraction, meq_probe, mls_probe, ProbeReport};

/// Errors from flow construction and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum DynError {
    #[error("flow/point/observable kind mismatch: {0}")]
    KindMismatch(String),
    #[error("rotation and Denjoy flows need a fixed-point (irrational surrogate) angle")]
    RationalRho,
    #[error("bad flow descriptor: {0}")]
    BadDescriptor(String),
    #[error("probe needs delta in (0, 1/2), got {0}")]
    BadDelta(f64),
}
