//! Number-theoretic sequences, exponential-sum distribution tests, and
//! ergodic-average experiments at desk scale.
//!
//! The crate is organized in four layers:
//!
//! - [`arithseq`] — linear-sieve tables for Ω, ω, μ, μ² and the automatic
//!   (Thue–Morse, Rudin–Shapiro) and prime-parity subsequences built on them;
//! - [`expsum`] — Weyl exponential sums, star discrepancy, residue and
//!   natural densities, sup-profiles over θ grids, and growth-rate fits;
//! - [`dynsys`] — model dynamical systems (rigid rotation, finite cycle,
//!   dyadic odometer, Denjoy map on its Cantor set) with exact fast
//!   iteration, observables, invariant-measure integrals, and mean-stability
//!   probes;
//! - [`ergodic`] — time averages of observables along arithmetic sequences,
//!   masked (square-free) variants, and weighted linear-disjointness series.
//!
//! All floating summation goes through [`sum`], which fixes the reduction
//! order (compensated accumulation in 2^16-term chunks, then a pairwise
//! tree), so results are identical across thread counts. Phases are carried
//! as 128-bit binary fractions (see [`fixed`]) or exact residues, never as
//! raw `f64` products.

pub mod arithseq;
pub mod checkpoints;
pub mod dynsys;
pub mod ergodic;
pub mod expsum;
pub mod fixed;
pub mod rng;
pub mod sum;

pub use bitvec;
pub use num_complex::Complex64;
