//! Spectral laboratory for the focusing mass-critical fourth-order nonlinear
//! Schrödinger equation `i u_t + Δ²u = |u|^p u` on periodic boxes.
//!
//! The crate provides, bottom to top:
//! - periodic grids, unitary FFT pairs, Fourier multipliers, fractional
//!   derivatives and Littlewood-Paley projectors (`grid`, `fft`,
//!   `multiplier`, `lp`);
//! - the nonlinearity and its derivatives, conserved functionals, Sobolev
//!   and spacetime norms, mass concentration, and the admissible-exponent
//!   calculus (`nonlin`, `observables`, `exponents`);
//! - the ground state via Petviashvili iteration certified against the sharp
//!   Gagliardo-Nirenberg inequality (`ground_state`);
//! - the frequency-smoothing operator, its mapping properties, the modified
//!   energy and the almost-conservation sweep (`i_operator`);
//! - split-step time evolution with adaptive stepping, blowup detection and
//!   rate fitting, and the scaling-invariance check (`evolution`).
//!
//! Batch workloads (random-field certification, dyadic sweeps, parameter
//! fans) run data-parallel under the default `parallel` feature and
//! sequentially without it.

pub mod error;
pub mod exec;
pub mod exponents;
pub mod fft;
pub mod field;
pub mod fit;
pub mod grid;
pub mod ground_state;
pub mod i_operator;
pub mod lp;
pub mod multiplier;
pub mod nonlin;
pub mod observables;

pub mod evolution;

pub use error::{Error, Result};
pub use field::{FieldSampler, PhysicalField, SpectralField};
pub use grid::GridSpec;
