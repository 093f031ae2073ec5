use thiserror::Error;

/// Errors surfaced by the spectral core and the solvers built on it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: expected {expected} samples for d={d_sim}, n={n}, got {got}")]
    GridMismatch {
        d_sim: usize,
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite symbol value at lattice index {index} (|xi| = {xi_abs})")]
    NonFiniteSymbol { index: usize, xi_abs: f64 },
    #[error("non-finite field value at index {index}")]
    NonFiniteField { index: usize },
    #[error("projection is numerically zero (norm {norm:.3e}); ratio undefined")]
    ZeroProjection { norm: f64 },
    #[error("zero-norm denominator in {context}")]
    ZeroNorm { context: &'static str },
    #[error(
        "Petviashvili iteration diverged at step {iteration}: stabilization factor {s_factor:.3e} left [1e-6, 1e6]"
    )]
    IterationDiverged { iteration: usize, s_factor: f64 },
    #[error(
        "Petviashvili iteration hit max_iter = {max_iter} with residual {residual:.3e} (tol {tol:.3e})"
    )]
    MaxIterExceeded {
        max_iter: usize,
        residual: f64,
        tol: f64,
    },
    #[error("Gagliardo-Nirenberg violation: sample {sample} has ratio {ratio:.12e} > bound {bound:.12e}")]
    GnViolation { sample: usize, ratio: f64, bound: f64 },
    #[error("domain error in exponent calculus: {condition}")]
    ExponentDomain { condition: String },
    #[error("empty admissible-pair catalogue")]
    EmptyCatalogue,
    #[error("trajectory has too few samples for this operation: {got} < {need}")]
    TooFewSamples { got: usize, need: usize },
    #[error("run left the trusted regime inside the requested window at t = {t:.6}: {cause}; use a shorter window")]
    BlowupInWindow { t: f64, cause: String },
    #[error("integration failure: non-finite field at t = {t:.6} (last good state retained)")]
    IntegrationFailure {
        t: f64,
        last_good: Box<crate::field::PhysicalField>,
    },
    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),
}

pub type Result<T> = std::result::Result<T, Error>;
