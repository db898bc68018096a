//! Error type shared by every module of the crate.

use thiserror::Error;

/// Unified error for model construction, recursion, spectra and oracles.
#[derive(Debug, Clone, Error)]
pub enum QesError {
    /// Operator order k = max(deg A, deg F + 1) outside the supported 3..=4.
    #[error("unsupported operator order k = {k}; invariance conditions exist only for k in 3..=4")]
    UnsupportedOrder { k: usize },

    /// Structurally invalid master spec (A(0) ≠ 0, F(0) = 0, degree bounds, …).
    #[error("degenerate master spec: {0}")]
    DegenerateSpec(String),

    /// A quartic spec whose F⁽³⁾ conflicts with the weight constraint.
    #[error("infeasible weight constraint: F'''(0) must equal {required}, got {given}")]
    InfeasibleWeight { required: String, given: String },

    /// The recursion's leading coefficient c₁(m) vanished.
    #[error("recursion breakdown: leading coefficient c1({m}) vanishes")]
    RecursionBreakdown { m: i64 },

    /// Division of P_{n+1+N} by P_{n+1} left a nonzero remainder.
    #[error("factorization failure at offset N = {n_offset}: remainder {remainder}")]
    FactorizationFailure { n_offset: usize, remainder: String },

    /// Matrix characteristic polynomial disagrees with the critical polynomial.
    #[error("oracle divergence: char poly {char_poly} vs monic critical polynomial {critical}")]
    OracleDivergence { char_poly: String, critical: String },

    /// The critical polynomial has a repeated root.
    #[error("degenerate spectrum: repeated eigenvalue near {root} (multiplicity {multiplicity})")]
    DegenerateSpectrum { root: f64, multiplicity: usize },

    /// Fewer real roots than the subspace dimension.
    #[error("non-real spectrum: only {real_count} of {expected} eigenvalues are real")]
    NonRealSpectrum { real_count: usize, expected: usize },

    /// A named parameter inequality or structural constraint failed.
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    /// Catalog lookup failed.
    #[error("unknown catalog model '{0}'")]
    UnknownModel(String),

    /// Evaluation outside the operator's x-interval or t-domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Potential evaluation hit a pole.
    #[error("singular point at t = {0}")]
    SingularPoint(f64),

    /// Domain truncation could not find a confining threshold crossing.
    #[error("non-confining potential: {0}")]
    NonConfining(String),

    /// Truncation conditions of the recursion are violated.
    #[error("truncation conditions violated: {0}")]
    TruncationViolated(String),

    /// Operation undefined for the zero polynomial.
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    /// Polynomial division by zero.
    #[error("division by zero polynomial")]
    DivisionByZero,

    /// Malformed arguments (parsing, missing parameters, bad ranges, …).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
