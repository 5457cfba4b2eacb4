use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A truncated expansion could not meet the requested tail tolerance.
    /// Carries the tail mass that was actually achieved.
    #[error("truncation tolerance violated: residual tail mass {tail_mass:.3e} exceeds {tolerance:.3e}")]
    Truncation { tail_mass: f64, tolerance: f64 },

    /// Residue index out of range for the given number of phases.
    #[error("residue index {j} out of range for {n_phases} phases")]
    InvalidResidue { j: u32, n_phases: u32 },

    /// A scalar argument lies outside its mathematical domain.
    #[error("{name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A density operator failed Hermiticity, trace or positivity checks.
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    /// Operands have incompatible dimensions.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// The observables admit no parameter assignment satisfying the
    /// constraint set (model/measurement mismatch).
    #[error("infeasible observables: {0}")]
    InfeasibleObservables(String),

    /// Invalid configuration value.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
