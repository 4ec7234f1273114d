use thiserror::Error;

use crate::pulse::PulseSequence;

/// Errors raised by the SU(2) arithmetic and configuration checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Su2Error {
    #[error("rotation axis is not unit-norm (|n| = {norm})")]
    InvalidAxis { norm: f64 },
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    InvalidUnitary { deviation: f64 },
    #[error("fidelity {0} is outside [0, 1]")]
    FidelityDomain(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
}

/// Best schedule found before a compilation gave up.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSchedule {
    pub steps: PulseSequence,
    pub epsilon: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Su2(#[from] Su2Error),
    #[error("iteration limit {limit} reached (best epsilon {:e})", .best.epsilon)]
    MaxIters { limit: usize, best: Box<PartialSchedule> },
    #[error("no allowed axis improves fidelity (best epsilon {:e})", .best.epsilon)]
    NoProgress { best: Box<PartialSchedule> },
    #[error("post-pass verification failed: epsilon {achieved:e} exceeds target {target:e}")]
    PassMismatch { achieved: f64, target: f64 },
}
