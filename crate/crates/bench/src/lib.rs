//! Evaluation harness for the self-navigation compiler.
//!
//! Builds the 128-gate evaluation set, sweeps `(N_axes, ε_T)` grids, averages
//! achieved error, rotation distance, pulse count and compile time per grid
//! point, and fits the `y = slope·log₁₀(1/ε_T) + intercept` scaling model.

pub mod dataset;
pub mod fit;
pub mod sweep;

pub use dataset::{evaluation_dataset, evaluation_dataset_with, EvalTarget, RotationOrder};
pub use fit::{fit_log_model, FitError, FitResult};
pub use sweep::{
    aggregate, compile_dataset, default_eps_list, eps_decades, run_sweep, GateOutcome, SweepRow, DEFAULT_AXES,
};
