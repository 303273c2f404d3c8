//! Matrix-free estimation of the operator norm of the difference between
//! two linear maps, given only a forward oracle for one and an adjoint
//! oracle for the other.
//!
//! The central use case is validating adjoint implementations: when `V*`
//! is supposed to be the adjoint of `A`, the norm `||A - V||` measures how
//! badly the pair is mismatched, and it can be estimated from matrix-vector
//! products alone. Two stochastic ascent estimators are provided (a joint
//! step size and independent step sizes per factor), together with
//! brute-force reference oracles, convergence diagnostics, and a
//! parallel-beam tomography test bench with both an exact and a
//! deliberately mismatched backprojector.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod estimator_one;
pub mod estimator_two;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod sampling;
pub mod tomo;

pub use config::{Algorithm, RunConfig};
pub use diagnostics::{EstimateReport, StopReason, TraceRecord};
pub use error::{Error, Result};
pub use estimator_one::{run_one, run_one_observed};
pub use estimator_two::{run_two, run_two_observed};
pub use operator::{AdjointOracle, BlackBoxPair, DenseMatrix, ForwardOracle};
pub use sampling::{IteratePair, RngState};
