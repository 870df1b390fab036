//! Gaussian state preparation with a layer of bitwise-exponential `Ry`
//! rotations followed by a (optionally pruned) quantum Fourier transform.
//!
//! The crate contains the circuit synthesizer, a dense statevector simulator to
//! run it, reference distributions and metrics to score the result, an exact
//! amplitude-encoding baseline, a seeded shot sampler, and the experiment
//! drivers used by the `gaussprep` binary.

pub mod baseline;
pub mod circuit;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod reference;
pub mod sampler;
pub mod statevector;
pub mod synthesis;

pub use circuit::{count_gates, Circuit, GateInventory, GateKind, GateOp};
pub use error::{Error, Result};
pub use reference::GaussianSpec;
pub use statevector::{simulate, StateVector};
pub use synthesis::{build_gaussian_prep, build_qft, PruningPolicy};
