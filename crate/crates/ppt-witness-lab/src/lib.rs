//! Construction, detection and simulated measurement of a one-parameter
//! family of qubit-ququart PPT bound entangled three-qubit states.
//!
//! The crate builds the σ_b family and its five pure components, evaluates
//! the three-observable entanglement witness and its four separability
//! inequalities, checks positivity under partial transposition across the
//! relevant bipartitions, simulates NMR-style preparation and
//! observable-mapping circuits with temporal averaging and a simple noise
//! model, and reconstructs states from a seven-setting single-quantum
//! tomography protocol.
//!
//! Start with the `examples/` directory for one runnable program per
//! capability, or the `ppt-witness-lab` binary for batch CSV/JSON runs.

pub mod circuits;
pub mod cli;
pub mod entanglement;
mod error;
pub mod qlinalg;
pub mod states;
pub mod tomography;

pub use error::{Error, Result};
pub use qlinalg::{ComplexMatrix, HermEigResult};
pub use states::{BParam, DensityOperator, MixtureWeights, PseudoPureState, PureState};
