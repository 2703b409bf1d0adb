//! Complex-quaternion (biquaternion) algebra with Lorentz rotors, plane-wave
//! Dirac solutions, spin and gauge structure, Lagrangian densities and the
//! map onto chiral 4-spinors, plus the randomized check suites used by the
//! `cqdirac` command.

pub mod chiral;
pub mod cq;
pub mod error;
pub mod lagrangian;
pub mod relativity;
pub mod report;
pub mod sampling;
pub mod spin;
pub mod suites;
pub mod wave;

pub use cq::{ComplexScalar, Cq, Matrix2C};
pub use error::{Error, Result};
pub use relativity::{LorentzRotor, MinkowskiVector};
pub use report::{CheckReport, Status, SuiteKind};
pub use suites::{run_all, run_suite, RunConfig};
