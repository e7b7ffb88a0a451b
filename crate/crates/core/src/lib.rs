//! Interval-verified identification of NARX polynomial models.
//!
//! The crate is `no_std` (with `alloc`) so the numerical core can be reused
//! outside a hosted environment. File formats, the command line front end and
//! anything touching the filesystem live in the companion `narxiv` crate.
//!
//! Layout, bottom-up:
//!
//! - [`interval`]: closed intervals with outward-rounded arithmetic.
//! - [`linalg`]: dense point/interval matrices, point least squares and a
//!   verified interval linear solver.
//! - [`model`]: regressor terms, model structures, regression matrices and
//!   simulation (one-step-ahead and free run) over point or interval scalars.
//! - [`selection`]: error reduction ratio ranking and AIC model-size choice.
//! - [`estimation`]: point + interval parameter estimation for a structure.
//! - [`metrics`]: normalised RMSE, point and interval.
//! - [`signals`]: PRBS excitation and Duffing-Ueda data synthesis.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod estimation;
pub mod interval;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod round;
pub mod scalar;
pub mod selection;
pub mod signals;

pub use error::{Error, IntervalError, Result};
pub use estimation::{estimate, EstimationResult, WideningPolicy};
pub use interval::Interval;
pub use linalg::{IntervalMatrix, IntervalVector, Matrix, SolverConfig};
pub use model::{Dataset, Factor, ModelStructure, RegressorTerm, Signal};
pub use scalar::{PowerMode, Scalar};
pub use selection::{SelectionConfig, SelectionReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
