//! Qubit-scale simulation and verification lab for measurement-disturbance
//! relations expressed through bipartite correlation functions.
//!
//! The crate simulates 1-3 qubit systems exactly (dense complex linear
//! algebra, dimensions at most 8) and uses that core to evaluate a family of
//! uncertainty statements:
//!
//! * [`qcore`] - spin observables, eigenbases, tensor embedding, expectation
//!   and correlation functions;
//! * [`prep`] - maximally entangled source pairs and projective preparation
//!   of arbitrary signal states;
//! * [`mdr`] - measurement-interaction scenarios, root-mean-square precision
//!   and disturbance functionals, and the exact identity tying their pooled
//!   values to tripartite correlations;
//! * [`bounds`] - the variance-product relation, its correlation-function
//!   form, the product-form vs three-term correlation bounds, vertex radii
//!   of the constraint curves, and composite CHSH monogamy;
//! * [`harness`] - deterministic sweep/fuzz campaigns behind the `mdrlab`
//!   command-line tool.
//!
//! All numerics are generic over the scalar type through [`Real`]; the
//! aliases below fix the default `f64` precision every stated tolerance
//! refers to.

pub mod bounds;
pub mod error;
pub mod harness;
pub mod mdr;
pub mod prep;
pub mod qcore;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex amplitude at default precision.
pub type Cplx = qcore::Cplx<f64>;
/// Observable axis at default precision.
pub type Vec3 = qcore::Vec3<f64>;
/// Pure state at default precision.
pub type Ket = qcore::Ket<f64>;
/// Dense operator at default precision.
pub type Op = qcore::Op<f64>;
/// Source-pair parameters at default precision.
pub type BellPairSpec = prep::BellPairSpec<f64>;
/// Projection outcome at default precision.
pub type PreparedBranch = prep::PreparedBranch<f64>;
/// Measurement scenario at default precision.
pub type Scenario = mdr::Scenario<f64>;
/// Evaluated scenario at default precision.
pub type MdrSample = mdr::MdrSample<f64>;
/// Inequality evaluation at default precision.
pub type BoundReport = bounds::BoundReport<f64>;
/// Composite CHSH evaluation at default precision.
pub type ChshReport = bounds::ChshReport<f64>;
