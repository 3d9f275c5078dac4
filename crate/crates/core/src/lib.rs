//! Gaussian dynamics of two optical sidebands entangled through radiation
//! pressure on a vibrating mirror.
//!
//! - [`gaussian`]: covariance-matrix toolkit (symplectic spectrum, partial
//!   trace/transpose, PPT test, purity).
//! - [`params`]: laboratory parameters and derived couplings.
//! - [`sideband`]: closed-form moments, covariance matrices, entanglement
//!   marker and EPR variances.
//! - [`oracle`]: independent second-moment propagation by matrix exponential.

pub mod constants;
mod double_double;
mod error;
pub mod gaussian;
pub mod linalg;
pub mod oracle;
pub mod params;
mod quad_double;
mod real;
pub mod sideband;

pub use double_double::DoubleDouble;
pub use quad_double::QuadDouble;
pub use error::{Error, Result};
pub use gaussian::CovarianceMatrix;
pub use params::{couplings_from_physical, thermal_occupation, Couplings, PhysicalParams};
pub use real::Real;
pub use sideband::{coefficients, CoefficientSet};
