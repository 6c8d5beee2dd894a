//! Orthonormal weighted Racah polynomial matrices.

pub mod analysis;
pub mod baselines;
pub mod error;
pub mod imst;
pub mod matrix;
pub mod oracle;
pub mod params;

pub use error::{RacahError, Result};
pub use matrix::PolyMatrix;
pub use params::{validate_params, RacahParams};
