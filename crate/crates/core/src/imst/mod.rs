//! Stabilized recurrence generator for weighted Racah matrices.
//!
//! The `(n, x)` plane is split at the split index `ns` (columns) and at the
//! magnitude peaks of the two border columns (rows). Cells inside the
//! oscillating region use the plain three-term recurrence over `n`; cells
//! past a peak use it with a stabilizing cut that zeroes the rest of a column
//! once values start to grow out of the noise floor.

mod general;
mod init;
mod recurrence;
mod special;
mod split;

use serde::{Deserialize, Serialize};

pub use init::{
    argmax_abs, column_first, column_last, controlling_indices, initial_row0, initial_row1,
    initial_value_last, log_initial_value_last, SQRT_CLAMP,
};
pub use recurrence::{recurrence_step, theta_table, SpecialThetaRow, ThetaRow};
pub use split::{
    backward_search, forward_search, last_row_split, quarter_split, LogLatticeValue, NsSource,
    NsStrategy, SIGMA_ACCURACY_LIMIT,
};

use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;
use crate::params::RacahParams;

/// Default stabilizing threshold.
pub const DEFAULT_THRESHOLD: f64 = 1e-5;

/// Extra condition for the stabilizing cut in the right-hand stabilized region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Part3Guard {
    /// Some earlier entry of the column is already below the threshold.
    #[default]
    SmallEarlier,
    /// Some earlier entry of the column is above the threshold.
    LargeEarlier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImStConfig {
    pub threshold: f64,
    pub ns_strategy: NsStrategy,
    /// Highest degree produced; `None` means `N - 1`.
    pub max_order: Option<usize>,
    pub part3_guard: Part3Guard,
}

impl Default for ImStConfig {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            ns_strategy: NsStrategy::Auto,
            max_order: None,
            part3_guard: Part3Guard::SmallEarlier,
        }
    }
}

impl ImStConfig {
    pub fn with_max_order(mut self, ord: usize) -> Self {
        self.max_order = Some(ord);
        self
    }

    pub(crate) fn resolve_order(&self, size: usize) -> Result<usize> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(RacahError::ConstraintViolation(format!(
                "threshold must lie in (0, 1), got {}",
                self.threshold
            )));
        }
        match self.max_order {
            None => Ok(size - 1),
            Some(o) if o < size => Ok(o),
            Some(o) => Err(RacahError::ConstraintViolation(format!(
                "max order {o} must be below N = {size}"
            ))),
        }
    }
}

/// Controlling indices and zero counts of one generator run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub ind0: usize,
    #[serde(rename = "indN1")]
    pub ind_n1: usize,
    pub ns: usize,
    pub ns_source: NsSource,
    /// Entries set to zero in the right-hand stabilized region.
    pub zeroed_part3: usize,
    /// Entries set to zero in the left-hand stabilized region.
    pub zeroed_part4: usize,
    pub part3_guard: Part3Guard,
    /// The symmetric fast path produced the matrix.
    pub special_path: bool,
}

/// Full generator: dispatches to the symmetric path when `a = alpha = beta = 0`.
pub fn generate(p: &RacahParams, cfg: &ImStConfig) -> Result<(PolyMatrix, StabilizationReport)> {
    if p.is_special() {
        special::generate_special(p.n_size, cfg)
    } else {
        general::generate_general(p, cfg)
    }
}

/// General path regardless of the parameters; used to cross-check the symmetric path.
pub fn generate_general(
    p: &RacahParams,
    cfg: &ImStConfig,
) -> Result<(PolyMatrix, StabilizationReport)> {
    general::generate_general(p, cfg)
}

/// Symmetric path for `a = alpha = beta = 0`.
pub fn generate_special(
    n_size: usize,
    cfg: &ImStConfig,
) -> Result<(PolyMatrix, StabilizationReport)> {
    special::generate_special(n_size, cfg)
}
