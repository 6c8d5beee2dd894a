use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::params::RacahParams;

/// Maps a size `N` to `(a, alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamRule {
    /// `a = alpha = beta = 0`.
    Column1,
    /// `a = ceil(N/10000 + 0.5)`, `alpha = beta = N/10000`.
    Column2,
    /// `a = floor(N/4 + 0.5)`, `alpha = floor(N/8 + 0.5)`, `beta = floor(N/16 + 0.5)`.
    Column3,
    /// `a = floor(N/2 + 0.5)`, `alpha = floor(N/2 + 0.5)`, `beta = floor(N/4 + 0.5)`.
    Column4,
    /// `a = max(N/4, 1)`, `alpha = N/8`, `beta = N/16`.
    Timing,
    Fixed {
        a: f64,
        alpha: f64,
        beta: f64,
    },
}

impl ParamRule {
    pub fn triple(&self, n_size: usize) -> (f64, f64, f64) {
        let n = n_size as f64;
        let round = |v: f64| (v + 0.5).floor();
        match *self {
            Self::Column1 => (0.0, 0.0, 0.0),
            Self::Column2 => ((n / 10000.0 + 0.5).ceil(), n / 10000.0, n / 10000.0),
            Self::Column3 => (round(n / 4.0), round(n / 8.0), round(n / 16.0)),
            Self::Column4 => (round(n / 2.0), round(n / 2.0), round(n / 4.0)),
            Self::Timing => ((n / 4.0).max(1.0), n / 8.0, n / 16.0),
            Self::Fixed { a, alpha, beta } => (a, alpha, beta),
        }
    }

    pub fn params(&self, n_size: usize) -> Result<RacahParams> {
        let (a, alpha, beta) = self.triple(n_size);
        RacahParams::with_size(a, n_size, alpha, beta)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Column1 => "column1",
            Self::Column2 => "column2",
            Self::Column3 => "column3",
            Self::Column4 => "column4",
            Self::Timing => "timing",
            Self::Fixed { .. } => "fixed",
        }
    }
}
