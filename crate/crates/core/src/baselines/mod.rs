//! Reference generators used for comparison with the stabilized generator.

mod daoui;
mod gsop;
pub mod printed;
mod zhu;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use daoui::{
    daoui_generate, first_column_ratio, initial_value_first, second_column_factor,
    weight_ratio_at_a, DAOUI_THRESHOLD,
};
pub use gsop::{gsop_refine, DEGENERATE_NORM, GSOP_EPS};
pub use zhu::{zhu_n_coefficients, zhu_n_generate, zhu_s_coefficients, zhu_s_generate};

use crate::error::{RacahError, Result};
use crate::imst::{self, ImStConfig};
use crate::matrix::PolyMatrix;
use crate::oracle;
use crate::params::RacahParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    ZhuN,
    ZhuS,
    Daoui,
    Imst,
    Oracle,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] = [
        Self::ZhuN,
        Self::ZhuS,
        Self::Daoui,
        Self::Imst,
        Self::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ZhuN => "zhu-n",
            Self::ZhuS => "zhu-s",
            Self::Daoui => "daoui",
            Self::Imst => "imst",
            Self::Oracle => "oracle",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = RacahError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| RacahError::DomainError(format!("unknown algorithm {s:?}")))
    }
}

/// An algorithm with optional Gram-Schmidt refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Algorithm {
    pub id: AlgorithmId,
    pub gsop_post: bool,
}

impl Algorithm {
    pub fn new(id: AlgorithmId) -> Self {
        Self {
            id,
            gsop_post: false,
        }
    }

    pub fn with_gsop(id: AlgorithmId) -> Self {
        Self {
            id,
            gsop_post: true,
        }
    }

    /// Rows `0..=ord`; ImSt runs with its default configuration.
    pub fn generate(&self, p: &RacahParams, ord: usize) -> Result<PolyMatrix> {
        let m = generate(self.id, p, ord)?;
        if self.gsop_post {
            gsop_refine(&m)
        } else {
            Ok(m)
        }
    }
}

/// Rows `0..=ord` of the weighted matrix by the chosen algorithm.
pub fn generate(id: AlgorithmId, p: &RacahParams, ord: usize) -> Result<PolyMatrix> {
    match id {
        AlgorithmId::ZhuN => zhu_n_generate(p, ord),
        AlgorithmId::ZhuS => zhu_s_generate(p, ord),
        AlgorithmId::Daoui => daoui_generate(p, ord),
        AlgorithmId::Imst => {
            imst::generate(p, &ImStConfig::default().with_max_order(ord)).map(|(m, _)| m)
        }
        AlgorithmId::Oracle => {
            let full = oracle::exact_matrix(p)?;
            let rows = full.values().slice(ndarray::s![..=ord, ..]).to_owned();
            PolyMatrix::new(*p, rows)
        }
    }
}
