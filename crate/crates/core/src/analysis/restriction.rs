use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{RacahError, Result};
use crate::imst::{self, ImStConfig};
use crate::matrix::PolyMatrix;
use crate::params::RacahParams;

/// Transform-domain variances of a first-order Markov source and the tail-energy fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestrictionStudy {
    pub rho: f64,
    /// Diagonal of `R Sigma R^T`, in degree order.
    pub sigma2: Vec<f64>,
    /// `J_m = sum_{k >= m} sigma2_k / sum_k sigma2_k`.
    pub j: Vec<f64>,
}

impl RestrictionStudy {
    /// Rows `l,sigma2,J`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,sigma2,J\n");
        for (l, (s, j)) in self.sigma2.iter().zip(&self.j).enumerate() {
            out.push_str(&format!("{l},{s:.17e},{j:.17e}\n"));
        }
        out
    }
}

/// Covariance `Sigma_ij = rho^|i-j|` conjugated by the full matrix.
pub fn restriction_from_matrix(m: &PolyMatrix, rho: f64) -> Result<RestrictionStudy> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(RacahError::DomainError(format!(
            "rho must lie in (0, 1), got {rho}"
        )));
    }
    let size = m.n_size();
    let cov = Array2::from_shape_fn((size, size), |(i, j)| rho.powi(i.abs_diff(j) as i32));
    let r = m.values();
    let t = r.dot(&cov).dot(&r.t());
    let sigma2: Vec<f64> = t.diag().to_vec();
    let total: f64 = sigma2.iter().sum();
    let mut j = vec![0.0; sigma2.len()];
    let mut tail = 0.0;
    for k in (0..sigma2.len()).rev() {
        tail += sigma2[k];
        j[k] = tail / total;
    }
    // the full sum, divided by itself
    if let Some(j0) = j.first_mut() {
        *j0 = 1.0;
    }
    Ok(RestrictionStudy { rho, sigma2, j })
}

/// Restriction study with the stabilized generator at `p`.
pub fn restriction_study(p: &RacahParams, rho: f64) -> Result<RestrictionStudy> {
    let (m, _) = imst::generate(p, &ImStConfig::default())?;
    restriction_from_matrix(&m, rho)
}
