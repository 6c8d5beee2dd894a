use ndarray::{Array2, ArrayView1};

use crate::error::{RacahError, Result};
use crate::params::RacahParams;

/// Weighted Racah polynomial values, row `n` (degree) by column `x = s - a`.
///
/// Holds rows `0..=max_order`; rows above the maximum order are absent.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    params: RacahParams,
    values: Array2<f64>,
    max_order: usize,
}

impl PolyMatrix {
    /// Wraps a `(max_order + 1) x N` array. Every entry must be finite.
    pub fn new(params: RacahParams, values: Array2<f64>) -> Result<Self> {
        let (rows, cols) = values.dim();
        if cols != params.n_size || rows == 0 || rows > params.n_size {
            return Err(RacahError::DimensionMismatch(format!(
                "matrix is {rows}x{cols}, parameters need up to {n}x{n}",
                n = params.n_size
            )));
        }
        if let Some(((n, x), v)) = values.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(RacahError::breakdown(n, x, format!("non-finite entry {v}")));
        }
        Ok(Self {
            params,
            values,
            max_order: rows - 1,
        })
    }

    pub(crate) fn from_parts_unchecked(params: RacahParams, values: Array2<f64>) -> Self {
        let max_order = values.nrows() - 1;
        Self {
            params,
            values,
            max_order,
        }
    }

    /// Identity matrix over the lattice of `params`; a trivially orthonormal set.
    pub fn identity(params: RacahParams) -> Self {
        let n = params.n_size;
        Self::from_parts_unchecked(params, Array2::eye(n))
    }

    pub fn params(&self) -> &RacahParams {
        &self.params
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn n_size(&self) -> usize {
        self.params.n_size
    }

    pub fn rows(&self) -> usize {
        self.max_order + 1
    }

    #[inline]
    pub fn get(&self, n: usize, x: usize) -> f64 {
        self.values[[n, x]]
    }

    pub fn row(&self, n: usize) -> ArrayView1<'_, f64> {
        self.values.row(n)
    }

    /// Largest entrywise absolute difference against another matrix of equal shape.
    pub fn max_abs_diff(&self, other: &PolyMatrix) -> Result<f64> {
        if self.values.dim() != other.values.dim() {
            return Err(RacahError::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.values.dim(),
                other.values.dim()
            )));
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
    }
}
