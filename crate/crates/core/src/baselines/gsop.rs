//! Classical Gram-Schmidt refinement of a generated matrix.

use ndarray::{s, Array1, Array2, ArrayView2};

use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;

/// Added to each norm before division.
pub const GSOP_EPS: f64 = 2.2204e-16;

/// Rows whose residual norm falls below this are reported as dependent.
pub const DEGENERATE_NORM: f64 = 1e3 * GSOP_EPS;

/// A correction that removes more than this fraction of a row's norm is applied
/// a second time; one pass then leaves cancellation error in the result.
const REPEAT_BELOW: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `v -= done^T coeffs`, one contiguous row at a time.
fn subtract_projection(v: &mut Array1<f64>, done: ArrayView2<'_, f64>, coeffs: &Array1<f64>) {
    for (row, &c) in done.rows().into_iter().zip(coeffs) {
        v.scaled_add(-c, &row);
    }
}

/// Replaces row `n` by its component orthogonal to the already refined rows
/// `0..n`, normalized by `norm + eps`. Projections use the unrefined row.
///
/// Rows of an accurate input lose almost nothing to the correction and get a
/// single pass. A row that the correction mostly cancels is corrected again
/// from its residual.
pub fn gsop_refine(m: &PolyMatrix) -> Result<PolyMatrix> {
    let src = m.values();
    let (rows, cols) = src.dim();
    let mut out = Array2::<f64>::zeros((rows, cols));
    for n in 0..rows {
        let r = src.row(n);
        let mut v: Array1<f64> = r.to_owned();
        let mut norm = v.dot(&v).sqrt();
        if n > 0 {
            let done = out.slice(s![..n, ..]);
            let before = norm;
            subtract_projection(&mut v, done, &done.dot(&r));
            norm = v.dot(&v).sqrt();
            if norm < REPEAT_BELOW * before {
                let coeffs = done.dot(&v);
                subtract_projection(&mut v, done, &coeffs);
                norm = v.dot(&v).sqrt();
            }
        }
        if !(norm >= DEGENERATE_NORM) {
            return Err(RacahError::DegenerateRow { row: n, norm });
        }
        v /= norm + GSOP_EPS;
        out.row_mut(n).assign(&v);
    }
    PolyMatrix::new(*m.params(), out)
}
