use ndarray::Array2;

use crate::matrix::PolyMatrix;

/// `R R^T - I` over the stored rows.
pub fn gram_deviation(m: &PolyMatrix) -> Array2<f64> {
    let v = m.values();
    let mut g = v.dot(&v.t());
    for i in 0..g.nrows() {
        g[[i, i]] -= 1.0;
    }
    g
}

/// `max_{n,m} |sum_s R~_n(s) R~_m(s) - delta_nm|` over the stored rows.
pub fn orthogonality_error(m: &PolyMatrix) -> f64 {
    gram_deviation(m).iter().fold(0.0f64, |e, v| e.max(v.abs()))
}
