//! Closed-form border values with a stabilized recurrence over `s`.

use ndarray::Array2;

use super::zhu::zhu_s_coefficients;
use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;
use crate::params::RacahParams;

/// Magnitude below which a growing value is treated as noise.
pub const DAOUI_THRESHOLD: f64 = 1e-6;

/// `beta` as a nonnegative integer, required by the product form of `R~_0(a)`.
fn integer_beta(p: &RacahParams) -> Result<usize> {
    let be = p.beta;
    if be < 0.0 || (be - be.round()).abs() > 1e-12 {
        return Err(RacahError::NonIntegerBeta(be));
    }
    Ok(be.round() as usize)
}

/// `R~_0(a)` from a finite product of `beta + 1` factors.
pub fn initial_value_first(p: &RacahParams) -> Result<f64> {
    let (a, b, al) = (p.a, p.b, p.alpha);
    let steps = integer_beta(p)?;
    let mut f = (al + 1.0) / ((a + b) * (al + b - a));
    for k in 1..=steps {
        let kf = k as f64;
        f *= (al + kf + 1.0) * (2.0 * a - kf + 1.0) / ((a + b - kf) * (b - a + al + kf));
    }
    Ok((f * (2.0 * a + 1.0)).sqrt())
}

/// `R~_n(a) / R~_{n-1}(a)`.
pub fn first_column_ratio(p: &RacahParams, n: usize) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    let ab = al + be;
    let d = nf * (ab + 2.0 * nf + 1.0) * (ab + nf)
        / ((al + nf)
            * (be + nf)
            * (b - a + ab + nf)
            * (a + b + al + nf)
            * (ab + 2.0 * nf - 1.0)
            * (a + b - be - nf)
            * (b - a - nf));
    (a - b + nf) * (be + nf) * (a + b + al + nf) / nf * d.sqrt()
}

/// `E_n` of the step `R~_n(a + 1) = E_n sqrt(D (2a + 3)/(2a + 1)) R~_n(a)`.
pub fn second_column_factor(p: &RacahParams, n: usize) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    let den = (al + 1.0) * (be + 1.0) + a * (a + 1.0) * (al + be + 2.0)
        - a * (al + 1.0) * (a - be)
        - b * (be + 1.0) * (b + al);
    1.0 + 2.0 * nf * (al + be + nf + 1.0) * (a + 1.0) / den
}

/// `rho(a + 1) / rho(a)` in the reduced form used by the second column.
pub fn weight_ratio_at_a(p: &RacahParams) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    (2.0 * a + 1.0) * (be + 1.0) * (b + al + a + 1.0) * (b - a - 1.0)
        / ((b + al - a - 1.0) * (2.0 * a - be + 1.0) * (a + b + 1.0))
}

/// Border column `s = a` by the product form, `s = a + 1` by `E_n`, then the
/// corrected recurrence over `s` with a zero substitution for growing noise.
///
/// The substitution applies for `n > N/6` when `|R~_n(s)| < 1e-6` and
/// `|R~_n(s)| > |R~_n(s - 1)|`.
pub fn daoui_generate(p: &RacahParams, ord: usize) -> Result<PolyMatrix> {
    if ord >= p.n_size {
        return Err(RacahError::ConstraintViolation(format!(
            "max order {ord} must be below N = {}",
            p.n_size
        )));
    }
    let size = p.n_size;
    let mut values = Array2::zeros((ord + 1, size));
    values[[0, 0]] = initial_value_first(p)?;
    for n in 1..=ord {
        values[[n, 0]] = first_column_ratio(p, n) * values[[n - 1, 0]];
    }
    if size > 1 {
        let a = p.a;
        let step = (weight_ratio_at_a(p) * (2.0 * a + 3.0) / (2.0 * a + 1.0)).sqrt();
        for n in 0..=ord {
            values[[n, 1]] = second_column_factor(p, n) * step * values[[n, 0]];
        }
    }
    let cut_from = size as f64 / 6.0;
    for x in 2..size {
        let s = p.s_of(x);
        for n in 0..=ord {
            let (k1, k2) = zhu_s_coefficients(p, n, s);
            let v = k1 * values[[n, x - 1]] - k2 * values[[n, x - 2]];
            let prev: f64 = values[[n, x - 1]];
            values[[n, x]] =
                if n as f64 > cut_from && v.abs() < DAOUI_THRESHOLD && v.abs() > prev.abs() {
                    0.0
                } else {
                    v
                };
        }
    }
    PolyMatrix::new(*p, values)
}
