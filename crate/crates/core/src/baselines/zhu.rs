//! Recurrences over the degree and over the lattice index.

use ndarray::Array2;

use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;
use crate::params::{lambda, log_norm_d2, sigma, tau, weight_ratio, weight_rho, RacahParams};

/// `(A, B, C)` of `A R~_{n+1} = B (d_n/d_{n+1}) R~_n - C (d_{n-1}/d_{n+1}) R~_{n-1}`.
pub fn zhu_n_coefficients(p: &RacahParams, n: usize, s: f64) -> (f64, f64, f64) {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    let ab = al + be;
    let big_a = (nf + 1.0) * (ab + nf + 1.0) / ((ab + 2.0 * nf + 1.0) * (ab + 2.0 * nf + 2.0));
    let big_b = s * (s + 1.0) - (a * a + b * b + (a - be).powi(2) + (b + al).powi(2) - 2.0) / 4.0
        + (ab + 2.0 * nf) * (ab + 2.0 * nf + 2.0) / 8.0
        - (be * be - al * al) * ((2.0 * b + al).powi(2) - (2.0 * a - be).powi(2))
            / (8.0 * (ab + 2.0 * nf) * (ab + 2.0 * nf + 2.0));
    let h = nf + ab / 2.0;
    let big_c = (al + nf) * (be + nf) / ((ab + 2.0 * nf) * (ab + 2.0 * nf + 1.0))
        * ((a + b + (al - be) / 2.0).powi(2) - h * h)
        * ((b - a + ab / 2.0).powi(2) - h * h);
    (big_a, big_b, big_c)
}

/// `rho(s+1) sigma(s+1) / rho(s)` with the common factor cancelled; zero at the last node.
fn shifted_sigma(p: &RacahParams, s: f64) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    (a + s + 1.0) * (b + s + al + 1.0) * (s - a + be + 1.0) * (b - s - 1.0)
}

/// Rows 0 and 1 from the closed-form initial conditions.
fn initial_rows(p: &RacahParams) -> Result<(Vec<f64>, Vec<f64>)> {
    let size = p.n_size;
    let ld0 = log_norm_d2(p, 0)?;
    let ld1 = if size > 1 { log_norm_d2(p, 1)? } else { 0.0 };
    let mut r0 = Vec::with_capacity(size);
    let mut r1 = Vec::with_capacity(size);
    for x in 0..size {
        let s = p.s_of(x);
        let w = weight_rho(p, s)? * (2.0 * s + 1.0);
        r0.push(((w.ln() - ld0) / 2.0).exp());
        let bracket = (shifted_sigma(p, s) - sigma(p, s)) / (2.0 * s + 1.0);
        r1.push(-((w.ln() - ld1) / 2.0).exp() * bracket);
    }
    Ok((r0, r1))
}

/// `d_n/d_{n+1}` and `d_{n-1}/d_{n+1}`; the norms themselves leave the double
/// range long before their ratios do.
fn norm_ratios(p: &RacahParams, n: usize) -> Result<(f64, f64)> {
    let l1 = log_norm_d2(p, n + 1)?;
    Ok((
        ((log_norm_d2(p, n)? - l1) / 2.0).exp(),
        ((log_norm_d2(p, n - 1)? - l1) / 2.0).exp(),
    ))
}

fn check_order(p: &RacahParams, ord: usize) -> Result<()> {
    if ord >= p.n_size {
        return Err(RacahError::ConstraintViolation(format!(
            "max order {ord} must be below N = {}",
            p.n_size
        )));
    }
    Ok(())
}

/// Three-term recurrence over `n` at every lattice point, without stabilization.
pub fn zhu_n_generate(p: &RacahParams, ord: usize) -> Result<PolyMatrix> {
    check_order(p, ord)?;
    let size = p.n_size;
    let (r0, r1) = initial_rows(p)?;
    let mut values = Array2::zeros((ord + 1, size));
    for x in 0..size {
        values[[0, x]] = r0[x];
        if ord >= 1 {
            values[[1, x]] = r1[x];
        }
    }
    for n in 1..ord {
        let (rn, rm) = norm_ratios(p, n)?;
        for x in 0..size {
            let s = p.s_of(x);
            let (a, b, c) = zhu_n_coefficients(p, n, s);
            values[[n + 1, x]] = (b * rn * values[[n, x]] - c * rm * values[[n - 1, x]]) / a;
        }
    }
    PolyMatrix::new(*p, values)
}

/// Coefficients of `R~_n(s) = k1 R~_n(s-1) - k2 R~_n(s-2)`, square-root factors included.
///
/// The second term carries `s sigma(s-1)` in its numerator.
pub fn zhu_s_coefficients(p: &RacahParams, n: usize, s: f64) -> (f64, f64) {
    let sg = sigma(p, s - 1.0);
    let t = tau(p, s - 1.0);
    let lam = lambda(p, n);
    let d = (s - 1.0) * (sg + (2.0 * s - 1.0) * t);
    let a1 = (2.0 * s - 1.0) * (sg + (s - 1.0) * t - 2.0 * lam * s * (s - 1.0)) / d;
    let b1 = s * sg / d;
    let ra = weight_ratio(p, s - 1.0) * (2.0 * s + 1.0) / (2.0 * s - 1.0);
    if b1 == 0.0 {
        // s = a + 1: the point s - 2 lies off the lattice
        return (a1 * ra.sqrt(), 0.0);
    }
    let rb = ra * weight_ratio(p, s - 2.0) * (2.0 * s - 1.0) / (2.0 * s - 3.0);
    (a1 * ra.sqrt(), b1 * rb.sqrt())
}

/// Three-term recurrence over `s`, seeded at `s = a, a + 1` by the recurrence over `n`.
pub fn zhu_s_generate(p: &RacahParams, ord: usize) -> Result<PolyMatrix> {
    check_order(p, ord)?;
    let size = p.n_size;
    let (r0, r1) = initial_rows(p)?;
    let seeds = size.min(2);
    let mut values = Array2::zeros((ord + 1, size));
    for x in 0..seeds {
        values[[0, x]] = r0[x];
        if ord >= 1 {
            values[[1, x]] = r1[x];
        }
    }
    for n in 1..ord {
        let (rn, rm) = norm_ratios(p, n)?;
        for x in 0..seeds {
            let (a, b, c) = zhu_n_coefficients(p, n, p.s_of(x));
            values[[n + 1, x]] = (b * rn * values[[n, x]] - c * rm * values[[n - 1, x]]) / a;
        }
    }
    for x in 2..size {
        let s = p.s_of(x);
        for n in 0..=ord {
            let (k1, k2) = zhu_s_coefficients(p, n, s);
            values[[n, x]] = k1 * values[[n, x - 1]] - k2 * values[[n, x - 2]];
        }
    }
    PolyMatrix::new(*p, values)
}
