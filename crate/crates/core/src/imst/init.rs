//! First row, second row and the two border columns.

use crate::error::{RacahError, Result};
use crate::params::{ln_gamma, RacahParams};

/// Tolerance below zero accepted for square-root arguments that are
/// analytically nonnegative.
pub const SQRT_CLAMP: f64 = -1e-14;

/// Square root of an analytically nonnegative quantity.
///
/// Arguments in `(-1e-14, 0)` are treated as zero; anything more negative, or
/// non-finite, is a breakdown at `(n, x)`.
#[inline]
pub(crate) fn guarded_sqrt(v: f64, n: usize, x: usize, what: &str) -> Result<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v.sqrt())
    } else if v > SQRT_CLAMP {
        Ok(0.0)
    } else {
        Err(RacahError::breakdown(
            n,
            x,
            format!("{what}: square-root argument {v}"),
        ))
    }
}

/// `log R~_0(a + N - 1)`, the eight-term log-gamma expression halved.
pub fn log_initial_value_last(p: &RacahParams) -> f64 {
    let (a, al, be) = (p.a, p.alpha, p.beta);
    let n = p.n_size as f64;
    let y = ln_gamma(al + be + 2.0)
        + ln_gamma(2.0 * a + n)
        + ln_gamma(be + n)
        + ln_gamma(2.0 * a + 2.0 * n + al)
        - ln_gamma(2.0 * a + 2.0 * n - 1.0)
        - ln_gamma(be + 1.0)
        - ln_gamma(al + be + n + 1.0)
        - ln_gamma(2.0 * a + n + al + 1.0);
    y / 2.0
}

/// `R~_0(a + N - 1) = exp(Y / 2)`.
pub fn initial_value_last(p: &RacahParams) -> f64 {
    log_initial_value_last(p).exp()
}

/// `(R~_0(s) / R~_0(s + 1))^2`.
#[inline]
fn row0_ratio_sq(p: &RacahParams, s: f64) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    (2.0 * s + 1.0) * (a - be + s + 1.0) * (b + s + 1.0) * (b + al - s - 1.0) * (a - s - 1.0)
        / ((a + s + 1.0)
            * (b + al + s + 1.0)
            * (a - be - s - 1.0)
            * (2.0 * s + 3.0)
            * (b - s - 1.0))
}

/// Row 0 filled right to left from `r_last = R~_0(a + N - 1)`.
pub fn initial_row0(p: &RacahParams, r_last: f64) -> Result<Vec<f64>> {
    let size = p.n_size;
    let mut row = vec![0.0; size];
    row[size - 1] = r_last;
    for x in (0..size - 1).rev() {
        let r = guarded_sqrt(row0_ratio_sq(p, p.s_of(x)), 0, x, "row 0")?;
        row[x] = r * row[x + 1];
    }
    Ok(row)
}

/// `R~_1(s) / R~_0(s)`.
#[inline]
pub(crate) fn row1_multiplier(p: &RacahParams, s: f64, scale: f64) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let poly = ((-a + b - 1.0) * al + b * b - s * s - a - s - 1.0) * be
        + (a * a - s * s + b - s - 1.0) * al
        + a * a
        + b * b
        - 2.0 * (s * s + s)
        - 1.0;
    -poly * scale
}

/// The `s`-independent square-root factor of the row-1 multiplier.
pub(crate) fn row1_scale(p: &RacahParams) -> Result<f64> {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let den = (a - b + 1.0)
        * (a + b - be - 1.0)
        * (al + 1.0)
        * (be + 1.0)
        * (a - b - al - be - 1.0)
        * (a + b + al + 1.0);
    guarded_sqrt((al + be + 3.0) / den, 1, 0, "row 1")
}

/// Row 1 as a pointwise multiple of row 0.
pub fn initial_row1(p: &RacahParams, row0: &[f64]) -> Result<Vec<f64>> {
    if p.n_size < 2 {
        return Err(RacahError::DomainError("row 1 needs N >= 2".into()));
    }
    let scale = row1_scale(p)?;
    Ok(row0
        .iter()
        .enumerate()
        .map(|(x, r0)| row1_multiplier(p, p.s_of(x), scale) * r0)
        .collect())
}

/// `(R~_{n+1}(a) / R~_n(a))^2`.
#[inline]
pub(crate) fn first_column_ratio_sq(p: &RacahParams, n: usize) -> f64 {
    let (a, al, be) = (p.a, p.alpha, p.beta);
    let big = p.n_size as f64;
    let n = n as f64;
    (big - n - 1.0)
        * (al + be + 2.0 * n + 3.0)
        * (al + be + n + 1.0)
        * (be + n + 1.0)
        * (2.0 * a + big + al + n + 1.0)
        / ((2.0 * a + big - be - n - 1.0)
            * (al + be + 2.0 * n + 1.0)
            * (al + n + 1.0)
            * (big + al + be + n + 1.0)
            * (n + 1.0))
}

/// `(R~_{n+1}(a + N - 1) / R~_n(a + N - 1))^2`.
#[inline]
pub(crate) fn last_column_ratio_sq(p: &RacahParams, n: usize) -> f64 {
    let (a, al, be) = (p.a, p.alpha, p.beta);
    let big = p.n_size as f64;
    let n = n as f64;
    (big - n - 1.0)
        * (al + be + 2.0 * n + 3.0)
        * (al + be + n + 1.0)
        * (al + n + 1.0)
        * (2.0 * a + big - be - n - 1.0)
        / ((2.0 * a + big + al + n + 1.0)
            * (al + be + 2.0 * n + 1.0)
            * (be + n + 1.0)
            * (big + al + be + n + 1.0)
            * (n + 1.0))
}

/// `R~_n(a)` for `n = 0..=ord`; consecutive entries alternate in sign.
pub fn column_first(p: &RacahParams, r0a: f64, ord: usize) -> Result<Vec<f64>> {
    let mut col = Vec::with_capacity(ord + 1);
    col.push(r0a);
    for n in 0..ord {
        let r = guarded_sqrt(first_column_ratio_sq(p, n), n + 1, 0, "first column")?;
        col.push(-r * col[n]);
    }
    Ok(col)
}

/// `R~_n(a + N - 1)` for `n = 0..=ord`.
pub fn column_last(p: &RacahParams, r0last: f64, ord: usize) -> Result<Vec<f64>> {
    let last = p.n_size - 1;
    let mut col = Vec::with_capacity(ord + 1);
    col.push(r0last);
    for n in 0..ord {
        let r = guarded_sqrt(last_column_ratio_sq(p, n), n + 1, last, "last column")?;
        col.push(r * col[n]);
    }
    Ok(col)
}

/// Index of the largest magnitude; ties go to the smaller index.
pub fn argmax_abs(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate().skip(1) {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    best
}

/// `(ind0, indN1)`: magnitude peaks of the first and last columns.
pub fn controlling_indices(col_first: &[f64], col_last: &[f64]) -> (usize, usize) {
    (argmax_abs(col_first), argmax_abs(col_last))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_case_closed_forms() {
        for n in [2usize, 5, 16] {
            let p = RacahParams::with_size(0.0, n, 0.0, 0.0).unwrap();
            let nn = n as f64;
            let last = initial_value_last(&p);
            assert!((last - (2.0 * nn - 1.0).sqrt() / nn).abs() < 1e-15);
            let row0 = initial_row0(&p, last).unwrap();
            for (s, v) in row0.iter().enumerate() {
                assert!((v - (2.0 * s as f64 + 1.0).sqrt() / nn).abs() < 1e-15);
            }
            let row1 = initial_row1(&p, &row0).unwrap();
            for (s, v) in row1.iter().enumerate() {
                let sf = s as f64;
                let expect = -(nn * nn - 2.0 * sf * sf - 2.0 * sf - 1.0) * 3f64.sqrt()
                    / (nn * nn - 1.0)
                    * row0[s];
                assert!((v - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sqrt_clamp() {
        assert_eq!(guarded_sqrt(-1e-15, 0, 0, "t").unwrap(), 0.0);
        assert!(guarded_sqrt(-1e-13, 0, 0, "t").is_err());
        assert!(guarded_sqrt(f64::NAN, 0, 0, "t").is_err());
    }

    #[test]
    fn argmax_ties_take_the_smaller_index() {
        assert_eq!(argmax_abs(&[1.0, -3.0, 3.0, 2.0]), 1);
        assert_eq!(argmax_abs(&[5.0, 4.0, 3.0]), 0);
    }

    #[test]
    fn first_column_alternates() {
        let p = RacahParams::with_size(4.0, 16, 2.0, 1.0).unwrap();
        let col = column_first(&p, 0.3, 15).unwrap();
        for w in col.windows(2) {
            assert!(w[0] * w[1] < 0.0);
        }
    }

    #[test]
    fn wide_parameters_stay_finite() {
        let p = RacahParams::new(800.0, 1800.0, 400.0, 100.0).unwrap();
        let v = initial_value_last(&p);
        assert!(v.is_finite() && v > 0.0);
    }
}
