use ndarray::Array2;

use super::init::argmax_abs;
use super::recurrence::SpecialThetaRow;
use super::split::{quarter_split, NsSource};
use super::{ImStConfig, StabilizationReport};
use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;
use crate::params::RacahParams;

/// Symmetric case: only cells with `s >= n` are computed; the rest follow from
/// `R~_s(n) = (-1)^(s-n) R~_n(s)`.
pub(super) fn generate_special(
    size: usize,
    cfg: &ImStConfig,
) -> Result<(PolyMatrix, StabilizationReport)> {
    let p = RacahParams::with_size(0.0, size, 0.0, 0.0)?;
    let ord = cfg.resolve_order(size)?;
    let big = size as f64;
    let last = size - 1;

    let mut row0 = vec![0.0; size];
    row0[last] = (2.0 * big - 1.0).sqrt() / big;
    for s in (0..last).rev() {
        let sf = s as f64;
        row0[s] = ((2.0 * sf + 1.0) / (2.0 * sf + 3.0)).sqrt() * row0[s + 1];
    }
    if size == 1 {
        let report = StabilizationReport {
            ind0: 0,
            ind_n1: 0,
            ns: 0,
            ns_source: NsSource::Symmetry,
            zeroed_part3: 0,
            zeroed_part4: 0,
            part3_guard: cfg.part3_guard,
            special_path: true,
        };
        return Ok((
            PolyMatrix::new(p, Array2::from_elem((1, 1), row0[0]))?,
            report,
        ));
    }

    let row1: Vec<f64> = (0..size)
        .map(|s| {
            let sf = s as f64;
            -(big * big - 2.0 * sf * sf - 2.0 * sf - 1.0) * 3f64.sqrt() / (big * big - 1.0)
                * row0[s]
        })
        .collect();

    // full last column, needed for its peak even when ord < N - 1
    let mut col_last = vec![0.0; size];
    col_last[0] = row0[last];
    col_last[1] = row1[last];
    for n in 1..last {
        let nf = n as f64;
        col_last[n + 1] =
            (big - nf - 1.0) * (2.0 * nf + 3.0).sqrt() / (big + nf + 1.0) / (2.0 * nf + 1.0).sqrt()
                * col_last[n];
    }
    let ind_n1 = argmax_abs(&col_last);

    let mut values = Array2::zeros((ord + 1, size));
    for s in 0..size {
        values[[0, s]] = row0[s];
        if ord >= 1 {
            values[[1, s]] = row1[s];
        }
    }
    for n in 2..=ord {
        values[[n, last]] = col_last[n];
    }

    let theta = cfg.threshold;
    let mut zeroed = 0;
    for n in 2..=ord {
        let coeff = SpecialThetaRow::new(size, n);
        let stabilized = n >= ind_n1;
        for s in n..last {
            let v = coeff.step(s as f64, values[[n - 1, s]], values[[n - 2, s]]);
            if !v.is_finite() {
                return Err(RacahError::breakdown(
                    n,
                    s,
                    format!("recurrence produced {v}"),
                ));
            }
            if stabilized && v.abs() < theta && v.abs() > values[[n - 1, s]].abs() {
                // cells (n, s..last) stay zero
                zeroed += last - s;
                break;
            }
            values[[n, s]] = v;
        }
    }
    if ord >= 1 {
        // the closed form for row 1 rounds differently from the row-0 sweep
        values[[1, 0]] = -values[[0, 1]];
    }
    for n in 2..=ord {
        for s in 0..n {
            let sign = if (n - s) % 2 == 0 { 1.0 } else { -1.0 };
            values[[n, s]] = sign * values[[s, n]];
        }
    }

    let col_first: Vec<f64> = (0..size)
        .map(|n| if n % 2 == 0 { row0[n] } else { -row0[n] })
        .collect();
    let report = StabilizationReport {
        ind0: argmax_abs(&col_first),
        ind_n1,
        ns: quarter_split(size),
        ns_source: NsSource::Symmetry,
        zeroed_part3: zeroed,
        zeroed_part4: 0,
        part3_guard: cfg.part3_guard,
        special_path: true,
    };
    Ok((PolyMatrix::new(p, values)?, report))
}
