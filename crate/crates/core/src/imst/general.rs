use ndarray::Array2;
use rayon::prelude::*;

use super::init::{
    column_first, column_last, controlling_indices, initial_row0, initial_row1, initial_value_last,
};
use super::recurrence::{theta_table, ThetaRow};
use super::split::{last_row_split, NsSource};
use super::{ImStConfig, Part3Guard, StabilizationReport};
use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;
use crate::params::RacahParams;

/// Where an interior column sits and from which degree it is stabilized.
#[derive(Debug, Clone, Copy)]
enum Region {
    /// `x >= ns`; cut needs the configured guard.
    Right { stab_from: usize },
    /// `x < ns`; plain cut.
    Left { stab_from: usize },
}

struct ColumnOut {
    values: Vec<f64>,
    zeroed: usize,
}

fn fill_column(
    s: f64,
    x: usize,
    head: [f64; 2],
    thetas: &[ThetaRow],
    ord: usize,
    region: Region,
    cfg: &ImStConfig,
) -> Result<ColumnOut> {
    let mut col = vec![0.0; ord + 1];
    col[0] = head[0];
    if ord >= 1 {
        col[1] = head[1];
    }
    let (stab_from, guarded) = match region {
        Region::Right { stab_from } => (stab_from, true),
        Region::Left { stab_from } => (stab_from, false),
    };
    let theta = cfg.threshold;
    let mut seen_small = col[..ord.min(1) + 1].iter().any(|v| v.abs() < theta);
    let mut seen_large = col[..ord.min(1) + 1].iter().any(|v| v.abs() > theta);
    let mut zeroed = 0;
    for n in 2..=ord {
        let v = thetas[n - 2].step(s, col[n - 1], col[n - 2]);
        if !v.is_finite() {
            return Err(RacahError::breakdown(
                n,
                x,
                format!("recurrence produced {v}"),
            ));
        }
        if n >= stab_from {
            let guard = !guarded
                || match cfg.part3_guard {
                    Part3Guard::SmallEarlier => seen_small,
                    Part3Guard::LargeEarlier => seen_large,
                };
            if v.abs() < theta && v.abs() > col[n - 1].abs() && guard {
                // cells n..=ord stay zero
                zeroed = ord + 1 - n;
                break;
            }
        }
        col[n] = v;
        seen_small |= v.abs() < theta;
        seen_large |= v.abs() > theta;
    }
    Ok(ColumnOut {
        values: col,
        zeroed,
    })
}

pub(super) fn generate_general(
    p: &RacahParams,
    cfg: &ImStConfig,
) -> Result<(PolyMatrix, StabilizationReport)> {
    let size = p.n_size;
    let ord = cfg.resolve_order(size)?;
    let r_last = initial_value_last(p);
    if !(r_last.is_finite() && r_last > 0.0) {
        return Err(RacahError::breakdown(
            0,
            size - 1,
            format!("initial value {r_last}"),
        ));
    }
    if size == 1 {
        let report = StabilizationReport {
            ind0: 0,
            ind_n1: 0,
            ns: 0,
            ns_source: NsSource::QuarterFallback,
            zeroed_part3: 0,
            zeroed_part4: 0,
            part3_guard: cfg.part3_guard,
            special_path: false,
        };
        return Ok((
            PolyMatrix::new(*p, Array2::from_elem((1, 1), r_last))?,
            report,
        ));
    }

    let row0 = initial_row0(p, r_last)?;
    let row1 = initial_row1(p, &row0)?;
    let col_first = column_first(p, row0[0], size - 1)?;
    let col_last = column_last(p, r_last, size - 1)?;
    let (ind0, ind_n1) = controlling_indices(&col_first, &col_last);
    let (ns, ns_source) = last_row_split(p, cfg.ns_strategy);
    let thetas = theta_table(p, ord)?;

    let columns: Vec<(usize, ColumnOut)> = (1..size - 1)
        .into_par_iter()
        .map(|x| {
            let region = if x >= ns {
                Region::Right {
                    stab_from: ind_n1.max(2),
                }
            } else {
                Region::Left {
                    stab_from: (ind0 + 1).max(2),
                }
            };
            fill_column(p.s_of(x), x, [row0[x], row1[x]], &thetas, ord, region, cfg).map(|c| (x, c))
        })
        .collect::<Result<_>>()?;

    let mut values = Array2::zeros((ord + 1, size));
    #[cfg(debug_assertions)]
    let mut writes = Array2::<u8>::zeros((ord + 1, size));
    for x in 0..size {
        values[[0, x]] = row0[x];
        #[cfg(debug_assertions)]
        {
            writes[[0, x]] += 1;
        }
        if ord >= 1 {
            values[[1, x]] = row1[x];
            #[cfg(debug_assertions)]
            {
                writes[[1, x]] += 1;
            }
        }
    }
    for n in 2..=ord {
        values[[n, 0]] = col_first[n];
        values[[n, size - 1]] = col_last[n];
        #[cfg(debug_assertions)]
        {
            writes[[n, 0]] += 1;
            writes[[n, size - 1]] += 1;
        }
    }
    let mut zeroed_part3 = 0;
    let mut zeroed_part4 = 0;
    for (x, out) in columns {
        for n in 2..=ord {
            values[[n, x]] = out.values[n];
            #[cfg(debug_assertions)]
            {
                writes[[n, x]] += 1;
            }
        }
        if x >= ns {
            zeroed_part3 += out.zeroed;
        } else {
            zeroed_part4 += out.zeroed;
        }
    }
    #[cfg(debug_assertions)]
    debug_assert!(writes.iter().all(|&w| w == 1), "partition is not exact");

    let report = StabilizationReport {
        ind0,
        ind_n1,
        ns,
        ns_source,
        zeroed_part3,
        zeroed_part4,
        part3_guard: cfg.part3_guard,
        special_path: false,
    };
    Ok((PolyMatrix::new(*p, values)?, report))
}
