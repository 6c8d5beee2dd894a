//! Extended-precision reference values of the weighted Racah polynomials,
//! evaluated straight from the hypergeometric definition.

mod bigreal;
mod gamma;

use ndarray::Array2;
use rayon::prelude::*;

pub use bigreal::{BigReal, Precision};
pub use gamma::{hyp4f3_terminating, hyp4f3_tracked, log_gamma, pochhammer, SeriesSum};

use crate::error::{RacahError, Result};
use crate::matrix::PolyMatrix;
use crate::params::RacahParams;

/// Largest lattice size accepted by [`exact_matrix`].
pub const EXACT_SIZE_LIMIT: usize = 256;

/// Bits kept clear of cancellation in every series sum.
const SAFE_BITS: i64 = 80;
const MAX_WIDENINGS: usize = 4;

/// Parameters lifted to extended precision, with the per-row and per-column
/// factors that do not depend on the series.
struct Lifted {
    prec: Precision,
    a: BigReal,
    b: BigReal,
    alpha: BigReal,
    beta: BigReal,
}

impl Lifted {
    fn new(p: &RacahParams, prec: Precision) -> Self {
        Self {
            prec,
            a: BigReal::from_f64(p.a, prec),
            b: BigReal::from_f64(p.b, prec),
            alpha: BigReal::from_f64(p.alpha, prec),
            beta: BigReal::from_f64(p.beta, prec),
        }
    }

    fn c(&self, x: f64) -> BigReal {
        BigReal::from_f64(x, self.prec)
    }

    fn lg(&self, x: BigReal) -> Result<BigReal> {
        log_gamma(&x, self.prec)
    }

    /// `log rho(s) + log(2s + 1)`, halved.
    fn half_log_column(&self, s: &BigReal) -> Result<BigReal> {
        let one = self.c(1.0);
        let (a, b, al, be) = (&self.a, &self.b, &self.alpha, &self.beta);
        let pos = [
            a + s + &one,
            b + s + al + &one,
            b + al - s,
            s - a + be + &one,
        ];
        let neg = [b + s + &one, b - s, s - a + &one, a - be + s + &one];
        let mut acc = (s + s + &one).ln();
        for v in pos {
            acc = &acc + &self.lg(v)?;
        }
        for v in neg {
            acc = &acc - &self.lg(v)?;
        }
        Ok(&acc * &self.c(0.5))
    }

    /// `log d_n^2`, halved.
    fn half_log_norm(&self, n: usize) -> Result<BigReal> {
        let one = self.c(1.0);
        let nn = self.c(n as f64);
        let (a, b, al, be) = (&self.a, &self.b, &self.alpha, &self.beta);
        let pos = [
            al + &nn + &one,
            be + &nn + &one,
            a + b + al + &nn + &one,
            b - a + al + be + &nn + &one,
        ];
        let neg = [&nn + &one, b - a - &nn, a + b - &nn - be];
        let mut acc = if n == 0 {
            -self.lg(al + be + self.c(2.0))?
        } else {
            -(&self.lg(al + be + &nn + &one)? + &(al + be + &nn + &nn + &one).ln())
        };
        for v in pos {
            acc = &acc + &self.lg(v)?;
        }
        for v in neg {
            acc = &acc - &self.lg(v)?;
        }
        Ok(&acc * &self.c(0.5))
    }

    /// `(a+b+alpha+1)_n (beta+1)_n (a-b+1)_n / n!`.
    fn lead(&self, n: usize) -> BigReal {
        let one = self.c(1.0);
        let (a, b, al, be) = (&self.a, &self.b, &self.alpha, &self.beta);
        let mut v = pochhammer(&(a + b + al + &one), n);
        v = &v * &pochhammer(&(be + &one), n);
        v = &v * &pochhammer(&(a - b + &one), n);
        &v / &pochhammer(&one, n)
    }

    fn series(&self, n: usize, s: f64) -> Result<SeriesSum> {
        let one = self.c(1.0);
        let ss = self.c(s);
        let (a, b, al, be) = (&self.a, &self.b, &self.alpha, &self.beta);
        let num = [
            self.c(-(n as f64)),
            a - &ss,
            a + &ss + &one,
            al + be + self.c(n as f64) + &one,
        ];
        let den = [be + &one, a + b + al + &one, a - b + &one];
        hyp4f3_tracked(&num, &den, &one, n + 1)
    }
}

/// Series value at `(n, s)`, widening the precision until cancellation
/// leaves at least [`SAFE_BITS`] correct bits.
fn stable_series(p: &RacahParams, base: &Lifted, n: usize, s: f64) -> Result<BigReal> {
    let mut sum = base.series(n, s)?;
    let mut prec = base.prec;
    for _ in 0..MAX_WIDENINGS {
        let lost = match sum.cancellation_bits() {
            Some(bits) => bits,
            // exact zero: confirm once at a wider precision
            None => prec.bits() as i64,
        };
        if lost + SAFE_BITS <= prec.bits() as i64 {
            break;
        }
        prec = prec.widened((lost + SAFE_BITS) as usize);
        sum = Lifted::new(p, prec).series(n, s)?;
        if sum.value.is_zero() {
            break;
        }
    }
    Ok(sum.value)
}

fn check_cell(p: &RacahParams, n: usize, s: f64) -> Result<()> {
    if n >= p.n_size {
        return Err(RacahError::DomainError(format!(
            "degree {n} outside [0, {}]",
            p.n_size - 1
        )));
    }
    let x = s - p.a;
    if !(x >= 0.0 && x <= (p.n_size - 1) as f64 && (x - x.round()).abs() < 1e-9) {
        return Err(RacahError::DomainError(format!(
            "s = {s} is not a lattice point of [{}, {}]",
            p.a,
            p.b - 1.0
        )));
    }
    Ok(())
}

/// Weighted polynomial value `R~_n(s)` at the default precision.
pub fn weighted_drp_exact(p: &RacahParams, n: usize, s: f64) -> Result<BigReal> {
    weighted_drp_exact_with(p, n, s, Precision::default())
}

/// Weighted polynomial value `R~_n(s) = R_n(s) sqrt(rho(s)(2s+1)/d_n^2)`.
pub fn weighted_drp_exact_with(
    p: &RacahParams,
    n: usize,
    s: f64,
    prec: Precision,
) -> Result<BigReal> {
    check_cell(p, n, s)?;
    let s = p.a + (s - p.a).round();
    let lifted = Lifted::new(p, prec);
    let f = stable_series(p, &lifted, n, s)?;
    let scale = (&lifted.half_log_column(&lifted.c(s))? - &lifted.half_log_norm(n)?).exp();
    Ok(&(&lifted.lead(n) * &f) * &scale)
}

/// Full reference matrix at the default precision.
pub fn exact_matrix(p: &RacahParams) -> Result<PolyMatrix> {
    exact_matrix_with(p, Precision::default())
}

/// Full `N x N` reference matrix, each entry rounded to the nearest double.
pub fn exact_matrix_with(p: &RacahParams, prec: Precision) -> Result<PolyMatrix> {
    let size = p.n_size;
    if size > EXACT_SIZE_LIMIT {
        return Err(RacahError::SizeLimit {
            size,
            limit: EXACT_SIZE_LIMIT,
        });
    }
    let lifted = Lifted::new(p, prec);
    let columns: Vec<BigReal> = (0..size)
        .into_par_iter()
        .map(|x| Lifted::new(p, prec).half_log_column(&lifted.c(p.s_of(x))))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<f64>> = (0..size)
        .into_par_iter()
        .map(|n| {
            let local = Lifted::new(p, prec);
            let half_norm = local.half_log_norm(n)?;
            let lead = local.lead(n);
            (0..size)
                .map(|x| {
                    let f = stable_series(p, &local, n, p.s_of(x))?;
                    let scale = (&columns[x] - &half_norm).exp();
                    Ok((&(&lead * &f) * &scale).to_f64())
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    let values = Array2::from_shape_vec((size, size), flat).expect("square shape");
    PolyMatrix::new(*p, values)
}
