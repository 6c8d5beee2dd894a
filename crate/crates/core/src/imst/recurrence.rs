//! Three-term recurrence over the degree `n` at fixed `s`.

use super::init::guarded_sqrt;
use crate::error::Result;
use crate::params::RacahParams;

/// The `s`-independent parts of the coefficients for one degree `n >= 2`.
///
/// `R~_n(s) = theta1(s) R~_{n-1}(s) + theta2 R~_{n-2}(s)` with
/// `theta1(s) = (s(s+1) + c11) * t1` and `theta2` constant in `s`.
#[derive(Debug, Clone, Copy)]
pub struct ThetaRow {
    c11: f64,
    t1: f64,
    theta2: f64,
}

impl ThetaRow {
    pub fn new(p: &RacahParams, n: usize) -> Result<Self> {
        debug_assert!(n >= 2);
        let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
        let nf = n as f64;
        let ab = al + be;
        let t0 = nf * (ab + nf) / ((ab + 2.0 * nf - 1.0) * (ab + 2.0 * nf));
        let c11 = -(a * a + b * b + (a - be).powi(2) + (b + al).powi(2) - 2.0) / 4.0
            + (ab + 2.0 * nf - 2.0) * (ab + 2.0 * nf) / 8.0
            - (be * be - al * al) * ((b + al / 2.0).powi(2) - (a - be / 2.0).powi(2))
                / (2.0 * (ab + 2.0 * nf - 2.0) * (ab + 2.0 * nf));
        let h = nf - 1.0 + ab / 2.0;
        let t21 = -(al + nf - 1.0) * (be + nf - 1.0)
            / ((ab + 2.0 * nf - 2.0) * (ab + 2.0 * nf - 1.0))
            * ((a + b + (al - be) / 2.0).powi(2) - h * h)
            * ((b - a + ab / 2.0).powi(2) - h * h);
        let t12 = nf * (ab + nf) * (ab + 2.0 * nf + 1.0)
            / ((al + nf) * (be + nf) * (ab + 2.0 * nf - 1.0) * (a - b - ab - nf) * (a - b + nf))
            / ((a + b + al + nf) * (a + b - be - nf));
        // (ab + n - 1) / (ab + 2n - 3) is exactly 1 at n = 2; keep it exact when ab = -1
        let lead22 = if n == 2 {
            1.0
        } else {
            (ab + nf - 1.0) / (ab + 2.0 * nf - 3.0)
        };
        let t22 = (nf - 1.0) * lead22 * (ab + 2.0 * nf - 1.0)
            / ((al + nf - 1.0) * (be + nf - 1.0) * (a - b - ab - nf + 1.0) * (a - b + nf - 1.0))
            / ((a + b + al + nf - 1.0) * (a + b - be - nf + 1.0));
        let sq12 = guarded_sqrt(t12, n, 0, "theta12")?;
        let sq1222 = guarded_sqrt(t12 * t22, n, 0, "theta12*theta22")?;
        Ok(Self {
            c11,
            t1: sq12 / t0,
            theta2: t21 / t0 * sq1222,
        })
    }

    #[inline]
    pub fn theta1(&self, s: f64) -> f64 {
        (s * (s + 1.0) + self.c11) * self.t1
    }

    #[inline]
    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    #[inline]
    pub fn step(&self, s: f64, rm1: f64, rm2: f64) -> f64 {
        self.theta1(s) * rm1 + self.theta2 * rm2
    }
}

/// Coefficient rows for `n = 2..=ord`; entry `n - 2` holds degree `n`.
pub fn theta_table(p: &RacahParams, ord: usize) -> Result<Vec<ThetaRow>> {
    (2..=ord).map(|n| ThetaRow::new(p, n)).collect()
}

/// `R~_n(s)` from `R~_{n-1}(s)` and `R~_{n-2}(s)`, for `n >= 2`.
pub fn recurrence_step(p: &RacahParams, n: usize, s: f64, rm1: f64, rm2: f64) -> Result<f64> {
    if n < 2 || n >= p.n_size {
        return Err(crate::error::RacahError::DomainError(format!(
            "recurrence needs 2 <= n <= {}, got {n}",
            p.n_size.saturating_sub(1)
        )));
    }
    Ok(ThetaRow::new(p, n)?.step(s, rm1, rm2))
}

/// Coefficients of the symmetric case `a = alpha = beta = 0`.
#[derive(Debug, Clone, Copy)]
pub struct SpecialThetaRow {
    c: f64,
    t1: f64,
    theta2: f64,
}

impl SpecialThetaRow {
    pub fn new(size: usize, n: usize) -> Self {
        debug_assert!(n >= 2 && n < size);
        let nf = n as f64;
        let big = size as f64;
        let den = nf * (big - nf) * (big + nf);
        Self {
            c: nf * (nf - 1.0) - big * big + 1.0,
            t1: (4.0 * nf * nf - 1.0).sqrt() / den,
            theta2: -((nf - 1.0) * (big - nf + 1.0) * (big + nf - 1.0)) / den
                * ((2.0 * nf + 1.0) / (2.0 * nf - 3.0)).sqrt(),
        }
    }

    #[inline]
    pub fn step(&self, s: f64, rm1: f64, rm2: f64) -> f64 {
        (2.0 * s * (s + 1.0) + self.c) * self.t1 * rm1 + self.theta2 * rm2
    }
}
