//! Racah parameters and the closed-form scalar functions shared by every generator.
//!
//! The lattice is `s = a, a + 1, ..., b - 1` with `N = b - a` nodes; column
//! `x` of a matrix corresponds to `s = a + x`.

use serde::{Deserialize, Serialize};

use crate::error::{RacahError, Result};

/// Largest natural-log magnitude accepted before a value is reported as
/// leaving the double range.
pub const LOG_RANGE_LIMIT: f64 = 700.0;

const INTEGRALITY_TOL: f64 = 1e-9;

/// Validated parameter tuple `(a, b, alpha, beta)` with `N = b - a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RacahParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub n_size: usize,
}

impl RacahParams {
    /// Validates `(a, b, alpha, beta)` against
    /// `a > -1/2`, `b > a`, `b - a` integral, `alpha > -1`, `beta > -1`, `beta < 2a + 1`.
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        validate_params(a, b, alpha, beta)
    }

    /// Builds parameters from the lower bound and the size, `b = a + N`.
    pub fn with_size(a: f64, n_size: usize, alpha: f64, beta: f64) -> Result<Self> {
        validate_params(a, a + n_size as f64, alpha, beta)
    }

    /// `a = alpha = beta = 0`, the symmetric special case.
    pub fn is_special(&self) -> bool {
        self.a == 0.0 && self.alpha == 0.0 && self.beta == 0.0
    }

    /// Lattice point for column `x`.
    #[inline]
    pub fn s_of(&self, x: usize) -> f64 {
        self.a + x as f64
    }

    fn check_s(&self, s: f64) -> Result<()> {
        if !(s >= self.a && s <= self.b - 1.0) {
            return Err(RacahError::DomainError(format!(
                "s = {s} outside [{}, {}]",
                self.a,
                self.b - 1.0
            )));
        }
        Ok(())
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n >= self.n_size {
            return Err(RacahError::DomainError(format!(
                "degree {n} outside [0, {}]",
                self.n_size - 1
            )));
        }
        Ok(())
    }
}

pub fn validate_params(a: f64, b: f64, alpha: f64, beta: f64) -> Result<RacahParams> {
    if ![a, b, alpha, beta].iter().all(|v| v.is_finite()) {
        return Err(RacahError::ConstraintViolation(
            "all parameters must be finite".into(),
        ));
    }
    if a <= -0.5 {
        return Err(RacahError::ConstraintViolation(format!(
            "a > -1/2 fails: a = {a}"
        )));
    }
    if b <= a {
        return Err(RacahError::ConstraintViolation(format!(
            "b > a fails: b = {b}, a = {a}"
        )));
    }
    let diff = b - a;
    let n = diff.round();
    if (diff - n).abs() > INTEGRALITY_TOL || n < 1.0 {
        return Err(RacahError::NonIntegerSize(diff));
    }
    if alpha <= -1.0 {
        return Err(RacahError::ConstraintViolation(format!(
            "alpha > -1 fails: alpha = {alpha}"
        )));
    }
    if beta <= -1.0 {
        return Err(RacahError::ConstraintViolation(format!(
            "beta > -1 fails: beta = {beta}"
        )));
    }
    if beta >= 2.0 * a + 1.0 {
        return Err(RacahError::ConstraintViolation(format!(
            "beta < 2a+1 fails: {beta} >= {}",
            2.0 * a + 1.0
        )));
    }
    Ok(RacahParams {
        a,
        b: a + n,
        alpha,
        beta,
        n_size: n as usize,
    })
}

/// Natural log of the gamma function for positive arguments.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma called with {x}");
    libm::lgamma(x)
}

/// `log rho(s)`.
pub fn log_weight_rho(p: &RacahParams, s: f64) -> Result<f64> {
    p.check_s(s)?;
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    Ok(ln_gamma(a + s + 1.0)
        + ln_gamma(b + s + al + 1.0)
        + ln_gamma(b + al - s)
        + ln_gamma(s - a + be + 1.0)
        - ln_gamma(b + s + 1.0)
        - ln_gamma(b - s)
        - ln_gamma(s - a + 1.0)
        - ln_gamma(a - be + s + 1.0))
}

/// Weight `rho(s)` of the Racah family on the lattice `s = a..b-1`.
pub fn weight_rho(p: &RacahParams, s: f64) -> Result<f64> {
    let log = log_weight_rho(p, s)?;
    if log.abs() > LOG_RANGE_LIMIT {
        return Err(RacahError::Overflow(format!("log rho({s}) = {log}")));
    }
    Ok(log.exp())
}

/// `log d_n^2`.
///
/// The factor `(alpha + beta + 2n + 1) Gamma(alpha + beta + n + 1)` is folded into
/// `Gamma(alpha + beta + 2)` at `n = 0` so that `alpha + beta < -1` stays on
/// positive gamma arguments.
pub fn log_norm_d2(p: &RacahParams, n: usize) -> Result<f64> {
    p.check_n(n)?;
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    let head = if n == 0 {
        ln_gamma(al + be + 2.0)
    } else {
        ln_gamma(al + be + nf + 1.0) + (al + be + 2.0 * nf + 1.0).ln()
    };
    Ok(ln_gamma(al + nf + 1.0)
        + ln_gamma(be + nf + 1.0)
        + ln_gamma(a + b + al + nf + 1.0)
        + ln_gamma(b - a + al + be + nf + 1.0)
        - head
        - ln_gamma(nf + 1.0)
        - ln_gamma(b - a - nf)
        - ln_gamma(a + b - nf - be))
}

/// Squared norm `d_n^2` of the unweighted polynomial of degree `n`.
pub fn norm_d2(p: &RacahParams, n: usize) -> Result<f64> {
    let log = log_norm_d2(p, n)?;
    if log.abs() > LOG_RANGE_LIMIT {
        return Err(RacahError::Overflow(format!("log d^2_{n} = {log}")));
    }
    Ok(log.exp())
}

/// `(sigma(s), tau(s), lambda_n)` of the difference equation on the lattice `x(s) = s(s+1)`.
///
/// `sigma(s) = (s + a - beta)(b + alpha - s)(s - a)(s + b)`.
pub fn sigma_tau_lambda(p: &RacahParams, s: f64, n: usize) -> (f64, f64, f64) {
    (sigma(p, s), tau(p, s), lambda(p, n))
}

#[inline]
pub fn sigma(p: &RacahParams, s: f64) -> f64 {
    (s + p.a - p.beta) * (p.b + p.alpha - s) * (s - p.a) * (s + p.b)
}

#[inline]
pub fn tau(p: &RacahParams, s: f64) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    a * (al + 1.0) * (a - be) + b * (b + al) * (be + 1.0)
        - (al + 1.0) * (be + 1.0)
        - s * (s + 1.0) * (al + be + 2.0)
}

#[inline]
pub fn lambda(p: &RacahParams, n: usize) -> f64 {
    let nf = n as f64;
    nf * (nf + 1.0 + p.alpha + p.beta)
}

/// `rho(s + 1) / rho(s)` as a product of linear factors; exactly zero at `s = b - 1`.
pub fn weight_ratio(p: &RacahParams, s: f64) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    if s >= b - 1.0 {
        return 0.0;
    }
    (a + s + 1.0) * (b + s + al + 1.0) * (s - a + be + 1.0) * (b - s - 1.0)
        / ((b + al - s - 1.0) * (b + s + 1.0) * (s - a + 1.0) * (a - be + s + 1.0))
}
