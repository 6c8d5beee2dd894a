//! Peak of the last row located in the log domain.
//!
//! The last row `R~_{N-1}(s)` alternates in sign and underflows for large `N`,
//! but the ratio of neighbours does not. Magnitudes are carried as
//! [`LogLatticeValue`] through the three-term recurrence over `s`.

use serde::{Deserialize, Serialize};

use super::init::{first_column_ratio_sq, last_column_ratio_sq, log_initial_value_last};
use crate::params::{ln_gamma, sigma, tau, weight_ratio, RacahParams};

/// Beyond this `sigma(s)` the recurrence coefficients lose accuracy.
pub const SIGMA_ACCURACY_LIMIT: f64 = 4e15;

/// Signed value stored as `sign * exp(log_abs)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLatticeValue {
    pub log_abs: f64,
    /// -1, 0 or +1; zero only for an exact zero.
    pub sign: i8,
}

impl LogLatticeValue {
    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self {
                log_abs: f64::NEG_INFINITY,
                sign: 0,
            }
        } else {
            Self {
                log_abs: v.abs().ln(),
                sign: if v > 0.0 { 1 } else { -1 },
            }
        }
    }

    pub fn value(&self) -> f64 {
        f64::from(self.sign) * self.log_abs.exp()
    }
}

/// How the split index was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NsSource {
    /// Forward log-domain search from `s = a`.
    LogDomainSearch,
    /// Backward log-domain search from `s = b - 1`.
    LogDomainBackward,
    /// `floor(N/4 + 1/2)`.
    QuarterFallback,
    /// Not used by the symmetric special case; reported for reference.
    Symmetry,
}

/// Strategy for the split index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum NsStrategy {
    /// Forward search, then backward, then the quarter value.
    #[default]
    Auto,
    /// Forward search only, then the quarter value.
    LogDomainSearch,
    /// The quarter value directly.
    QuarterFallback,
}

/// `floor(N/4 + 1/2)`, kept inside `1..=N-1` when `N >= 2`.
pub fn quarter_split(size: usize) -> usize {
    let q = (size as f64 / 4.0 + 0.5).floor() as usize;
    if size < 2 {
        0
    } else {
        q.clamp(1, size - 1)
    }
}

/// `log|S e^E - 1|` and its sign, without overflow for large `E` and without
/// cancellation for small `|E|`.
fn log_exp_minus_one(e: f64, s: i8) -> (f64, i8) {
    let v = if e > 1.0 {
        // factor out e^E; -expm1(-E) = 1 - e^-E
        let t = if s > 0 {
            -(-e).exp_m1()
        } else {
            -1.0 - (-e).exp()
        };
        return (e + t.abs().ln(), if t > 0.0 { 1 } else { -1 });
    } else if s > 0 {
        e.exp_m1()
    } else {
        -(e.exp() + 1.0)
    };
    if v == 0.0 {
        return (f64::NEG_INFINITY, 0);
    }
    (v.abs().ln(), if v > 0.0 { 1 } else { -1 })
}

fn signum(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Coefficients of `R(s) = A1 sqrt(A) R(s-1) - B1 sqrt(B) R(s-2)` at degree `n`.
struct SCoeffs {
    a1: f64,
    b1: f64,
    log_a: f64,
    log_b: f64,
}

fn s_coeffs(p: &RacahParams, n: usize, s: f64) -> SCoeffs {
    let sg = sigma(p, s - 1.0);
    let t = tau(p, s - 1.0);
    let lam = crate::params::lambda(p, n);
    let d = (s - 1.0) * (sg + (2.0 * s - 1.0) * t);
    let a1 = (2.0 * s - 1.0) * (sg + (s - 1.0) * t - 2.0 * lam * s * (s - 1.0)) / d;
    let b1 = s * sg / d;
    let log_a = (weight_ratio(p, s - 1.0) * (2.0 * s + 1.0) / (2.0 * s - 1.0)).ln();
    let log_a_prev = (weight_ratio(p, s - 2.0) * (2.0 * s - 1.0) / (2.0 * s - 3.0)).ln();
    SCoeffs {
        a1,
        b1,
        log_a,
        log_b: log_a + log_a_prev,
    }
}

/// `log|R~_0(a)|`.
fn log_initial_value_first(p: &RacahParams) -> f64 {
    let (a, al, be) = (p.a, p.alpha, p.beta);
    let n = p.n_size as f64;
    (ln_gamma(2.0 * a + 2.0)
        + ln_gamma(n + al)
        + ln_gamma(al + be + 2.0)
        + ln_gamma(2.0 * a + n - be)
        - ln_gamma(2.0 * a - be + 1.0)
        - ln_gamma(2.0 * a + n + 1.0)
        - ln_gamma(al + 1.0)
        - ln_gamma(n + al + be + 1.0))
        / 2.0
}

/// Peak position test on three consecutive log magnitudes.
#[inline]
fn is_peak(prev: f64, mid: f64, next: f64) -> bool {
    mid > next && mid > prev
}

/// Forward search over the last row; `None` when no peak is found before
/// the coefficients lose accuracy or the row ends.
pub fn forward_search(p: &RacahParams) -> Option<usize> {
    let size = p.n_size;
    if size < 3 {
        return None;
    }
    let n = size - 1;
    let mut l0 = log_initial_value_first(p);
    for k in 0..n {
        l0 += first_column_ratio_sq(p, k).ln() / 2.0;
    }
    let s0: i8 = if n.is_multiple_of(2) { 1 } else { -1 };

    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    let e = 1.0
        - 2.0 * nf * (al + be + nf + 1.0) * (a + 1.0)
            / (a * (al + 1.0) * (a - be) + b * (be + 1.0) * (b + al)
                - (al + 1.0) * (be + 1.0)
                - a * (a + 1.0) * (al + be + 2.0));
    let ld = weight_ratio(p, a) * (2.0 * a + 3.0) / (2.0 * a + 1.0);
    if e == 0.0 || !(ld > 0.0) {
        return None;
    }
    let mut prev2 = LogLatticeValue {
        log_abs: l0,
        sign: s0,
    };
    let mut prev1 = LogLatticeValue {
        log_abs: e.abs().ln() + ld.ln() / 2.0 + l0,
        sign: signum(e) * s0,
    };
    for x in 2..size {
        let s = p.s_of(x);
        if sigma(p, s) > SIGMA_ACCURACY_LIMIT {
            return None;
        }
        let c = s_coeffs(p, n, s);
        if c.b1 == 0.0 || prev2.sign == 0 || prev1.sign == 0 {
            return None;
        }
        let s2 = signum(c.a1) * prev1.sign * signum(c.b1) * prev2.sign;
        let ex = c.a1.abs().ln() + c.log_a / 2.0 + prev1.log_abs
            - c.b1.abs().ln()
            - c.log_b / 2.0
            - prev2.log_abs;
        let (log_la, s3) = log_exp_minus_one(ex, s2);
        let cur = LogLatticeValue {
            log_abs: log_la + c.b1.abs().ln() + c.log_b / 2.0 + prev2.log_abs,
            sign: signum(c.b1) * prev2.sign * s3,
        };
        if !cur.log_abs.is_finite() && cur.log_abs != f64::NEG_INFINITY {
            return None;
        }
        if is_peak(prev2.log_abs, prev1.log_abs, cur.log_abs) {
            return Some(x - 1);
        }
        prev2 = prev1;
        prev1 = cur;
    }
    None
}

/// Backward search over the last row from `s = b - 1`.
pub fn backward_search(p: &RacahParams) -> Option<usize> {
    let size = p.n_size;
    if size < 3 {
        return None;
    }
    let n = size - 1;
    let mut l_last = log_initial_value_last(p);
    for k in 0..n {
        l_last += last_column_ratio_sq(p, k).ln() / 2.0;
    }
    // R(b) vanishes, so one step of the recurrence at s = b gives R(b - 2)
    let sb = p.b;
    let sg = sigma(p, sb - 1.0);
    let lam = crate::params::lambda(p, n);
    let lf = (2.0 * sb - 1.0) * (sg + (sb - 1.0) * tau(p, sb - 1.0) - 2.0 * lam * sb * (sb - 1.0))
        / (sb * sg);
    let lg = weight_ratio(p, sb - 2.0) * (2.0 * sb - 1.0) / (2.0 * sb - 3.0);
    if lf == 0.0 || !(lg > 0.0) || sg > SIGMA_ACCURACY_LIMIT {
        return None;
    }
    // right holds x, left holds x - 1
    let mut right = LogLatticeValue {
        log_abs: l_last,
        sign: 1,
    };
    let mut left = LogLatticeValue {
        log_abs: l_last + lf.abs().ln() - lg.ln() / 2.0,
        sign: signum(lf),
    };
    for x in (2..size).rev() {
        let s = p.s_of(x);
        if sigma(p, s) > SIGMA_ACCURACY_LIMIT {
            return None;
        }
        let c = s_coeffs(p, n, s);
        if c.b1 == 0.0 || right.sign == 0 || left.sign == 0 {
            return None;
        }
        let s2 = signum(c.a1) * left.sign * right.sign;
        let ex = c.a1.abs().ln() + c.log_a / 2.0 + left.log_abs - right.log_abs;
        let (log_la, s3) = log_exp_minus_one(ex, s2);
        let next = LogLatticeValue {
            log_abs: log_la - c.b1.abs().ln() - c.log_b / 2.0 + right.log_abs,
            sign: right.sign * s3 * signum(c.b1),
        };
        if is_peak(right.log_abs, left.log_abs, next.log_abs) {
            return Some(x - 1);
        }
        right = left;
        left = next;
    }
    None
}

/// Split index between the left and right halves of the plane, and its source.
pub fn last_row_split(p: &RacahParams, strategy: NsStrategy) -> (usize, NsSource) {
    let size = p.n_size;
    let valid = |ns: usize| ns >= 1 && ns < size;
    match strategy {
        NsStrategy::QuarterFallback => {}
        NsStrategy::LogDomainSearch => {
            if let Some(ns) = forward_search(p).filter(|&v| valid(v)) {
                return (ns, NsSource::LogDomainSearch);
            }
        }
        NsStrategy::Auto => {
            if let Some(ns) = forward_search(p).filter(|&v| valid(v)) {
                return (ns, NsSource::LogDomainSearch);
            }
            if let Some(ns) = backward_search(p).filter(|&v| valid(v)) {
                return (ns, NsSource::LogDomainBackward);
            }
        }
    }
    (quarter_split(size), NsSource::QuarterFallback)
}
