//! Coefficient forms as they circulate in print, kept only to show how they differ
//! from the corrected ones. None of them is used by a generator.
//!
//! The printed `E_n` is not wrong: both denominators expand to
//! `(beta+1)(a+1)(a+alpha+1) - (beta+1) b (b+alpha)`.
//!
//! | quantity | printed | corrected |
//! |---|---|---|
//! | `A` of the recurrence over `n` | `(n+1)(alpha+beta+n)` in the numerator | `(n+1)(alpha+beta+n+1)` |
//! | `B` of the recurrence over `n` | `(a^2+b^2+(a-beta)^2+(b+alpha)^2)/4` | same sum minus 2, over 4 |
//! | second term of the recurrence over `s` | `2 sigma(s-1)` | `s sigma(s-1)` |
//! | `D` of the first column | factor `(alpha+b-beta-n)` | `(a+b-beta-n)` |
//! | `E_n` of the second column | denominator `(a-b+1)(beta+1)(a+b+alpha+1)` | same value, expanded differently |
//! | `rho(a+1)/rho(a)` | factor `(b-a+1)` | `(b-a-1)` |

use crate::params::RacahParams;

/// Printed `A` and `B` of the recurrence over `n`.
pub fn zhu_n_a_b(p: &RacahParams, n: usize, s: f64) -> (f64, f64) {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    let ab = al + be;
    let big_a = (nf + 1.0) * (ab + nf) / ((ab + 2.0 * nf + 1.0) * (ab + 2.0 * nf + 2.0));
    let big_b = s * (s + 1.0) - (a * a + b * b + (a - be).powi(2) + (b + al).powi(2)) / 4.0
        + (ab + 2.0 * nf) * (ab + 2.0 * nf + 2.0) / 8.0
        - (be * be - al * al) * ((2.0 * b + al).powi(2) - (2.0 * a - be).powi(2))
            / (8.0 * (ab + 2.0 * nf) * (ab + 2.0 * nf + 2.0));
    (big_a, big_b)
}

/// Printed numerator factor of the second term of the recurrence over `s`.
pub fn zhu_s_second_factor(p: &RacahParams, s: f64) -> f64 {
    2.0 * crate::params::sigma(p, s - 1.0)
}

/// Printed `D` of the first-column step.
pub fn daoui_first_column_d(p: &RacahParams, n: usize) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    let ab = al + be;
    nf * (ab + 2.0 * nf + 1.0) * (ab + nf)
        / ((al + nf)
            * (be + nf)
            * (b - a + ab + nf)
            * (a + b + al + nf)
            * (ab + 2.0 * nf - 1.0)
            * (al + b - be - nf)
            * (b - a - nf))
}

/// Printed `E_n`; equal to the expanded form.
pub fn daoui_e(p: &RacahParams, n: usize) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    let nf = n as f64;
    1.0 + 2.0 * nf * (al + be + nf + 1.0) * (a + 1.0)
        / ((a - b + 1.0) * (be + 1.0) * (a + b + al + 1.0))
}

/// Printed `rho(a+1)/rho(a)`.
pub fn daoui_weight_ratio(p: &RacahParams) -> f64 {
    let (a, b, al, be) = (p.a, p.b, p.alpha, p.beta);
    (2.0 * a + 1.0) * (be + 1.0) * (b + al + a + 1.0) * (b - a + 1.0)
        / ((b + al - a - 1.0) * (2.0 * a - be + 1.0) * (a + b + 1.0))
}
