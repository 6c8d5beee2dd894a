//! Extended-precision log-gamma, Pochhammer symbols and the terminating 4F3 series.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bigreal::{BigReal, Precision};
use crate::error::{RacahError, Result};

/// Even-index Bernoulli numbers `B_0, B_2, B_4, ...`, grown on demand.
fn bernoulli_even(count: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut all = cache.lock().expect("bernoulli cache poisoned");
    let needed = 2 * count + 1;
    if all.len() < needed {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        while all.len() < needed {
            let m = all.len();
            if m == 0 {
                all.push(BigRational::one());
                continue;
            }
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (k, bk) in all.iter().enumerate() {
                if !bk.is_zero() {
                    acc += BigRational::from_integer(binom.clone()) * bk;
                }
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            all.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
    }
    (0..count).map(|j| all[2 * j].clone()).collect()
}

fn ratio_to_big(r: &BigRational, prec: Precision) -> BigReal {
    BigReal::from_ratio(r.numer(), r.denom(), prec)
}

/// `ln Gamma(x)` for `x > 0`, accurate to the working precision of `prec`.
///
/// Shifts the argument above a precision-dependent threshold and applies the
/// Stirling series there.
pub fn log_gamma(x: &BigReal, prec: Precision) -> Result<BigReal> {
    if !x.is_positive() {
        return Err(RacahError::DomainError(format!(
            "log-gamma needs a positive argument, got {}",
            x.to_f64()
        )));
    }
    let threshold = f64::from(prec.decimal_digits()).max(20.0) + 10.0;
    let xf = x.to_f64();
    let one = BigReal::one(prec);
    let mut z = x.clone();
    let mut shift_log = BigReal::zero(prec);
    if xf < threshold {
        let steps = (threshold - xf).ceil() as usize;
        let mut prod = one.clone();
        for _ in 0..steps {
            prod = &prod * &z;
            z = &z + &one;
        }
        shift_log = prod.ln();
    }

    let half = BigReal::from_f64(0.5, prec);
    let two_pi = BigReal::pi(prec) * BigReal::from_i64(2, prec);
    let ln_z = z.ln();
    let mut result = &(&(&z - &half) * &ln_z) - &z;
    result = &result + &(&two_pi.ln() * &half);

    let z2 = &z * &z;
    let mut zpow = z.clone();
    let tol_exp = result.binary_exponent().unwrap_or(0) - prec.bits() as i64 - 8;
    let max_terms = (prec.decimal_digits() as usize).max(40);
    let bern = bernoulli_even(max_terms + 1);
    for (j, b2j) in bern.iter().enumerate().skip(1) {
        let denom = BigInt::from((2 * j) * (2 * j - 1));
        let coef = ratio_to_big(&(b2j / BigRational::from_integer(denom)), prec);
        let term = &coef / &zpow;
        result = &result + &term;
        if term.binary_exponent().is_none_or(|e| e < tol_exp) {
            break;
        }
        zpow = &zpow * &z2;
    }
    Ok(&result - &shift_log)
}

/// Rising factorial `(x)_m`.
pub fn pochhammer(x: &BigReal, m: usize) -> BigReal {
    let one = x.int_like(1);
    let mut acc = one.clone();
    let mut cur = x.clone();
    for _ in 0..m {
        acc = &acc * &cur;
        cur = &cur + &one;
    }
    acc
}

/// Sum and largest term magnitude of a terminating 4F3 series at argument 1.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    pub value: BigReal,
    /// Binary exponent of the largest term, for cancellation estimates.
    pub max_term_exponent: Option<i64>,
}

impl SeriesSum {
    /// Bits lost to cancellation between the largest term and the sum;
    /// `None` when the sum is exactly zero.
    pub fn cancellation_bits(&self) -> Option<i64> {
        let top = self.max_term_exponent?;
        self.value.binary_exponent().map(|e| (top - e).max(0))
    }
}

/// Terminating `4F3(num; den; z)` summed over its first `n_terms` terms.
///
/// With `num[0] = -n` the series has exactly `n + 1` nonzero terms; pass
/// `n_terms = n + 1`. Terms are built by the running ratio
/// `t_{k+1} = t_k * prod(num + k) / prod(den + k) * z / (k + 1)`.
pub fn hyp4f3_terminating(
    num: &[BigReal; 4],
    den: &[BigReal; 3],
    z: &BigReal,
    n_terms: usize,
) -> Result<BigReal> {
    hyp4f3_tracked(num, den, z, n_terms).map(|s| s.value)
}

/// As [`hyp4f3_terminating`], also reporting the largest term.
pub fn hyp4f3_tracked(
    num: &[BigReal; 4],
    den: &[BigReal; 3],
    z: &BigReal,
    n_terms: usize,
) -> Result<SeriesSum> {
    let mut term = num[0].int_like(1);
    let mut sum = if n_terms == 0 {
        num[0].int_like(0)
    } else {
        term.clone()
    };
    let mut max_exp = term.binary_exponent();
    for k in 0..n_terms.saturating_sub(1) {
        let kk = term.int_like(k as i64);
        let mut ratio_num = z.clone();
        for u in num {
            ratio_num = &ratio_num * &(u + &kk);
        }
        let mut ratio_den = term.int_like(k as i64 + 1);
        for l in den {
            let f = l + &kk;
            if f.is_zero() {
                return Err(RacahError::PoleError { term: k });
            }
            ratio_den = &ratio_den * &f;
        }
        term = &(&term * &ratio_num) / &ratio_den;
        if term.is_zero() {
            break;
        }
        if let Some(e) = term.binary_exponent() {
            max_exp = Some(max_exp.map_or(e, |m| m.max(e)));
        }
        sum = &sum + &term;
    }
    Ok(SeriesSum {
        value: sum,
        max_term_exponent: max_exp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: f64) -> BigReal {
        BigReal::from_f64(x, Precision::default())
    }

    #[test]
    fn bernoulli_prefix() {
        let b = bernoulli_even(4);
        let expect = [(1, 1), (1, 6), (-1, 30), (1, 42)];
        for (got, (p, q)) in b.iter().zip(expect) {
            assert_eq!(*got, BigRational::new(BigInt::from(p), BigInt::from(q)));
        }
    }

    #[test]
    fn log_gamma_matches_factorials() {
        let prec = Precision::default();
        let mut fact = 1.0f64;
        for k in 1..25 {
            let lg = log_gamma(&big(k as f64 + 1.0), prec).unwrap().to_f64();
            fact *= k as f64;
            assert!(
                (lg - fact.ln()).abs() <= 4e-16 * fact.ln().max(1.0),
                "k={k}"
            );
        }
    }

    #[test]
    fn log_gamma_half_and_large() {
        let prec = Precision::default();
        let lg = log_gamma(&big(0.5), prec).unwrap();
        // ln sqrt(pi) = 0.57236494292470008707...
        assert_eq!(lg.to_f64(), 0.5723649429247001);
        let lg = log_gamma(&big(1000.0), prec).unwrap().to_f64();
        assert!((lg - 5905.220423209181).abs() < 1e-11);
        assert!(log_gamma(&big(0.0), prec).is_err());
    }

    #[test]
    fn log_gamma_high_precision_identity() {
        // ln Gamma(x + 1) - ln Gamma(x) = ln x, checked well below double precision
        let prec = Precision::digits(60);
        let x = BigReal::from_f64(7.3, prec);
        let d = &(&log_gamma(&(&x + &BigReal::one(prec)), prec).unwrap()
            - &log_gamma(&x, prec).unwrap())
            - &x.ln();
        assert!(d.binary_exponent().is_none_or(|e| e < -180));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&big(3.0), 4).to_f64(), 360.0);
        assert_eq!(pochhammer(&big(-2.0), 3).to_f64(), 0.0);
        assert_eq!(pochhammer(&big(2.5), 0).to_f64(), 1.0);
    }

    #[test]
    fn series_matches_saalschutz() {
        // 3F2(-n, a, b; c, 1 + a + b - c - n; 1) = (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n),
        // embedded as a 4F3 with a cancelling pair.
        let (a, b, c, n) = (big(1.5), big(2.25), big(4.0), 5usize);
        let d = &(&(&big(1.0) + &a) + &b) - &(&c + &big(n as f64));
        let extra = big(3.75);
        let s = hyp4f3_tracked(
            &[big(-(n as f64)), a.clone(), b.clone(), extra.clone()],
            &[c.clone(), d, extra],
            &big(1.0),
            n + 1,
        )
        .unwrap();
        let ca = &c - &a;
        let cb = &c - &b;
        let cab = &(&c - &a) - &b;
        let expect = &(&pochhammer(&ca, n) * &pochhammer(&cb, n))
            / &(&pochhammer(&c, n) * &pochhammer(&cab, n));
        assert!((s.value.to_f64() - expect.to_f64()).abs() < 1e-15 * expect.to_f64().abs());
    }

    #[test]
    fn series_two_term_expansion() {
        let (b, c, d, e, f, g) = (
            big(1.5),
            big(-2.0),
            big(0.75),
            big(3.0),
            big(1.25),
            big(-0.5),
        );
        let v = hyp4f3_terminating(&[big(-1.0), b, c, d], &[e, f, g], &big(1.0), 2).unwrap();
        let expect = 1.0 - 1.5 * -2.0 * 0.75 / (3.0 * 1.25 * -0.5);
        assert!((v.to_f64() - expect).abs() < 1e-15);
        let one = hyp4f3_terminating(
            &[big(0.0), big(2.0), big(3.0), big(4.0)],
            &[big(1.0), big(1.0), big(1.0)],
            &big(1.0),
            1,
        )
        .unwrap();
        assert_eq!(one.to_f64(), 1.0);
    }

    #[test]
    fn series_pole_is_reported() {
        let err = hyp4f3_terminating(
            &[big(-2.0), big(1.0), big(1.0), big(1.0)],
            &[big(0.0), big(1.0), big(1.0)],
            &big(1.0),
            3,
        )
        .unwrap_err();
        assert_eq!(err, RacahError::PoleError { term: 0 });
    }
}
