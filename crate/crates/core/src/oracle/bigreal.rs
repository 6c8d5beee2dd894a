//! Extended-precision real numbers backed by `astro-float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

/// Working precision, expressed in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 50;

    pub fn digits(digits: u32) -> Self {
        Self {
            digits: digits.max(17),
        }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits, with a guard word on top of the requested digits.
    pub fn bits(&self) -> usize {
        let raw = (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 16;
        raw.div_ceil(64) * 64
    }

    /// A precision with at least `extra_bits` more mantissa bits.
    pub fn widened(&self, extra_bits: usize) -> Self {
        let extra_digits = (extra_bits as f64 / std::f64::consts::LOG2_10).ceil() as u32;
        Self::digits(self.digits + extra_digits)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::digits(Self::DEFAULT_DIGITS)
    }
}

/// Arbitrary-precision real carrying its own mantissa width.
#[derive(Clone)]
pub struct BigReal {
    v: BigFloat,
    p: usize,
}

impl BigReal {
    fn wrap(v: BigFloat, p: usize) -> Self {
        debug_assert!(!v.is_nan(), "BigReal produced NaN: {:?}", v.err());
        Self { v, p }
    }

    pub fn from_f64(x: f64, prec: Precision) -> Self {
        let p = prec.bits();
        Self::wrap(BigFloat::from_f64(x, p), p)
    }

    pub fn from_i64(x: i64, prec: Precision) -> Self {
        let p = prec.bits();
        Self::wrap(BigFloat::from_i64(x, p), p)
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    /// `num / den` rounded to `prec`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: Precision) -> Self {
        Self::from_bigint(num, prec) / Self::from_bigint(den, prec)
    }

    fn from_bigint(x: &BigInt, prec: Precision) -> Self {
        let p = prec.bits();
        let (sign, digits) = x.to_u64_digits();
        let mut acc = BigFloat::from_u64(0, p);
        let base =
            BigFloat::from_u64(1, p).mul(&BigFloat::from_f64(18446744073709551616.0, p), p, RM);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        Self::wrap(acc, p)
    }

    /// Small integer at the same mantissa width as `self`.
    pub fn int_like(&self, x: i64) -> Self {
        Self::wrap(BigFloat::from_i64(x, self.p), self.p)
    }

    /// Double at the same mantissa width as `self`.
    pub fn f64_like(&self, x: f64) -> Self {
        Self::wrap(BigFloat::from_f64(x, self.p), self.p)
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn pi(prec: Precision) -> Self {
        let p = prec.bits();
        let v = CONSTS.with(|cc| cc.borrow_mut().pi(p, RM));
        Self::wrap(v, p)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.v.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.p)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.ln(self.p, RM, &mut cc.borrow_mut()));
        Self::wrap(v, self.p)
    }

    pub fn exp(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.exp(self.p, RM, &mut cc.borrow_mut()));
        Self::wrap(v, self.p)
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn binary_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        self.v.exponent().map(|e| e as i64)
    }

    /// Nearest double. Values beyond the double range map to +-inf or +-0.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        // value = 0.m * 2^exp with the leading mantissa bit set in the top word
        let top = *words.last().expect("non-empty mantissa");
        let rest_nonzero = words[..words.len() - 1].iter().any(|&w| w != 0);
        let sticky = u64::from(rest_nonzero && top & 0x7ff == 0x400);
        let shift = exp as i64 - 64;
        let mag = if shift < -1200 {
            0.0
        } else if shift > 1100 {
            f64::INFINITY
        } else {
            let half = (shift / 2) as i32;
            ((top | sticky) as f64) * 2f64.powi(half) * 2f64.powi(shift as i32 - half)
        };
        match sign {
            Sign::Neg => -mag,
            Sign::Pos => mag,
        }
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.v.powi(n, self.p, RM), self.p)
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let p = self.p.max(rhs.p);
                BigReal::wrap(self.v.$inner(&rhs.v, p, RM), p)
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(self.v.neg(), self.p)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(self.v.clone().neg(), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_doubles() {
        let prec = Precision::default();
        for x in [1.0, -3.5, 0.1, 1e-300, 6.02e23, -2.0f64.powi(-1000)] {
            assert_eq!(BigReal::from_f64(x, prec).to_f64(), x);
        }
        assert_eq!(BigReal::zero(prec).to_f64(), 0.0);
    }

    #[test]
    fn division_rounds_to_nearest_double() {
        let prec = Precision::default();
        let q = BigReal::from_i64(3, prec) / BigReal::from_i64(7, prec);
        assert_eq!(q.to_f64(), 3.0 / 7.0);
        let q = BigReal::from_i64(-2, prec) / BigReal::from_i64(3, prec);
        assert_eq!(q.to_f64(), -2.0 / 3.0);
    }

    #[test]
    fn elementary_functions() {
        let prec = Precision::default();
        let ten = BigReal::from_i64(10, prec);
        assert_eq!(ten.ln().to_f64(), 10f64.ln());
        assert_eq!(BigReal::from_i64(2, prec).sqrt().to_f64(), 2f64.sqrt());
        assert_eq!(BigReal::one(prec).exp().to_f64(), std::f64::consts::E);
        assert_eq!(BigReal::pi(prec).to_f64(), std::f64::consts::PI);
    }

    #[test]
    fn bigint_conversion() {
        let prec = Precision::digits(60);
        let big: BigInt = BigInt::from(10).pow(40) + 7;
        let x = BigReal::from_ratio(&big, &BigInt::from(1), prec);
        assert_eq!(x.to_f64(), 1e40);
        let y = BigReal::from_ratio(&BigInt::from(-691), &BigInt::from(2730), prec);
        assert_eq!(y.to_f64(), -691.0 / 2730.0);
    }

    #[test]
    fn precision_bits_cover_digits() {
        assert!(Precision::digits(50).bits() >= 167);
        assert!(Precision::digits(50).widened(100).bits() >= Precision::digits(50).bits() + 100);
    }
}
