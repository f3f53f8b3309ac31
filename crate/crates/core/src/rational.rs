//! Thin helpers over arbitrary-precision rationals.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(numer: u64, denom: u64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `base^exp`. A reduced fraction stays reduced under powers, so numerator
/// and denominator are raised separately with no gcd work.
pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let (mut bn, mut bd) = (base.numer().clone(), base.denom().clone());
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            num *= &bn;
            den *= &bd;
        }
        e >>= 1;
        if e > 0 {
            bn = &bn * &bn;
            bd = &bd * &bd;
        }
    }
    Rational::new_raw(num, den)
}

/// `1 - value`, skipping the gcd: `(d - n)/d` is already reduced.
pub fn complement(value: &Rational) -> Rational {
    let d = value.denom().clone();
    Rational::new_raw(&d - value.numer(), d)
}

pub fn is_probability(value: &Rational) -> bool {
    !value.is_negative() && *value <= Rational::one()
}

pub(crate) fn check_probability(value: &Rational) -> Result<()> {
    if is_probability(value) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(value.to_string()))
    }
}

pub(crate) fn display(value: &Rational) -> String {
    value.to_string()
}
