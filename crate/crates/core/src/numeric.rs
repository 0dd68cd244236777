//! Exact rationals and outward-rounded floats for bound arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// A rational just above Euler's number.
pub(crate) fn e_upper() -> BigRational {
    BigRational::new(BigInt::from(2_718_281_828_459_046u64), BigInt::from(10u64).pow(15))
}

pub(crate) fn rational(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn pow(base: &BigRational, k: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= base;
    }
    out
}

/// A float no smaller than `x`.
pub(crate) fn to_f64_up(x: &BigRational) -> f64 {
    x.to_f64().map_or(f64::INFINITY, f64::next_up)
}

/// Each libm call or arithmetic step is accurate to about one ulp; moving a
/// result this many ulps outward covers the short formula chains used here.
const SLACK_ULPS: u32 = 16;

pub(crate) fn round_up(x: f64) -> f64 {
    (0..SLACK_ULPS).fold(x, |v, _| v.next_up())
}

pub(crate) fn round_down(x: f64) -> f64 {
    (0..SLACK_ULPS).fold(x, |v, _| v.next_down())
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
