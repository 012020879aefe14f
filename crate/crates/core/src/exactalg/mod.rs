//! Exact scalar and matrix kernels shared by the counting modules.
//!
//! Integers and rationals are arbitrary precision throughout; nothing in here
//! rounds.

mod matrix;
mod poly;

pub use matrix::{IntMatrix, DEFAULT_PERMANENT_CAP};
pub use poly::{Monomial, MultiPoly, Var};

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Returns `s >= 0` with `s * s == n`.
///
/// A failure on a Pfaffian determinant means the orientation used to build
/// the matrix was not Pfaffian.
pub fn integer_sqrt_exact(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NotAPerfectSquare(n.clone()));
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Ok(s)
    } else {
        Err(Error::NotAPerfectSquare(n.clone()))
    }
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `base^exp` as a big integer.
pub fn pow_big(base: u64, exp: u64) -> BigInt {
    num_traits::pow::pow(BigInt::from(base), exp as usize)
}

/// Decimal expansion of `r` rounded half away from zero to `digits`
/// places after the point.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow::pow(BigInt::from(10), digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let (q, rem) = (scaled.numer() / scaled.denom(), scaled.numer() % scaled.denom());
    let twice = rem.abs() * 2u32;
    let mut q = q;
    if twice >= *scaled.denom() {
        q += if scaled.is_negative() { -1 } else { 1 };
    }
    let negative = q.is_negative();
    let mag = q.abs().to_string();
    let mag = if mag.len() <= digits { format!("{}{mag}", "0".repeat(digits + 1 - mag.len())) } else { mag };
    let (int, frac) = mag.split_at(mag.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
