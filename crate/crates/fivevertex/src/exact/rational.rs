//! Arbitrary-precision rationals: the base field of every computation.
//!
//! Backed by `num_rational::BigRational`, which keeps values canonical
//! (positive denominator, gcd-reduced, zero as 0/1). Helpers here cover
//! construction, the `p/q` wire format, factorials and exact square roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Renders a rational in the `p/q` wire format: optional sign on `p`,
/// `q > 0`, no whitespace, denominator always present (`0/1`, `-3/2`).
pub fn to_wire(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses the `p/q` wire format; a bare integer `p` is accepted as `p/1`.
pub fn from_wire(text: &str) -> Result<Rational, Error> {
    let bad = || Error::InvalidInput(format!("cannot parse rational `{text}`"));
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num_str.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den_str.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

/// Decimal rendering with `digits` places after the point, truncated
/// toward zero. Exact values are reported through [`to_wire`]; this is
/// only for plot-ready tables.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let sign = if value.is_negative() { "-" } else { "" };
    let abs = value.abs();
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

/// Exact factorial as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Pochhammer symbol `(q)_k = q (q+1) ... (q+k-1)`.
pub fn pochhammer(q: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= q + rat_int(i as i64);
    }
    acc
}

/// Exact integer power with negative exponents allowed (base must be
/// nonzero for negative exponents).
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    base.pow(i32::try_from(exp).expect("exponent fits in i32"))
}

fn bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    if &(&root * &root) == n {
        Some(root)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt(value: &Rational) -> Option<Rational> {
    let num = bigint_sqrt(value.numer())?;
    let den = bigint_sqrt(value.denom())?;
    Some(Rational::new(num, den))
}
