//! Exact scalars, dense polynomials and fraction-free linear algebra.

mod matrix;
mod poly;

pub use matrix::{det_exact, det_poly, nullspace, rank, solve_linear, solve_particular, Matrix};
pub use poly::Poly;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = num_rational::BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "ratio with zero denominator");
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn checked_div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn inv(a: &Scalar) -> Result<Scalar> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.recip())
}

/// `s^k` for any integer `k`; negative powers of zero are an error.
pub fn powi(s: &Scalar, k: i64) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for _ in 0..k.unsigned_abs() {
        acc *= s;
    }
    if k < 0 {
        inv(&acc)
    } else {
        Ok(acc)
    }
}

/// `s^k` for `k >= 0`.
pub fn pow(s: &Scalar, k: usize) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..k {
        acc *= s;
    }
    acc
}

/// Parse `"p/q"` or `"p"` (optional sign) into an exact scalar.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Comma-separated list of rationals.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Scalar>> {
    text.split(',').map(parse_scalar).collect()
}

/// Canonical exact text form, always `num/den`.
pub fn fmt_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Lossy conversion used only by the floating-point sanity tooling.
pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

/// `∏ (1 - z)` over the arguments: the `(z_1, …, z_k)_1` shorthand.
pub fn lin_prod(zs: &[Scalar]) -> Scalar {
    zs.iter().fold(Scalar::one(), |acc, z| acc * (Scalar::one() - z))
}
