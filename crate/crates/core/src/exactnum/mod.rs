//! Exact arithmetic over the rationals and real quadratic fields `Q(sqrt(D))`.
//!
//! Every geometric or combinatorial decision elsewhere in the crate reduces to
//! a sign test on a [`QuadraticNumber`]; floats only appear when rendering.

mod parse;
mod quadratic;

pub use parse::{parse_decimal, parse_quadratic};
pub use quadratic::{ArithOp, QuadraticNumber};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored gcd-reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `floor(a / b)` for `b > 0`.
pub(crate) fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// `floor(y * sqrt(d))` for a non-square `d > 0`.
pub(crate) fn floor_surd(y: &BigInt, d: &BigInt) -> BigInt {
    if y.is_zero() {
        return BigInt::zero();
    }
    let root = (y * y * d).sqrt();
    if y.is_positive() {
        root
    } else {
        -root - 1
    }
}

/// Sign of `x + y*sqrt(d)` for integers and a non-square `d > 0`.
pub(crate) fn sign_surd(x: &BigInt, y: &BigInt, d: &BigInt) -> i8 {
    let sx = signum(x);
    let sy = signum(y);
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return sy;
    }
    // opposite signs: compare x^2 against y^2 d
    let lhs = x * x;
    let rhs = y * y * d;
    if lhs > rhs {
        sx
    } else {
        sy
    }
}

/// Same as [`sign_surd`] on machine integers, `None` on overflow.
pub(crate) fn sign_surd_i128(x: i128, y: i128, d: i128) -> Option<i8> {
    let sx = x.signum() as i8;
    let sy = y.signum() as i8;
    if sy == 0 {
        return Some(sx);
    }
    if sx == 0 || sx == sy {
        return Some(sy);
    }
    let lhs = x.checked_mul(x)?;
    let rhs = y.checked_mul(y)?.checked_mul(d)?;
    Some(if lhs > rhs { sx } else { sy })
}

pub(crate) fn signum(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Splits `n > 0` into `(s, m)` with `n = s^2 * m` and `m` square-free.
///
/// Trial division runs up to the cube root of `n` (capped at two million);
/// past the cap the remainder must be certified by a perfect-square test, and
/// an uncertifiable radicand is rejected.
pub fn square_free_decompose(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if !n.is_positive() {
        return Err(Error::BadRadicand(n.to_string()));
    }
    if let Ok(small) = u128::try_from(n) {
        let (s, m) = square_free_u128(small)?;
        return Ok((BigInt::from(s), BigInt::from(m)));
    }
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p: u64 = 2;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb > rest || p > SQUARE_FREE_CAP {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &pb;
        }
        if e % 2 == 1 {
            free *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            square *= r;
        } else {
            let pb = BigInt::from(p);
            if p > SQUARE_FREE_CAP && &pb * &pb * &pb <= rest {
                // two or more large prime factors could still hide a square
                return Err(Error::BadRadicand(format!(
                    "{n} is too large to certify square-free"
                )));
            }
            free *= rest;
        }
    }
    Ok((square, free))
}

const SQUARE_FREE_CAP: u64 = 2_000_000;

fn square_free_u128(n: u128) -> Result<(u128, u128)> {
    let mut rest = n;
    let mut square = 1u128;
    let mut free = 1u128;
    let mut p: u128 = 2;
    while p * p * p <= rest && p <= SQUARE_FREE_CAP as u128 {
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let r = rest.isqrt();
        if r * r == rest {
            square *= r;
        } else if p > SQUARE_FREE_CAP as u128 && p * p * p <= rest {
            return Err(Error::BadRadicand(format!(
                "{n} is too large to certify square-free"
            )));
        } else {
            free *= rest;
        }
    }
    Ok((square, free))
}

pub(crate) fn int_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

pub(crate) fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(num) => num
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::parse(0, format!("expected an integer, got {num}"))),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::parse(0, format!("expected an integer, got {s:?}"))),
        other => Err(Error::parse(0, format!("expected an integer, got {other}"))),
    }
}

pub(crate) fn rational_to_json(r: &Rational) -> Value {
    Value::Array(vec![int_to_json(r.numer()), int_to_json(r.denom())])
}

pub(crate) fn rational_from_json(v: &Value) -> Result<Rational> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::parse(0, "expected a [numerator, denominator] pair"))?;
    let num = int_from_json(&arr[0])?;
    let den = int_from_json(&arr[1])?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
