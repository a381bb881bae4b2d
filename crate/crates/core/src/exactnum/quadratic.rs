use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{
    floor_div, floor_surd, int_from_json, int_to_json, rational_from_json, rational_to_json,
    rational_to_string, sign_surd, square_free_decompose, Rational,
};
use crate::error::{Error, Result};

/// An exact element `rat + surd * sqrt(D)` of a real quadratic field.
///
/// The representation is canonical: `D` is square-free, and a value with a
/// zero surd part always carries `D = 1`. Structural equality is therefore
/// value equality, and hashing is consistent with it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rat: Rational,
    surd: Rational,
    radicand: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QuadraticNumber {
    /// Builds `rat + surd * sqrt(radicand)`, extracting square factors from
    /// the radicand.
    pub fn new(rat: Rational, surd: Rational, radicand: BigInt) -> Result<Self> {
        let (square, free) = square_free_decompose(&radicand)?;
        let surd = surd * Rational::from_integer(square);
        if free.is_one() {
            return Ok(Self::from_rational(rat + surd));
        }
        Ok(Self::in_field(rat, surd, free))
    }

    /// Like [`QuadraticNumber::new`], skipping factorisation when `radicand`
    /// is a square multiple of the square-free `hint`.
    pub(crate) fn new_with_hint(
        rat: Rational,
        surd: Rational,
        radicand: BigInt,
        hint: &BigInt,
    ) -> Result<Self> {
        if hint > &BigInt::one() {
            let (q, r) = radicand.div_rem(hint);
            let s = q.sqrt();
            if r.is_zero() && &s * &s == q {
                return Ok(Self::in_field(
                    rat,
                    surd * Rational::from_integer(s),
                    hint.clone(),
                ));
            }
        }
        Self::new(rat, surd, radicand)
    }

    /// Caller guarantees `radicand` is square-free and greater than one.
    pub(crate) fn in_field(rat: Rational, surd: Rational, radicand: BigInt) -> Self {
        if surd.is_zero() {
            return Self::from_rational(rat);
        }
        debug_assert!(radicand > BigInt::one());
        QuadraticNumber {
            rat,
            surd,
            radicand,
        }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QuadraticNumber {
            rat,
            surd: Rational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(super::rational(num, den))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `sqrt(n)` for `n >= 0`.
    pub fn sqrt(n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::BadRadicand(n.to_string()));
        }
        if n == 0 {
            return Ok(Self::zero());
        }
        Self::new(Rational::zero(), Rational::one(), BigInt::from(n))
    }

    /// The golden ratio `(1 + sqrt(5)) / 2`.
    pub fn golden_ratio() -> Self {
        Self::in_field(
            super::rational(1, 2),
            super::rational(1, 2),
            BigInt::from(5),
        )
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn surd(&self) -> &Rational {
        &self.surd
    }

    /// Square-free radicand; `1` for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.surd.is_zero() && self.rat.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.surd.is_zero() && self.rat.is_integer()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.radicand.clone()),
            (_, true) => Ok(self.radicand.clone()),
            _ if self.radicand == other.radicand => Ok(self.radicand.clone()),
            _ => Err(Error::MixedRadicands(
                self.radicand.to_string(),
                other.radicand.to_string(),
            )),
        }
    }

    /// Whether both values live in a common quadratic field.
    pub fn compatible(&self, other: &Self) -> bool {
        self.common_radicand(other).is_ok()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::in_field(
            &self.rat + &other.rat,
            &self.surd + &other.surd,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::in_field(
            &self.rat - &other.rat,
            &self.surd - &other.surd,
            d,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(d.clone());
        let rat = &self.rat * &other.rat + &self.surd * &other.surd * dr;
        let surd = &self.rat * &other.surd + &self.surd * &other.rat;
        Ok(Self::in_field(rat, surd, d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let inv = other.recip()?;
        // recip keeps other's field; re-tag with the common one
        let inv = Self::in_field(inv.rat, inv.surd, d);
        self.checked_mul(&inv)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.checked_add(other),
            ArithOp::Sub => self.checked_sub(other),
            ArithOp::Mul => self.checked_mul(other),
            ArithOp::Div => self.checked_div(other),
        }
    }

    /// `rat^2 - surd^2 * D`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat
            - &self.surd * &self.surd * Rational::from_integer(self.radicand.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::in_field(
            &self.rat / &n,
            -(&self.surd / &n),
            self.radicand.clone(),
        ))
    }

    /// The algebraic conjugate `rat - surd * sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        Self::in_field(self.rat.clone(), -self.surd.clone(), self.radicand.clone())
    }

    /// Writes the value as `(x + y*sqrt(D)) / w` with integers and `w > 0`.
    pub(crate) fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let w = self.rat.denom().lcm(self.surd.denom());
        let x = self.rat.numer() * (&w / self.rat.denom());
        let y = self.surd.numer() * (&w / self.surd.denom());
        (x, y, w)
    }

    /// Exact sign as `-1`, `0` or `1`.
    pub fn sign(&self) -> i8 {
        let (x, y, _) = self.integer_form();
        if y.is_zero() {
            return super::signum(&x);
        }
        sign_surd(&x, &y, &self.radicand)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn floor(&self) -> BigInt {
        let (x, y, w) = self.integer_form();
        if y.is_zero() {
            return floor_div(&x, &w);
        }
        floor_div(&(x + floor_surd(&y, &self.radicand)), &w)
    }

    pub fn ceil(&self) -> BigInt {
        if self.is_rational() {
            return -floor_div(&-self.rat.numer(), self.rat.denom());
        }
        self.floor() + 1
    }

    /// `(floor(x), ceil(x))`; the two agree exactly when `x` is an integer.
    pub fn floor_ceil(&self) -> (BigInt, BigInt) {
        (self.floor(), self.ceil())
    }

    /// `x - floor(x)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &Self::from_integer(self.floor())
    }

    /// Exact comparison; errors on incompatible radicands.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.checked_sub(other)?.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Dyadic approximation `m * 2^e` with relative error below
    /// `2^(1 - precision)`.
    pub fn to_dyadic(&self, precision: u32) -> (BigInt, i64) {
        if self.is_zero() {
            return (BigInt::zero(), 0);
        }
        let (x, y, w) = self.integer_form();
        let rough = x.abs().bits() as i64 + y.abs().bits() as i64 / 2 + 2;
        let mut k = precision as i64 + 2 - rough + w.bits() as i64;
        loop {
            let scaled = self * &Self::from_rational(pow2(k));
            let m = scaled.floor();
            let bits = m.abs().bits() as i64;
            if bits > precision as i64 {
                return (m, -k);
            }
            k += precision as i64 + 2 - bits;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.to_dyadic(64);
        let mf = m.to_f64().unwrap_or(f64::NAN);
        mf * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rat": rational_to_json(&self.rat),
            "surd": rational_to_json(&self.surd),
            "D": int_to_json(&self.radicand),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::parse(0, format!("missing field {name:?}")))
        };
        let rat = rational_from_json(field("rat")?)?;
        let surd = rational_from_json(field("surd")?)?;
        let d = int_from_json(field("D")?)?;
        Self::new(rat, surd, d)
    }
}

fn pow2(k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

impl Default for QuadraticNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl PartialOrd for QuadraticNumber {
    /// `None` when the radicands are incompatible.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", rational_to_string(&self.rat));
        }
        let root = format!("sqrt({})", self.radicand);
        let mag = self.surd.abs();
        let surd_text = if mag.is_one() {
            root
        } else {
            format!("{}*{}", rational_to_string(&mag), root)
        };
        if self.rat.is_zero() {
            if self.surd.is_negative() {
                write!(f, "-{surd_text}")
            } else {
                write!(f, "{surd_text}")
            }
        } else {
            let op = if self.surd.is_negative() { '-' } else { '+' };
            write!(f, "{} {} {}", rational_to_string(&self.rat), op, surd_text)
        }
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QN({self})")
    }
}

impl std::str::FromStr for QuadraticNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::parse_quadratic(s)
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> Self::Output {
        Self::in_field(-self.rat, -self.surd, self.radicand)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> Self::Output {
        -(self.clone())
    }
}

// Operator forms panic on incompatible radicands; the checked_* methods are
// the fallible surface.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {} and {}", e, self, rhs),
                }
            }
        }
        impl $trait<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);
