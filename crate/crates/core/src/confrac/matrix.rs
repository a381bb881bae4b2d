use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{int_from_json, int_to_json, QuadraticNumber, Rational};

/// An element of GL(2, Z), stored as the array `[[a, b], [c, d]]`.
///
/// It acts on reals by `x -> (c + x d) / (a + x b)`. Under this convention
/// the ordinary matrix product is the composition of actions:
/// `apply(M1 * M2, x) = apply(M1, apply(M2, x))`. The action coincides with
/// the textbook action `x -> (p x + q) / (r x + s)` of `[[d, c], [b, a]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModularMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl ModularMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = ModularMatrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.det();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(m)
    }

    /// From the textbook form `[[p, q], [r, s]]`, acting by `(p x + q) / (r x + s)`.
    pub fn from_standard(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        Self::new(s, r, q, p)
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1).expect("unimodular")
    }

    /// Generators of GL(2, Z) together with their inverses.
    pub fn generators() -> Vec<Self> {
        [
            (1, 1, 0, 1),
            (1, -1, 0, 1),
            (1, 0, 1, 1),
            (1, 0, -1, 1),
            (0, 1, 1, 0),
            (-1, 0, 0, 1),
        ]
        .into_iter()
        .map(|(a, b, c, d)| Self::new(a, b, c, d).expect("unimodular"))
        .collect()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        ModularMatrix {
            a: &det * &self.d,
            b: -(&det * &self.b),
            c: -(&det * &self.c),
            d: &det * &self.a,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `(c + x d) / (a + x b)`.
    pub fn apply(&self, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        let q = |n: &BigInt| QuadraticNumber::from_rational(Rational::from_integer(n.clone()));
        let den = q(&self.a).checked_add(&x.checked_mul(&q(&self.b))?)?;
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        let num = q(&self.c).checked_add(&x.checked_mul(&q(&self.d))?)?;
        num.checked_div(&den)
    }

    pub fn to_json(&self) -> Value {
        json!([
            [int_to_json(&self.a), int_to_json(&self.b)],
            [int_to_json(&self.c), int_to_json(&self.d)]
        ])
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::parse(0, "expected [[a, b], [c, d]]");
        let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        let mut out = Vec::with_capacity(4);
        for row in rows {
            let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
            for e in row {
                out.push(int_from_json(e)?);
            }
        }
        let [a, b, c, d]: [BigInt; 4] = out.try_into().map_err(|_| bad())?;
        Self::new(a, b, c, d)
    }
}

impl Mul<&ModularMatrix> for &ModularMatrix {
    type Output = ModularMatrix;
    fn mul(self, o: &ModularMatrix) -> ModularMatrix {
        ModularMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl Mul for ModularMatrix {
    type Output = ModularMatrix;
    fn mul(self, o: ModularMatrix) -> ModularMatrix {
        &self * &o
    }
}

impl fmt::Display for ModularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for ModularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModularMatrix{self}")
    }
}

impl Serialize for ModularMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModularMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_json(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// `[[q, 1], [1, 0]]` in textbook form: `x -> q + 1/x`.
pub(crate) fn digit_step(q: &BigInt) -> ModularMatrix {
    ModularMatrix {
        a: BigInt::zero(),
        b: BigInt::one(),
        c: BigInt::one(),
        d: q.clone(),
    }
}
