//! Literal grammar for exact inputs:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | primary
//! primary := integer | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! The argument of `sqrt` must evaluate to a non-negative rational. Decimal
//! literals are rejected; [`parse_decimal`] exists for tolerances and scales.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{QuadraticNumber, Rational};
use crate::error::{Error, Result};

/// Parses an exact quadratic literal such as `1/2 + 1/2*sqrt(5)`.
pub fn parse_quadratic(text: &str) -> Result<QuadraticNumber> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected {:?}", p.peek_char()),
        ));
    }
    Ok(v)
}

/// Parses a rational written as a fraction, a decimal or in scientific
/// notation (`1/3`, `0.25`, `1e-6`). The value is converted exactly.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let s = text.trim();
    if let Ok(q) = parse_quadratic(s) {
        return q
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::parse(0, "expected a rational value"));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..]
                .parse()
                .map_err(|_| Error::parse(i + 1, "malformed exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    let all = format!("{int_part}{frac_part}");
    if all.is_empty() || !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(0, format!("not a number: {s:?}")));
    }
    let mut value = Rational::from_integer(all.parse::<BigInt>().expect("digits"));
    let scale = exp - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= p;
    } else {
        value /= p;
    }
    Ok(if neg { -value } else { value })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.src.get(self.pos).map(|&b| b as char).unwrap_or('\0')
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else if self.pos >= self.src.len() {
            Err(Error::parse(
                self.pos,
                format!("expected '{}' before end of input", c as char),
            ))
        } else {
            Err(Error::parse(
                self.pos,
                format!("expected '{}', found {:?}", c as char, self.peek_char()),
            ))
        }
    }

    fn expr(&mut self) -> Result<QuadraticNumber> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.term()?;
                    acc = acc.checked_add(&rhs).map_err(|e| locate(e, at))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.term()?;
                    acc = acc.checked_sub(&rhs).map_err(|e| locate(e, at))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QuadraticNumber> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.checked_mul(&rhs).map_err(|e| locate(e, at))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|e| locate(e, at))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QuadraticNumber> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<QuadraticNumber> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let begin = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if matches!(self.src.get(self.pos), Some(b'.' | b'e' | b'E')) {
                    return Err(Error::parse(
                        self.pos,
                        "decimal literals are not exact; write a fraction such as 1/10",
                    ));
                }
                let digits = std::str::from_utf8(&self.src[begin..self.pos]).expect("ascii");
                Ok(QuadraticNumber::from_integer(
                    digits.parse::<BigInt>().expect("digits"),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let begin = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[begin..self.pos]).expect("ascii");
                if ident != "sqrt" {
                    return Err(Error::parse(begin, format!("unknown identifier {ident:?}")));
                }
                self.expect(b'(')?;
                let arg_at = self.pos;
                let arg = self.expr()?;
                self.expect(b')')?;
                sqrt_of(&arg).map_err(|e| locate(e, arg_at))
            }
            Some(_) => Err(Error::parse(
                self.pos,
                format!("unexpected {:?}", self.peek_char()),
            )),
            None => Err(Error::parse(start.max(self.pos), "unexpected end of input")),
        }
    }
}

/// `sqrt(p/q) = sqrt(p*q) / q`.
fn sqrt_of(arg: &QuadraticNumber) -> Result<QuadraticNumber> {
    let r = arg
        .as_rational()
        .ok_or_else(|| Error::parse(0, "sqrt argument must be rational"))?;
    if r.is_negative() {
        return Err(Error::BadRadicand(r.to_string()));
    }
    if r.is_zero() {
        return Ok(QuadraticNumber::zero());
    }
    let d = r.numer() * r.denom();
    QuadraticNumber::new(
        Rational::zero(),
        Rational::new(BigInt::from(1), r.denom().clone()),
        d,
    )
}

fn locate(e: Error, at: usize) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(at, message),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    #[test]
    fn literals() {
        let phi = parse_quadratic("1/2 + 1/2*sqrt(5)").unwrap();
        assert_eq!(phi, QuadraticNumber::golden_ratio());
        assert_eq!(parse_quadratic("(1+sqrt(5))/2").unwrap(), phi);
        assert_eq!(
            parse_quadratic("sqrt(8)").unwrap(),
            parse_quadratic("2*sqrt(2)").unwrap()
        );
        assert_eq!(
            parse_quadratic("sqrt(1/2)").unwrap(),
            parse_quadratic("sqrt(2)/2").unwrap()
        );
        assert_eq!(
            parse_quadratic("-3/4").unwrap(),
            QuadraticNumber::from_ratio(-3, 4)
        );
        assert_eq!(
            parse_quadratic(" 7 ").unwrap(),
            QuadraticNumber::from_integer(7)
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_quadratic("1 + 0.5") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_quadratic("1 + foo(2)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_quadratic("(1 + 2").unwrap_err().is_parse());
        assert!(parse_quadratic("").unwrap_err().is_parse());
        assert!(parse_quadratic("1 2").unwrap_err().is_parse());
        assert_eq!(parse_quadratic("1/0"), Err(Error::DivisionByZero));
        assert!(matches!(
            parse_quadratic("sqrt(2) + sqrt(3)"),
            Err(Error::MixedRadicands(..))
        ));
    }

    #[test]
    fn decimals_for_tolerances() {
        assert_eq!(parse_decimal("1e-6").unwrap(), rational(1, 1_000_000));
        assert_eq!(parse_decimal("0.25").unwrap(), rational(1, 4));
        assert_eq!(parse_decimal("-2.5E1").unwrap(), rational(-25, 1));
        assert_eq!(parse_decimal("3/8").unwrap(), rational(3, 8));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("sqrt(2)").is_err());
    }
}
