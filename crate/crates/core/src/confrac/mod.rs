//! Continued fractions of quadratic irrationals and the GL(2, Z) action.
//!
//! Two irrationals are equivalent under GL(2, Z) exactly when their
//! expansions share a tail. Expansions are stored so that tail equality is a
//! literal comparison of periods: the preperiod always contains `a0` and is
//! extended until the period, read in position, is its own lexicographically
//! least rotation.

mod matrix;

pub use matrix::ModularMatrix;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{int_from_json, int_to_json, QuadraticNumber, Rational};
use matrix::digit_step;

/// A simple continued fraction `[a0; a1, a2, ...]`, finite or eventually
/// periodic, in canonical form.
///
/// Invariants: `preperiod` is nonempty, entries after `a0` are positive, a
/// finite expansion of length at least two ends in a digit `>= 2`, and a
/// nonempty `period` is primitive, least among its rotations, and cannot be
/// shortened by moving preperiod digits into it except through rotation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl ContinuedFraction {
    /// Canonicalises an arbitrary `(preperiod, period)` description of the
    /// digit sequence.
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        let first_digit = preperiod.first().or(period.first());
        if first_digit.is_none() {
            return Err(Error::parse(
                0,
                "a continued fraction needs at least one digit",
            ));
        }
        let tail_ok = preperiod
            .iter()
            .skip(1)
            .chain(period.iter().skip(usize::from(preperiod.is_empty())))
            .all(|q| q.is_positive());
        if !tail_ok {
            return Err(Error::OutOfRange {
                value: "partial quotient".into(),
                range: "positive integers after a0".into(),
            });
        }
        if period.is_empty() {
            return Ok(Self::finite(preperiod));
        }
        if preperiod.is_empty() && !period[0].is_positive() {
            return Err(Error::OutOfRange {
                value: period[0].to_string(),
                range: "positive integers in a period".into(),
            });
        }
        Ok(Self::periodic(preperiod, period))
    }

    fn finite(mut digits: Vec<BigInt>) -> Self {
        while digits.len() >= 2 && digits.last().is_some_and(|q| q.is_one()) {
            digits.pop();
            *digits.last_mut().expect("nonempty") += 1;
        }
        ContinuedFraction {
            preperiod: digits,
            period: Vec::new(),
        }
    }

    /// `period` nonempty with positive entries; `pre` may be empty.
    fn periodic(mut pre: Vec<BigInt>, mut per: Vec<BigInt>) -> Self {
        let k = per.len();
        let root = (1..=k)
            .find(|&t| k.is_multiple_of(t) && (t..k).all(|i| per[i] == per[i - t]))
            .expect("t = k always works");
        per.truncate(root);
        while pre.len() > 1 && pre.last() == per.last() {
            pre.pop();
            per.rotate_right(1);
        }
        if pre.is_empty() {
            pre.push(per[0].clone());
            per.rotate_left(1);
        }
        let shift = least_rotation(&per);
        pre.extend(per[..shift].iter().cloned());
        per.rotate_left(shift);
        ContinuedFraction {
            preperiod: pre,
            period: per,
        }
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_rational(&self) -> bool {
        self.period.is_empty()
    }

    /// The `i`-th partial quotient, `None` past the end of a finite expansion.
    pub fn quotient(&self, i: usize) -> Option<&BigInt> {
        if i < self.preperiod.len() {
            return Some(&self.preperiod[i]);
        }
        if self.period.is_empty() {
            return None;
        }
        Some(&self.period[(i - self.preperiod.len()) % self.period.len()])
    }

    /// Whether the digit sequence is periodic from `a0` on.
    pub fn is_purely_periodic(&self) -> bool {
        let k = self.period.len();
        k > 0 && (0..self.preperiod.len()).all(|i| self.quotient(i) == self.quotient(i + k))
    }

    /// Exact value of the expansion.
    pub fn value(&self) -> Result<QuadraticNumber> {
        self.value_impl(None)
    }

    /// Exact value when the field `Q(sqrt(d))` is known in advance; avoids
    /// factoring the discriminant of the period.
    pub fn value_in_field(&self, d: &BigInt) -> Result<QuadraticNumber> {
        self.value_impl(Some(d))
    }

    fn value_impl(&self, hint: Option<&BigInt>) -> Result<QuadraticNumber> {
        let tail = if self.period.is_empty() {
            None
        } else {
            Some(purely_periodic_value(&self.period, hint)?)
        };
        let mut acc = tail;
        for q in self.preperiod.iter().rev() {
            let qv = QuadraticNumber::from_integer(q.clone());
            acc = Some(match acc {
                None => qv,
                Some(t) => qv.checked_add(&t.recip()?)?,
            });
        }
        Ok(acc.expect("preperiod is nonempty"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pre": self.preperiod.iter().map(int_to_json).collect::<Vec<_>>(),
            "per": self.period.iter().map(int_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let list = |name: &str| -> Result<Vec<BigInt>> {
            v.get(name)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::parse(0, format!("missing array {name:?}")))?
                .iter()
                .map(int_from_json)
                .collect()
        };
        Self::new(list("pre")?, list("per")?)
    }
}

/// Value of `[\overline{p_0; p_1, ..., p_{k-1}}]`, the root `> 1` of its
/// fixed-point quadratic.
fn purely_periodic_value(period: &[BigInt], hint: Option<&BigInt>) -> Result<QuadraticNumber> {
    // u = (p u + p') / (q u + q') with [[p, p'], [q, q']] the product of digit steps
    let (mut p, mut pp, mut q, mut qp) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for a in period {
        let np = a * &p + &pp;
        let nq = a * &q + &qp;
        pp = std::mem::replace(&mut p, np);
        qp = std::mem::replace(&mut q, nq);
    }
    // q u^2 + (q' - p) u - p' = 0
    let b = &qp - &p;
    let disc = &b * &b + BigInt::from(4) * &q * &pp;
    let two_q = Rational::from_integer(BigInt::from(2) * &q);
    let rat = Rational::from_integer(-b) / &two_q;
    let surd = Rational::one() / &two_q;
    match hint {
        Some(h) => QuadraticNumber::new_with_hint(rat, surd, disc, h),
        None => QuadraticNumber::new(rat, surd, disc),
    }
}

/// Booth-style search for the start of the least rotation.
fn least_rotation(s: &[BigInt]) -> usize {
    let n = s.len();
    let mut best = 0;
    for cand in 1..n {
        for off in 0..n {
            let x = &s[(cand + off) % n];
            let y = &s[(best + off) % n];
            if x != y {
                if x < y {
                    best = cand;
                }
                break;
            }
        }
    }
    best
}

/// Exact expansion. Periods are found by cycle detection on the `(P, Q)`
/// state of the complete quotients `(P + sqrt(d)) / Q`.
pub fn cf_expand(x: &QuadraticNumber) -> ContinuedFraction {
    if let Some(r) = x.as_rational() {
        return ContinuedFraction::finite(euclid(r));
    }
    let (mut p, mut q, d) = surd_state(x);
    let s = d.sqrt();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = digits.split_off(start);
            return ContinuedFraction::periodic(digits, period);
        }
        seen.insert((p.clone(), q.clone()), digits.len());
        let a = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            (-&p - &s - BigInt::one()).div_floor(&(-&q))
        };
        p = &a * &q - &p;
        q = (&d - &p * &p) / &q;
        digits.push(a);
    }
}

/// Writes an irrational `x` as `(P + sqrt(d)) / Q` with `Q | d - P^2`.
fn surd_state(x: &QuadraticNumber) -> (BigInt, BigInt, BigInt) {
    let w = x.rat().denom().lcm(x.surd().denom());
    let mut big_x = x.rat().numer() * (&w / x.rat().denom());
    let mut big_y = x.surd().numer() * (&w / x.surd().denom());
    let mut big_w = w;
    if big_y.is_negative() {
        big_x = -big_x;
        big_y = -big_y;
        big_w = -big_w;
    }
    let aw = big_w.abs();
    let d = &big_y * &big_y * x.radicand() * &aw * &aw;
    (big_x * &aw, big_w * aw, d)
}

fn euclid(r: &Rational) -> Vec<BigInt> {
    let mut n = r.numer().clone();
    let mut m = r.denom().clone();
    let mut out = Vec::new();
    while !m.is_zero() {
        let (q, rem) = n.div_mod_floor(&m);
        out.push(q);
        n = std::mem::replace(&mut m, rem);
    }
    out
}

/// The `k`-th convergent `p_k / q_k`.
pub fn cf_convergent(cf: &ContinuedFraction, k: usize) -> Result<Rational> {
    let (mut p, mut pp) = (BigInt::one(), BigInt::zero());
    let (mut q, mut qp) = (BigInt::zero(), BigInt::one());
    for i in 0..=k {
        let a = cf.quotient(i).ok_or(Error::IndexBeyondExpansion {
            index: k,
            len: cf.preperiod.len(),
        })?;
        let np = a * &p + &pp;
        let nq = a * &q + &qp;
        pp = std::mem::replace(&mut p, np);
        qp = std::mem::replace(&mut q, nq);
    }
    Ok(Rational::new(p, q))
}

/// `(c + x d) / (a + x b)`.
pub fn mobius_apply(m: &ModularMatrix, x: &QuadraticNumber) -> Result<QuadraticNumber> {
    m.apply(x)
}

fn require_irrational(x: &QuadraticNumber) -> Result<()> {
    if x.is_rational() {
        return Err(Error::RationalInput(x.to_string()));
    }
    Ok(())
}

/// Product of the digit steps for the first `n` partial quotients, so that
/// `x = apply(prefix_matrix(cf, n), x_n)` with `x_n` the `n`-th complete
/// quotient.
fn prefix_matrix(cf: &ContinuedFraction, n: usize) -> ModularMatrix {
    (0..n).fold(ModularMatrix::identity(), |acc, i| {
        &acc * &digit_step(cf.quotient(i).expect("irrational expansion"))
    })
}

/// Decides GL(2, Z)-equivalence. On success the witness `M` satisfies
/// `mobius_apply(M, x) = y`, and this identity is checked before returning.
pub fn cf_equivalent(
    x: &QuadraticNumber,
    y: &QuadraticNumber,
) -> Result<(bool, Option<ModularMatrix>)> {
    require_irrational(x)?;
    require_irrational(y)?;
    let cx = cf_expand(x);
    let cy = cf_expand(y);
    if cx.period != cy.period {
        return Ok((false, None));
    }
    // canonical storage aligns the complete quotients at the period starts
    let sx = prefix_matrix(&cx, cx.preperiod.len());
    let sy = prefix_matrix(&cy, cy.preperiod.len());
    let witness = &sy * &sx.inverse();
    if mobius_apply(&witness, x)? != *y {
        return Err(Error::Certificate(format!(
            "witness {witness} does not map {x} to {y}"
        )));
    }
    Ok((true, Some(witness)))
}

/// The purely periodic number `[\overline{m_k; m_1, ..., m_{k-1}}]` where
/// `(m_1, ..., m_k)` is the canonical period of `x`. Its expansion has a
/// one-digit preperiod followed by exactly that period.
pub fn reduced_representative(x: &QuadraticNumber) -> Result<QuadraticNumber> {
    require_irrational(x)?;
    let cf = cf_expand(x);
    let per = cf.period();
    let tail = purely_periodic_value(per, Some(x.radicand()))?;
    let last = QuadraticNumber::from_integer(per[per.len() - 1].clone());
    last.checked_add(&tail.recip()?)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[BigInt]| {
            xs.iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "[{}", self.preperiod[0])?;
        let rest = &self.preperiod[1..];
        if rest.is_empty() && self.period.is_empty() {
            return write!(f, "]");
        }
        write!(f, "; ")?;
        let mut parts = Vec::new();
        if !rest.is_empty() {
            parts.push(join(rest));
        }
        if !self.period.is_empty() {
            parts.push(format!("({})", join(&self.period)));
        }
        write!(f, "{}]", parts.join(", "))
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CF{self}")
    }
}

impl std::str::FromStr for ContinuedFraction {
    type Err = Error;

    /// Accepts the display form, e.g. `[1; 2, (3, 4)]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, "expected [a0; a1, ..., (p1, ...)]"))?;
        let num = |text: &str, at: usize| -> Result<BigInt> {
            text.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::parse(at, format!("not an integer: {:?}", text.trim())))
        };
        let (head, rest) = match inner.split_once(';') {
            Some((h, r)) => (h, r),
            None => (inner, ""),
        };
        let mut pre = vec![num(head, 1)?];
        let mut per = Vec::new();
        let base = 1 + head.len() + 1;
        let (plain, periodic) = match rest.find('(') {
            Some(i) => {
                let close = rest
                    .rfind(')')
                    .filter(|&j| j > i && rest[j + 1..].trim().is_empty())
                    .ok_or_else(|| Error::parse(base + i, "unclosed period"))?;
                (&rest[..i], Some((&rest[i + 1..close], base + i + 1)))
            }
            None => (rest, None),
        };
        for piece in plain.split(',').filter(|p| !p.trim().is_empty()) {
            pre.push(num(piece, base)?);
        }
        if let Some((body, at)) = periodic {
            for piece in body.split(',') {
                per.push(num(piece, at)?);
            }
        }
        Self::new(pre, per)
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ContinuedFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_json(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;
    use proptest::prelude::*;

    fn qn(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn expansions() {
        let phi = QuadraticNumber::golden_ratio();
        let cf = cf_expand(&phi);
        assert_eq!(
            (cf.preperiod(), cf.period()),
            (&ints(&[1])[..], &ints(&[1])[..])
        );
        // phi = 1 + 1/phi
        assert_eq!(&QuadraticNumber::one() + &phi.recip().unwrap(), phi);

        let cf = cf_expand(&QuadraticNumber::from_ratio(7, 3));
        assert_eq!(cf.preperiod(), &ints(&[2, 3])[..]);
        assert!(cf.period().is_empty());

        let r2 = qn("sqrt(2)");
        let cf = cf_expand(&r2);
        assert_eq!(
            (cf.preperiod(), cf.period()),
            (&ints(&[1])[..], &ints(&[2])[..])
        );
        // x = 1 + 1/(1 + x)
        let one = QuadraticNumber::one();
        assert_eq!(&one + &(&one + &r2).recip().unwrap(), r2);
    }

    #[test]
    fn longer_periods_are_rotated() {
        // sqrt(7) = [2; 1, 1, 1, 4, ...]
        let cf = cf_expand(&qn("sqrt(7)"));
        assert_eq!(cf.period(), &ints(&[1, 1, 1, 4])[..]);
        assert_eq!(cf.preperiod(), &ints(&[2])[..]);
        // sqrt(3) = [1; 1, 2, ...]
        let cf = cf_expand(&qn("sqrt(3)"));
        assert_eq!(cf.period(), &ints(&[1, 2])[..]);
        // (5 + sqrt(3)) / 2 = [3; 2, 1, ...] reads 2, 1 first, so the canonical
        // preperiod absorbs the 2
        let x = qn("(5 + sqrt(3))/2");
        let cf = cf_expand(&x);
        assert_eq!(cf.period(), &ints(&[1, 2])[..]);
        assert_eq!(cf.preperiod(), &ints(&[3, 2])[..]);
        assert_eq!(cf.value().unwrap(), x);
    }

    #[test]
    fn convergents() {
        let phi = cf_expand(&QuadraticNumber::golden_ratio());
        assert_eq!(cf_convergent(&phi, 4).unwrap(), rational(8, 5));
        assert_eq!(cf_convergent(&phi, 0).unwrap(), rational(1, 1));
        let r2 = cf_expand(&qn("sqrt(2)"));
        assert_eq!(cf_convergent(&r2, 2).unwrap(), rational(7, 5));
        let q = cf_expand(&QuadraticNumber::from_ratio(7, 3));
        assert_eq!(cf_convergent(&q, 1).unwrap(), rational(7, 3));
        assert_eq!(
            cf_convergent(&q, 2),
            Err(Error::IndexBeyondExpansion { index: 2, len: 2 })
        );
    }

    #[test]
    fn convergent_error_bound() {
        for s in [
            "sqrt(2)",
            "1/2 + 1/2*sqrt(5)",
            "(3 - sqrt(7))/5",
            "sqrt(13) - 3",
        ] {
            let x = qn(s);
            let cf = cf_expand(&x);
            for k in 0..12 {
                let c = cf_convergent(&cf, k).unwrap();
                let qk = Rational::from_integer(c.denom().clone());
                let err = (&x - &QuadraticNumber::from_rational(c)).abs();
                let bound = QuadraticNumber::from_rational(Rational::one() / (&qk * &qk));
                assert!(err < bound, "{s} k={k}");
            }
        }
    }

    #[test]
    fn canonicalisation() {
        let a = ContinuedFraction::new(vec![], ints(&[1])).unwrap();
        assert_eq!(a, cf_expand(&QuadraticNumber::golden_ratio()));
        let b = ContinuedFraction::new(ints(&[1, 1, 1]), ints(&[1, 1])).unwrap();
        assert_eq!(a, b);
        let c = ContinuedFraction::new(ints(&[2, 3, 1]), vec![]).unwrap();
        assert_eq!(c.preperiod(), &ints(&[2, 4])[..]);
        assert!(ContinuedFraction::new(ints(&[1, 0]), vec![]).is_err());
        assert!(ContinuedFraction::new(vec![], vec![]).is_err());
    }

    #[test]
    fn text_forms() {
        let phi = cf_expand(&QuadraticNumber::golden_ratio());
        assert_eq!(phi.to_string(), "[1; (1)]");
        assert_eq!(
            cf_expand(&QuadraticNumber::from_ratio(7, 3)).to_string(),
            "[2; 3]"
        );
        assert_eq!(
            cf_expand(&QuadraticNumber::from_integer(5)).to_string(),
            "[5]"
        );
        let x = cf_expand(&qn("(5 + sqrt(3))/2"));
        assert_eq!(x.to_string(), "[3; 2, (1, 2)]");
        for cf in [phi, x] {
            assert_eq!(cf.to_string().parse::<ContinuedFraction>().unwrap(), cf);
            assert_eq!(ContinuedFraction::from_json(&cf.to_json()).unwrap(), cf);
        }
        assert_eq!(
            cf_expand(&qn("sqrt(2)")).to_json(),
            json!({"pre": [1], "per": [2]})
        );
    }

    #[test]
    fn equivalence_panel() {
        let phi = QuadraticNumber::golden_ratio();
        let (eq, w) = cf_equivalent(&phi, &phi).unwrap();
        assert!(eq && w.unwrap().is_identity());
        let (eq, w) = cf_equivalent(&phi, &qn("sqrt(2)")).unwrap();
        assert!(!eq && w.is_none());
        assert!(matches!(
            cf_equivalent(&phi, &QuadraticNumber::one()),
            Err(Error::RationalInput(_))
        ));
        // shift and flip of phi
        let m = ModularMatrix::new(1, 1, 0, 1).unwrap();
        let y = mobius_apply(&m, &phi).unwrap();
        let (eq, w) = cf_equivalent(&phi, &y).unwrap();
        assert!(eq);
        assert_eq!(mobius_apply(&w.unwrap(), &phi).unwrap(), y);
    }

    #[test]
    fn reduced_representatives() {
        let phi = QuadraticNumber::golden_ratio();
        assert_eq!(reduced_representative(&phi).unwrap(), phi);
        // v = 2 + 1/v
        let v = reduced_representative(&qn("1 + sqrt(2)")).unwrap();
        assert_eq!(v, qn("1 + sqrt(2)"));
        assert_eq!(&QuadraticNumber::from_integer(2) + &v.recip().unwrap(), v);
        let x = qn("(5 + sqrt(3))/2");
        let r = reduced_representative(&x).unwrap();
        let cf = cf_expand(&r);
        assert_eq!(cf.preperiod().len(), 1);
        assert_eq!(cf.period(), cf_expand(&x).period());
        assert!(cf.is_purely_periodic());
        assert!(!cf_expand(&x).is_purely_periodic());
    }

    fn arb_irrational() -> impl Strategy<Value = QuadraticNumber> {
        (
            -40i64..40,
            1i64..15,
            prop_oneof![Just(-1i64), Just(1i64)],
            1i64..6,
            1i64..12,
            prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13, 21, 29]),
        )
            .prop_map(|(a, b, s, c, e, d)| {
                QuadraticNumber::new(rational(a, b), rational(s * c, e), BigInt::from(d)).unwrap()
            })
    }

    fn arb_matrix() -> impl Strategy<Value = ModularMatrix> {
        prop::collection::vec(0usize..6, 0..=12).prop_map(|idx| {
            let gens = ModularMatrix::generators();
            idx.iter()
                .fold(ModularMatrix::identity(), |acc, &i| &acc * &gens[i])
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn expansion_round_trips(x in arb_irrational()) {
            let cf = cf_expand(&x);
            let v = cf.value_in_field(x.radicand()).unwrap();
            prop_assert_eq!(&v, &x);
            prop_assert_eq!(cf_expand(&v), cf);
        }

        #[test]
        fn galois_criterion(x in arb_irrational()) {
            // purely periodic iff x > 1 and -1 < conj(x) < 0
            let c = x.conjugate();
            let reduced = x > QuadraticNumber::one()
                && c < QuadraticNumber::zero()
                && c > QuadraticNumber::from_integer(-1);
            prop_assert_eq!(cf_expand(&x).is_purely_periodic(), reduced);
        }

        #[test]
        fn mobius_images_are_equivalent(x in arb_irrational(), m in arb_matrix()) {
            let y = mobius_apply(&m, &x).unwrap();
            let (eq, w) = cf_equivalent(&x, &y).unwrap();
            prop_assert!(eq);
            let w = w.unwrap();
            prop_assert_eq!(w.det().abs(), BigInt::one());
            prop_assert_eq!(mobius_apply(&w, &x).unwrap(), y.clone());
            // symmetry with the inverse witness
            let (eq2, w2) = cf_equivalent(&y, &x).unwrap();
            prop_assert!(eq2);
            prop_assert_eq!(mobius_apply(&w.inverse(), &y).unwrap(), x.clone());
            prop_assert_eq!(mobius_apply(&w2.unwrap(), &y).unwrap(), x);
        }

        #[test]
        fn transitivity_composes_witnesses(
            x in arb_irrational(), m1 in arb_matrix(), m2 in arb_matrix()
        ) {
            let y = mobius_apply(&m1, &x).unwrap();
            let z = mobius_apply(&m2, &y).unwrap();
            let (_, wxy) = cf_equivalent(&x, &y).unwrap();
            let (_, wyz) = cf_equivalent(&y, &z).unwrap();
            let composed = &wyz.unwrap() * &wxy.unwrap();
            prop_assert_eq!(mobius_apply(&composed, &x).unwrap(), z.clone());
            prop_assert!(cf_equivalent(&x, &z).unwrap().0);
        }

        #[test]
        fn reduced_representative_is_equivalent(x in arb_irrational()) {
            let r = reduced_representative(&x).unwrap();
            let cf = cf_expand(&r);
            prop_assert!(cf.is_purely_periodic());
            prop_assert!(cf.preperiod().len() <= 1);
            let orig = cf_expand(&x);
            prop_assert_eq!(cf.period(), orig.period());
            prop_assert!(cf_equivalent(&x, &r).unwrap().0);
        }
    }
}
