//! Substitutions on finite alphabets, their Perron data, and the sturmian
//! morphisms realising a periodic continued fraction.

mod language;

pub use language::{factor_set, image_factor_set, language_factors, FactorSet};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::confrac::{cf_equivalent, cf_expand, reduced_representative};
use crate::error::{Error, Result};
use crate::exactnum::{QuadraticNumber, Rational};
use crate::words::{sturmian_block, Branch, SturmianParams, Word};

/// Letters are indices into `alphabet`; images are nonempty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubstitutionRule {
    alphabet: Vec<char>,
    images: Vec<Vec<u8>>,
}

impl SubstitutionRule {
    pub fn new(alphabet: Vec<char>, images: Vec<Vec<u8>>) -> Result<Self> {
        if alphabet.is_empty() || alphabet.len() > u8::MAX as usize {
            return Err(Error::Substitution(
                "alphabet must have 1 to 255 letters".into(),
            ));
        }
        if images.len() != alphabet.len() {
            return Err(Error::Substitution(
                "one image per letter is required".into(),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Substitution(format!(
                    "image of {:?} is empty",
                    alphabet[i]
                )));
            }
            if img.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::Substitution(format!(
                    "image of {:?} leaves the alphabet",
                    alphabet[i]
                )));
            }
        }
        Ok(SubstitutionRule { alphabet, images })
    }

    /// The Fibonacci rule `a>b; b>ab`.
    pub fn fibonacci() -> Self {
        "a>b; b>ab".parse().expect("valid rule")
    }

    /// `0 -> 0^{d-1} 1`, `1 -> 0^d 1` on the alphabet `a = 0`, `b = 1`. It maps
    /// sturmian words of slope `t` to sturmian words of slope `1 / (d + t)`.
    pub fn sturmian_elementary(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::OutOfRange {
                value: "0".into(),
                range: "digits >= 1".into(),
            });
        }
        let mut zero = vec![0u8; d as usize - 1];
        zero.push(1);
        let mut one = vec![0u8; d as usize];
        one.push(1);
        Self::new(vec!['a', 'b'], vec![zero, one])
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn letter_index(&self, c: char) -> Option<u8> {
        self.alphabet.iter().position(|&x| x == c).map(|i| i as u8)
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<u8>> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .enumerate()
            .map(|(i, c)| {
                self.letter_index(c)
                    .ok_or_else(|| Error::parse(i, format!("letter {c:?} not in the alphabet")))
            })
            .collect()
    }

    pub fn render(&self, letters: &[u8]) -> String {
        letters.iter().map(|&l| self.alphabet[l as usize]).collect()
    }

    pub fn apply_letters(&self, word: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        for &l in word {
            out.extend_from_slice(&self.images[l as usize]);
        }
        out
    }

    /// `self o other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::Substitution(
                "composition needs equal alphabets".into(),
            ));
        }
        let images = other.images.iter().map(|w| self.apply_letters(w)).collect();
        Self::new(self.alphabet.clone(), images)
    }

    pub fn power(&self, p: u32) -> Self {
        let identity = (0..self.size() as u8).map(|l| vec![l]).collect();
        let mut acc = Self::new(self.alphabet.clone(), identity).expect("identity rule");
        for _ in 0..p {
            acc = self.compose(&acc).expect("same alphabet");
        }
        acc
    }
}

impl std::str::FromStr for SubstitutionRule {
    type Err = Error;

    /// `a>b; b>ab`. The alphabet is ordered by first appearance on the left.
    fn from_str(s: &str) -> Result<Self> {
        let mut alphabet = Vec::new();
        let mut raw = Vec::new();
        let mut offset = 0;
        for piece in s.split(';') {
            let at = offset;
            offset += piece.len() + 1;
            if piece.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = piece
                .split_once('>')
                .ok_or_else(|| Error::parse(at, "expected a production like a>ab"))?;
            let mut chars = lhs.trim().chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::parse(at, "left side must be a single letter")),
            };
            if alphabet.contains(&letter) {
                return Err(Error::parse(at, format!("letter {letter:?} defined twice")));
            }
            alphabet.push(letter);
            raw.push((at + lhs.len() + 1, rhs.trim().to_string()));
        }
        if alphabet.is_empty() {
            return Err(Error::parse(0, "empty rule"));
        }
        let mut images = Vec::with_capacity(raw.len());
        for (at, rhs) in raw {
            let mut img = Vec::new();
            for c in rhs.chars().filter(|c| !c.is_whitespace()) {
                let l = alphabet
                    .iter()
                    .position(|&x| x == c)
                    .ok_or_else(|| Error::parse(at, format!("letter {c:?} has no production")))?;
                img.push(l as u8);
            }
            if img.is_empty() {
                return Err(Error::parse(at, "image must be nonempty"));
            }
            images.push(img);
        }
        Self::new(alphabet, images)
    }
}

impl fmt::Display for SubstitutionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.size())
            .map(|i| format!("{}>{}", self.alphabet[i], self.render(&self.images[i])))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

impl fmt::Debug for SubstitutionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubstitutionRule({self})")
    }
}

impl Serialize for SubstitutionRule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SubstitutionRule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `k`-fold image of `w`; the base index is kept.
pub fn apply(rule: &SubstitutionRule, w: &Word, k: u32) -> Word {
    let mut cur = w.symbols.clone();
    for _ in 0..k {
        cur = rule.apply_letters(&cur);
    }
    Word::new(cur, w.base_index)
}

pub type IntMatrix = Vec<Vec<i64>>;

/// `M[i][j]` counts letter `i` in the image of letter `j`.
pub fn abelianization(rule: &SubstitutionRule) -> IntMatrix {
    let k = rule.size();
    let mut m = vec![vec![0i64; k]; k];
    for (j, img) in rule.images.iter().enumerate() {
        for &i in img {
            m[i as usize][j] += 1;
        }
    }
    m
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![0i64; p]; n];
    for i in 0..n {
        for (t, bt) in b.iter().enumerate() {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..p {
                out[i][j] += a[i][t] * bt[j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Minimal `N` with `M^N` entrywise positive, searched up to Wielandt's bound
/// `(k - 1)^2 + 1`.
pub fn is_primitive(rule: &SubstitutionRule) -> (bool, Option<u32>) {
    let k = rule.size();
    let base: Vec<Vec<bool>> = abelianization(rule)
        .iter()
        .map(|r| r.iter().map(|&x| x > 0).collect())
        .collect();
    let mut cur = base.clone();
    let bound = ((k - 1) * (k - 1) + 1) as u32;
    for n in 1..=bound {
        if cur.iter().all(|r| r.iter().all(|&x| x)) {
            return (true, Some(n));
        }
        let mut next = vec![vec![false; k]; k];
        for i in 0..k {
            for t in 0..k {
                if cur[i][t] {
                    for j in 0..k {
                        next[i][j] |= base[t][j];
                    }
                }
            }
        }
        cur = next;
    }
    (false, None)
}

/// Expansion factor and natural tile lengths (left Perron eigenvector,
/// first letter of length 1).
#[derive(Debug, Clone, PartialEq)]
pub enum PerronData {
    /// One or two letters: everything lives in a single quadratic field.
    Exact {
        lambda: QuadraticNumber,
        lengths: Vec<QuadraticNumber>,
    },
    /// Larger alphabets: `lower <= lambda <= upper` is certified by exact
    /// Collatz–Wielandt quotients of the float eigenvector estimate.
    Approximate {
        lambda: f64,
        lower: Rational,
        upper: Rational,
        lengths: Vec<f64>,
    },
}

impl PerronData {
    pub fn is_exact(&self) -> bool {
        matches!(self, PerronData::Exact { .. })
    }

    pub fn exact_lambda(&self) -> Result<&QuadraticNumber> {
        match self {
            PerronData::Exact { lambda, .. } => Ok(lambda),
            PerronData::Approximate { .. } => Err(Error::NotExact),
        }
    }

    pub fn exact_lengths(&self) -> Result<&[QuadraticNumber]> {
        match self {
            PerronData::Exact { lengths, .. } => Ok(lengths),
            PerronData::Approximate { .. } => Err(Error::NotExact),
        }
    }

    pub fn lambda_f64(&self) -> f64 {
        match self {
            PerronData::Exact { lambda, .. } => lambda.to_f64(),
            PerronData::Approximate { lambda, .. } => *lambda,
        }
    }
}

pub fn perron(rule: &SubstitutionRule) -> Result<PerronData> {
    if !is_primitive(rule).0 {
        return Err(Error::NotPrimitive);
    }
    let m = abelianization(rule);
    let pd = match rule.size() {
        1 => PerronData::Exact {
            lambda: QuadraticNumber::from_integer(m[0][0]),
            lengths: vec![QuadraticNumber::one()],
        },
        2 => perron_two(&m)?,
        _ => perron_float(&m),
    };
    if pd.lambda_f64() <= 1.0 {
        return Err(Error::Substitution("expansion factor must exceed 1".into()));
    }
    Ok(pd)
}

fn perron_two(m: &IntMatrix) -> Result<PerronData> {
    let q = |x: i64| QuadraticNumber::from_integer(x);
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // lambda = (tr + sqrt(tr^2 - 4 det)) / 2
    let disc = BigInt::from(tr) * tr - BigInt::from(4) * det;
    let root = QuadraticNumber::new(Rational::zero(), Rational::one(), disc)?;
    let lambda = (&q(tr) + &root).checked_div(&q(2))?;
    // column 0 of l M = lambda l with l_0 = 1
    let l1 = (&lambda - &q(m[0][0])).checked_div(&q(m[1][0]))?;
    Ok(PerronData::Exact {
        lambda,
        lengths: vec![QuadraticNumber::one(), l1],
    })
}

fn perron_float(m: &IntMatrix) -> PerronData {
    let k = m.len();
    let mut v = vec![1.0f64; k];
    for _ in 0..500 {
        let mut next = vec![0.0; k];
        for j in 0..k {
            for i in 0..k {
                next[j] += v[i] * m[i][j] as f64;
            }
        }
        let s: f64 = next.iter().sum();
        for x in next.iter_mut() {
            *x /= s;
        }
        v = next;
    }
    // exact Collatz–Wielandt bracket from the rounded eigenvector
    let exact: Vec<BigRational> = v
        .iter()
        .map(|&x| BigRational::from_float(x).unwrap_or_else(Rational::one))
        .collect();
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for j in 0..k {
        let mut col = Rational::zero();
        for i in 0..k {
            col += &exact[i] * Rational::from_integer(BigInt::from(m[i][j]));
        }
        let r = col / &exact[j];
        if lower.as_ref().is_none_or(|l| &r < l) {
            lower = Some(r.clone());
        }
        if upper.as_ref().is_none_or(|u| &r > u) {
            upper = Some(r);
        }
    }
    let lower = lower.expect("nonempty alphabet");
    let upper = upper.expect("nonempty alphabet");
    let lambda = ((&lower + &upper) / Rational::from_integer(BigInt::from(2)))
        .to_f64()
        .unwrap_or(f64::NAN);
    let lengths = v.iter().map(|x| x / v[0]).collect();
    PerronData::Approximate {
        lambda,
        lower,
        upper,
        lengths,
    }
}

/// `lambda > 1` and `|conj(lambda)| < 1`, exactly. A rational `lambda` has no
/// conjugate other than itself and counts as Pisot when it is an integer above 1.
pub fn is_pisot(pd: &PerronData) -> Result<bool> {
    let lambda = pd.exact_lambda()?;
    if *lambda <= QuadraticNumber::one() {
        return Ok(false);
    }
    if lambda.is_rational() {
        return Ok(lambda.is_integer());
    }
    Ok(lambda.conjugate().abs() < QuadraticNumber::one())
}

/// Smallest `p <= |alphabet|` with `rule^p(seed)` starting with `seed` and
/// strictly longer than one letter.
pub fn fixed_power(rule: &SubstitutionRule, seed: u8) -> Option<u32> {
    let mut cur = vec![seed];
    for p in 1..=rule.size() as u32 {
        cur = rule.apply_letters(&cur);
        if cur[0] == seed && cur.len() > 1 {
            return Some(p);
        }
    }
    None
}

/// First `n` letters of the one-sided fixed point of `rule^p` grown from
/// `seed`.
pub fn fixed_point_prefix(rule: &SubstitutionRule, seed: u8, n: usize) -> Result<Word> {
    if seed as usize >= rule.size() {
        return Err(Error::Substitution(format!(
            "seed letter {seed} not in alphabet"
        )));
    }
    if !is_primitive(rule).0 {
        return Err(Error::NotPrimitive);
    }
    let p = fixed_power(rule, seed).ok_or(Error::NoFixedPrefix)?;
    let rp = rule.power(p);
    let mut cur = vec![seed];
    while cur.len() < n {
        let next = rp.apply_letters(&cur);
        debug_assert!(next.starts_with(&cur));
        cur = next;
    }
    cur.truncate(n);
    Ok(Word::new(cur, 0))
}

/// A slope `beta` with purely periodic `1 / beta`, GL(2, Z)-equivalent to
/// `alpha`, together with a rule whose language is that of the sturmian words
/// of slope `beta` (symbol `b` having frequency `beta`).
#[derive(Debug, Clone)]
pub struct SubstitutiveRepresentative {
    pub beta: QuadraticNumber,
    pub rule: SubstitutionRule,
    /// Digits `(q_1, ..., q_k)` with `rule = mu_{q_1} o ... o mu_{q_k}`.
    pub digits: Vec<BigInt>,
}

/// Longest factor length checked by the language-invariance validator.
pub const LANGUAGE_CHECK_LENGTH: usize = 15;

pub fn substitutive_representative(alpha: &QuadraticNumber) -> Result<SubstitutiveRepresentative> {
    if alpha.is_rational() {
        return Err(Error::RationalInput(alpha.to_string()));
    }
    let v = reduced_representative(alpha)?;
    let beta = v.recip()?;
    // 1/beta = [\overline{q_1, ..., q_k}], so beta is fixed by mu_{q_1} o ... o mu_{q_k}
    let cf_v = cf_expand(&v);
    let k = cf_v.period().len();
    let digits: Vec<BigInt> = (0..k)
        .map(|i| cf_v.quotient(i).expect("periodic").clone())
        .collect();
    let mut rule: Option<SubstitutionRule> = None;
    for d in digits.iter().rev() {
        let d = d
            .to_u32()
            .filter(|&d| d <= 10_000)
            .ok_or_else(|| Error::Substitution(format!("partial quotient {d} too large")))?;
        let mu = SubstitutionRule::sturmian_elementary(d)?;
        rule = Some(match rule {
            None => mu,
            Some(r) => mu.compose(&r)?,
        });
    }
    let rule = rule.expect("nonempty period");
    let rep = SubstitutiveRepresentative { beta, rule, digits };
    validate_representative(alpha, &rep)?;
    Ok(rep)
}

/// Checks the contract of [`substitutive_representative`]: equivalence to
/// `alpha`, pure periodicity of `1 / beta`, a Pisot expansion factor, and equal
/// factor sets (lengths up to [`LANGUAGE_CHECK_LENGTH`]) for the sturmian word
/// of slope `beta` and its image under the rule.
pub fn validate_representative(
    alpha: &QuadraticNumber,
    rep: &SubstitutiveRepresentative,
) -> Result<()> {
    if !cf_equivalent(alpha, &rep.beta)?.0 {
        return Err(Error::Certificate("beta is not equivalent to alpha".into()));
    }
    if !cf_expand(&rep.beta.recip()?).is_purely_periodic() {
        return Err(Error::Certificate("1/beta is not purely periodic".into()));
    }
    if !is_pisot(&perron(&rep.rule)?)? {
        return Err(Error::Certificate("expansion factor is not Pisot".into()));
    }
    if !language_invariant(&rep.beta, &rep.rule, LANGUAGE_CHECK_LENGTH)? {
        return Err(Error::Certificate(
            "rule does not preserve the sturmian language".into(),
        ));
    }
    Ok(())
}

/// Whether the length-`<= max_len` factors of a sturmian word of slope `beta`
/// coincide with those of its image under `rule`.
pub fn language_invariant(
    beta: &QuadraticNumber,
    rule: &SubstitutionRule,
    max_len: usize,
) -> Result<bool> {
    let p = SturmianParams::new(
        beta.clone(),
        QuadraticNumber::from_ratio(1, 2),
        Branch::Upper,
    )?;
    let window = crate::words::recurrence_bound(beta, max_len);
    let len = (window + max_len).max(256) as i64;
    let block = sturmian_block(&p, 0, len);
    let original = factor_set(&block.symbols, max_len);
    let image = image_factor_set(rule, &block.symbols, max_len);
    Ok(original == image)
}
