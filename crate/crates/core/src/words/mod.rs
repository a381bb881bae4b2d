//! Sturmian words `s_n = g(n a + r) - g((n - 1) a + r)` over `{0, 1}`.
//!
//! `g` is the ceiling on the upper branch and `floor + 1` on the lower one.
//! The two only disagree when some `n a + r` is an integer, which happens for
//! at most one `n`; there the upper branch reads `01` and the lower `10`.

mod coder;

pub use coder::RotationCoder;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Upper,
    Lower,
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Branch::Upper),
            "lower" => Ok(Branch::Lower),
            other => Err(Error::parse(0, format!("unknown branch {other:?}"))),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Upper => "upper",
            Branch::Lower => "lower",
        })
    }
}

/// Slope `alpha` in `(0, 1)`, irrational; intercept `rho` in `[0, 1)`.
///
/// The branch is only meaningful at singular intercepts and is normalised to
/// [`Branch::Upper`] elsewhere, so equal sequences have equal parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct SturmianParams {
    alpha: QuadraticNumber,
    rho: QuadraticNumber,
    branch: Branch,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    alpha: QuadraticNumber,
    rho: QuadraticNumber,
    #[serde(default)]
    branch: Branch,
}

impl TryFrom<RawParams> for SturmianParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        SturmianParams::new(r.alpha, r.rho, r.branch)
    }
}

impl From<SturmianParams> for RawParams {
    fn from(p: SturmianParams) -> Self {
        RawParams {
            alpha: p.alpha,
            rho: p.rho,
            branch: p.branch,
        }
    }
}

pub(crate) fn check_slope(alpha: &QuadraticNumber) -> Result<()> {
    if alpha.is_rational() {
        return Err(Error::RationalInput(alpha.to_string()));
    }
    if !alpha.is_positive() || *alpha >= QuadraticNumber::one() {
        return Err(Error::OutOfRange {
            value: alpha.to_string(),
            range: "(0, 1)".into(),
        });
    }
    Ok(())
}

impl SturmianParams {
    pub fn new(alpha: QuadraticNumber, rho: QuadraticNumber, branch: Branch) -> Result<Self> {
        check_slope(&alpha)?;
        alpha.checked_add(&rho)?;
        if rho.is_negative() || rho >= QuadraticNumber::one() {
            return Err(Error::OutOfRange {
                value: rho.to_string(),
                range: "[0, 1)".into(),
            });
        }
        let mut p = SturmianParams { alpha, rho, branch };
        if p.singular_index().is_none() {
            p.branch = Branch::Upper;
        }
        Ok(p)
    }

    /// Reduces `rho` modulo 1 first.
    pub fn with_any_intercept(
        alpha: QuadraticNumber,
        rho: QuadraticNumber,
        branch: Branch,
    ) -> Result<Self> {
        check_slope(&alpha)?;
        alpha.checked_add(&rho)?;
        Self::new(alpha, rho.fract(), branch)
    }

    pub fn alpha(&self) -> &QuadraticNumber {
        &self.alpha
    }

    pub fn rho(&self) -> &QuadraticNumber {
        &self.rho
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// The unique `n` with `n alpha + rho` an integer, if any.
    pub fn singular_index(&self) -> Option<BigInt> {
        // alpha = a + b sqrt(D), rho = e + f sqrt(D): need n b + f = 0
        let n = -(self.rho.surd() / self.alpha.surd());
        if !n.is_integer() {
            return None;
        }
        let n = n.to_integer();
        let v = &(&self.alpha * &QuadraticNumber::from_integer(n.clone())) + &self.rho;
        v.is_integer().then_some(n)
    }

    pub fn is_singular(&self) -> bool {
        self.singular_index().is_some()
    }

    /// The same intercept read on the other branch.
    pub fn with_branch(&self, branch: Branch) -> Self {
        let mut p = self.clone();
        if p.is_singular() {
            p.branch = branch;
        }
        p
    }
}

impl fmt::Display for SturmianParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha = {}, rho = {}, branch = {}",
            self.alpha, self.rho, self.branch
        )
    }
}

/// A finite word placed at `base_index` in Z.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word {
    pub symbols: Vec<u8>,
    pub base_index: i64,
}

impl Word {
    pub fn new(symbols: Vec<u8>, base_index: i64) -> Self {
        Word {
            symbols,
            base_index,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// First index past the end.
    pub fn end_index(&self) -> i64 {
        self.base_index + self.symbols.len() as i64
    }

    /// Symbol at absolute index `n`.
    pub fn at(&self, n: i64) -> Option<u8> {
        let i = n.checked_sub(self.base_index)?;
        usize::try_from(i)
            .ok()
            .and_then(|i| self.symbols.get(i).copied())
    }

    /// Distinct factors of length `n`.
    pub fn factors(&self, n: usize) -> HashSet<&[u8]> {
        if n == 0 || n > self.symbols.len() {
            return HashSet::new();
        }
        self.symbols.windows(n).collect()
    }

    /// Whether any two factors of equal length differ in their count of `1`
    /// by at most one, for all lengths up to `max_len`.
    pub fn is_balanced(&self, max_len: usize) -> bool {
        (1..=max_len.min(self.len())).all(|n| {
            let counts: Vec<usize> = self
                .symbols
                .windows(n)
                .map(|w| w.iter().filter(|&&s| s == 1).count())
                .collect();
            let lo = counts.iter().min().copied().unwrap_or(0);
            let hi = counts.iter().max().copied().unwrap_or(0);
            hi - lo <= 1
        })
    }

    pub fn count(&self, symbol: u8) -> usize {
        self.symbols.iter().filter(|&&s| s == symbol).count()
    }
}

impl fmt::Display for Word {
    /// Symbols below ten print as digits, the rest as lowercase letters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            let c = if s < 10 {
                (b'0' + s) as char
            } else {
                (b'a' + (s - 10) % 26) as char
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `g(n alpha + rho)` for the branch's choice of `g`.
fn g_value(p: &SturmianParams, n: i64) -> BigInt {
    let x = &(&p.alpha * &QuadraticNumber::from_integer(n)) + &p.rho;
    let (fl, ce) = x.floor_ceil();
    match p.branch {
        Branch::Upper => ce,
        Branch::Lower => fl + 1,
    }
}

/// Single-symbol evaluation straight from the defining formula.
pub fn sturmian_symbol(p: &SturmianParams, n: i64) -> u8 {
    let d = g_value(p, n) - g_value(p, n - 1);
    d.to_u8().expect("sturmian symbols are 0 or 1")
}

/// Symbols on `[from, to)`, generated incrementally.
pub fn sturmian_block(p: &SturmianParams, from: i64, to: i64) -> Word {
    if to <= from {
        return Word::new(Vec::new(), from);
    }
    let mut coder = RotationCoder::new(p, from - 1);
    let mut out = Vec::with_capacity((to - from) as usize);
    let mut prev = coder.g();
    for _ in from..to {
        coder.advance();
        let cur = coder.g();
        out.push((cur - prev) as u8);
        prev = cur;
    }
    Word::new(out, from)
}

/// Coding of the crossings of `y = alpha x + rho` with the lines `y = k`:
/// symbol `n` is `1` iff a crossing abscissa lies in `(n - 1, n]`.
///
/// At a singular intercept this coincides with the lower branch.
pub fn cutting_sequence(
    alpha: &QuadraticNumber,
    rho: &QuadraticNumber,
    from: i64,
    to: i64,
) -> Result<Word> {
    check_slope(alpha)?;
    if to <= from {
        return Ok(Word::new(Vec::new(), from));
    }
    let mut symbols = vec![0u8; (to - from) as usize];
    let line_at = |x: i64| &(alpha * &QuadraticNumber::from_integer(x)) + rho;
    // crossings with abscissa in (from - 1, to - 1 + 1]
    let k_lo: BigInt = line_at(from - 1).floor() + 1;
    let k_hi = line_at(to - 1).floor();
    let mut k = k_lo;
    while k <= k_hi {
        let xk = (&QuadraticNumber::from_integer(k.clone()) - rho).checked_div(alpha)?;
        let n = xk.ceil();
        let idx = (n - BigInt::from(from))
            .to_usize()
            .expect("crossing inside the requested range");
        symbols[idx] = 1;
        k += 1;
    }
    Ok(Word::new(symbols, from))
}

/// Number of distinct length-`n` factors of the bi-infinite word, by growing
/// a centred block until one doubling leaves the count unchanged.
///
/// The first block is already long enough to contain every factor: a
/// sturmian word with convergent denominators `q_{k-1} <= n < q_k` has all of
/// its length-`n` factors inside every window of length `q_k + q_{k-1} + n - 1`.
pub fn complexity(p: &SturmianParams, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let window = recurrence_bound(p.alpha(), n);
    // each half alone spans a full window, away from any singular defect
    let mut half = (32usize).max(4 * (n + 1)).max(window + 2) as i64;
    let mut last = sturmian_block(p, -half, half).factors(n).len();
    loop {
        half *= 2;
        let cur = sturmian_block(p, -half, half).factors(n).len();
        if cur == last {
            return cur;
        }
        last = cur;
    }
}

/// `q_k + q_{k-1} + n - 1` for the convergent denominators bracketing `n`.
pub(crate) fn recurrence_bound(alpha: &QuadraticNumber, n: usize) -> usize {
    let cf = crate::confrac::cf_expand(alpha);
    let target = BigInt::from(n);
    let (mut q_prev, mut q) = (BigInt::from(1), BigInt::zero());
    let mut i = 0;
    while q <= target {
        let a = cf.quotient(i).expect("irrational expansions are infinite");
        let next = a * &q + &q_prev;
        q_prev = std::mem::replace(&mut q, next);
        i += 1;
    }
    (q + q_prev + n - 1usize).to_usize().unwrap_or(usize::MAX)
}

/// Parameters of the shifted word `(s_{n+1})_n`.
pub fn shift_params(p: &SturmianParams) -> SturmianParams {
    let rho = (&p.rho + &p.alpha).fract();
    SturmianParams {
        alpha: p.alpha.clone(),
        rho,
        branch: p.branch,
    }
}

/// Parameters after `k` shifts, in closed form.
pub fn shift_params_by(p: &SturmianParams, k: i64) -> SturmianParams {
    let rho = (&p.rho + &(&p.alpha * &QuadraticNumber::from_integer(k))).fract();
    SturmianParams {
        alpha: p.alpha.clone(),
        rho,
        branch: p.branch,
    }
}

/// Number of `1`s in `s_1 .. s_N`, which telescopes to
/// `g(N alpha + rho) - g(rho)`.
pub fn ones_in_prefix(p: &SturmianParams, big_n: i64) -> BigInt {
    if big_n <= 0 {
        return BigInt::zero();
    }
    g_value(p, big_n) - g_value(p, 0)
}

/// Number of `1`s in `s_from .. s_{to - 1}`; negated when `to < from`.
pub fn ones_between(p: &SturmianParams, from: i64, to: i64) -> BigInt {
    g_value(p, to - 1) - g_value(p, from - 1)
}

#[cfg(test)]
pub(crate) mod tests;
