//! One-dimensional tilings with exact geometry, for `d = 1` only.
//!
//! A tiling is a bi-infinite label sequence (sturmian, substitutive or
//! periodic), a length per label and the position of the origin inside tile
//! 0, measured from that tile's left vertex. Tiles are half-open for the
//! purpose of locating a point: tile `n` owns `[start_n, start_{n+1})`.
//!
//! `translate(T, x)` moves the origin to the point `x` of `T`, so every tile
//! of the result sits at its old position minus `x`.

mod metric;
mod returns;

pub use metric::{metric_d, DistanceBounds};
pub use returns::{return_module, return_vectors, torus_project, ReturnModule, TorusPoint};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;
use crate::substitution::{language_factors, perron, SubstitutionRule};
use crate::words::{
    ones_between, shift_params_by, sturmian_block, sturmian_symbol, SturmianParams, Word,
};

/// Two-sided fixed point `... l . r ...` of a power of a primitive rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    rule: SubstitutionRule,
    power: u32,
    iterate: SubstitutionRule,
    left: u8,
    right: u8,
}

impl FixedPoint {
    /// Picks a legal seam `l r` whose letters are fixed by the first/last
    /// letter maps of some power of `rule`.
    pub fn new(rule: &SubstitutionRule) -> Result<Self> {
        let pairs = language_factors(rule, 2)?;
        let first = pairs.iter().next().ok_or(Error::NotPrimitive)?;
        let step = |(l, r): (u8, u8)| {
            (
                *rule.image(l).last().expect("images are nonempty"),
                rule.image(r)[0],
            )
        };
        let mut seen = vec![(first[0], first[1])];
        let (seam, period) = loop {
            let next = step(*seen.last().expect("nonempty"));
            if let Some(i) = seen.iter().position(|&p| p == next) {
                break (next, (seen.len() - i) as u32);
            }
            seen.push(next);
        };
        let mut power = period;
        loop {
            let iterate = rule.power(power);
            if iterate.image(seam.0).len() > 1 && iterate.image(seam.1).len() > 1 {
                return Ok(FixedPoint {
                    rule: rule.clone(),
                    power,
                    iterate,
                    left: seam.0,
                    right: seam.1,
                });
            }
            power += period;
        }
    }

    pub fn rule(&self) -> &SubstitutionRule {
        &self.rule
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn seam(&self) -> (u8, u8) {
        (self.left, self.right)
    }

    /// Letters `0 .. n`.
    fn prefix(&self, n: usize) -> Vec<u8> {
        let mut w = vec![self.right];
        while w.len() < n {
            w = self.iterate.apply_letters(&w);
            w.truncate(n);
        }
        w.truncate(n);
        w
    }

    /// Letters `-n .. 0`.
    fn suffix(&self, n: usize) -> Vec<u8> {
        let mut w = vec![self.left];
        while w.len() < n {
            w = self.iterate.apply_letters(&w);
            let cut = w.len().saturating_sub(n);
            w.drain(..cut);
        }
        let cut = w.len().saturating_sub(n);
        w.drain(..cut);
        w
    }

    fn block(&self, from: i64, to: i64) -> Vec<u8> {
        let mut out = Vec::with_capacity((to - from).max(0) as usize);
        if from < 0 {
            let left = self.suffix(from.unsigned_abs() as usize);
            let keep = (to.min(0) - from) as usize;
            out.extend_from_slice(&left[..keep]);
        }
        if to > 0 {
            let right = self.prefix(to as usize);
            out.extend_from_slice(&right[from.max(0) as usize..]);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum LabelSource {
    Sturmian(SturmianParams),
    Substitution(FixedPoint),
    Periodic(Vec<u8>),
}

/// A label source read from index `shift` on. Sturmian shifts are folded
/// into the parameters and periodic ones reduced modulo the period, so equal
/// sequences from those sources compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelSequence {
    source: LabelSource,
    shift: i64,
}

impl LabelSequence {
    pub fn new(source: LabelSource, shift: i64) -> Self {
        match source {
            LabelSource::Sturmian(p) => LabelSequence {
                source: LabelSource::Sturmian(shift_params_by(&p, shift)),
                shift: 0,
            },
            LabelSource::Periodic(w) => {
                let shift = shift.rem_euclid(w.len() as i64);
                LabelSequence {
                    source: LabelSource::Periodic(w),
                    shift,
                }
            }
            s @ LabelSource::Substitution(_) => LabelSequence { source: s, shift },
        }
    }

    pub fn source(&self) -> &LabelSource {
        &self.source
    }

    pub fn sturmian_params(&self) -> Option<&SturmianParams> {
        match &self.source {
            LabelSource::Sturmian(p) => Some(p),
            _ => None,
        }
    }

    /// The sequence `(x_{n+k})_n`.
    pub fn shifted(&self, k: i64) -> Self {
        LabelSequence::new(self.source.clone(), self.shift + k)
    }

    pub fn at(&self, n: i64) -> u8 {
        match &self.source {
            LabelSource::Sturmian(p) => sturmian_symbol(p, n),
            LabelSource::Periodic(w) => w[(n + self.shift).rem_euclid(w.len() as i64) as usize],
            LabelSource::Substitution(fp) => fp.block(n + self.shift, n + self.shift + 1)[0],
        }
    }

    /// Labels on `[from, to)`.
    pub fn block(&self, from: i64, to: i64) -> Word {
        if to <= from {
            return Word::new(Vec::new(), from);
        }
        match &self.source {
            LabelSource::Sturmian(p) => sturmian_block(p, from, to),
            LabelSource::Periodic(w) => {
                let k = w.len() as i64;
                let symbols = (from..to)
                    .map(|n| w[(n + self.shift).rem_euclid(k) as usize])
                    .collect();
                Word::new(symbols, from)
            }
            LabelSource::Substitution(fp) => {
                Word::new(fp.block(from + self.shift, to + self.shift), from)
            }
        }
    }

    /// Occurrences of each of the `k` labels on `[from, to)`, `from <= to`.
    fn counts(&self, k: usize, from: i64, to: i64) -> Vec<i64> {
        match &self.source {
            LabelSource::Sturmian(p) => {
                let ones = ones_between(p, from, to).to_i64().expect("count fits");
                vec![to - from - ones, ones]
            }
            LabelSource::Periodic(w) => {
                let len = w.len() as i64;
                let full = (to - from) / len;
                let mut c = vec![0i64; k];
                for &l in w {
                    c[l as usize] += full;
                }
                for n in from + full * len..to {
                    c[w[(n + self.shift).rem_euclid(len) as usize] as usize] += 1;
                }
                c
            }
            LabelSource::Substitution(_) => {
                let mut c = vec![0i64; k];
                for &l in &self.block(from, to).symbols {
                    c[l as usize] += 1;
                }
                c
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Tile {
    pub label: u8,
    pub start: QuadraticNumber,
    pub length: QuadraticNumber,
}

impl Tile {
    pub fn end(&self) -> QuadraticNumber {
        &self.start + &self.length
    }
}

/// Consecutive tiles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Patch {
    pub tiles: Vec<Tile>,
}

impl Patch {
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn labels(&self) -> Vec<u8> {
        self.tiles.iter().map(|t| t.label).collect()
    }

    pub fn start(&self) -> Option<&QuadraticNumber> {
        self.tiles.first().map(|t| &t.start)
    }

    pub fn end(&self) -> Option<QuadraticNumber> {
        self.tiles.last().map(Tile::end)
    }

    /// Vertices, i.e. every tile start plus the final end.
    pub fn vertices(&self) -> Vec<QuadraticNumber> {
        let mut v: Vec<QuadraticNumber> = self.tiles.iter().map(|t| t.start.clone()).collect();
        v.extend(self.end());
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    labels: LabelSequence,
    alphabet: Vec<char>,
    lengths: Vec<QuadraticNumber>,
    /// Origin minus the left vertex of tile 0, in `[0, length of tile 0)`.
    offset: QuadraticNumber,
    mean: MeanLength,
}

/// Float seed for locating points; a function of the source and lengths
/// alone, so it takes no part in equality.
#[derive(Debug, Clone, Copy)]
struct MeanLength(f64);

impl PartialEq for MeanLength {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for MeanLength {}

impl std::hash::Hash for MeanLength {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

impl Tiling {
    /// A tiling whose origin lies `offset` to the right of the left vertex of
    /// tile 0 of `labels`; any offset is accepted and settled into range.
    pub fn new(
        labels: LabelSequence,
        alphabet: Vec<char>,
        lengths: Vec<QuadraticNumber>,
        offset: QuadraticNumber,
    ) -> Result<Self> {
        if lengths.len() != alphabet.len() || lengths.is_empty() {
            return Err(Error::Tiling("one length per label is required".into()));
        }
        for l in &lengths {
            if !l.is_positive() {
                return Err(Error::Tiling(format!("tile length {l} is not positive")));
            }
            l.checked_add(&lengths[0])?;
        }
        offset.checked_add(&lengths[0])?;
        let mean = MeanLength(mean_length(&labels.source, &lengths));
        let raw = Tiling {
            labels,
            alphabet,
            lengths,
            offset: QuadraticNumber::zero(),
            mean,
        };
        Ok(raw.settle(offset))
    }

    /// Sturmian labels over `{0, 1}` with the given tile lengths.
    pub fn sturmian(
        params: SturmianParams,
        lengths: [QuadraticNumber; 2],
        offset: QuadraticNumber,
    ) -> Result<Self> {
        Tiling::new(
            LabelSequence::new(LabelSource::Sturmian(params), 0),
            vec!['0', '1'],
            lengths.to_vec(),
            offset,
        )
    }

    /// Self-similar tiling of a primitive rule with exact Perron lengths
    /// (first letter of length 1); the origin sits on the seam of the
    /// two-sided fixed point.
    pub fn substitution(rule: &SubstitutionRule) -> Result<Self> {
        let lengths = perron(rule)?.exact_lengths()?.to_vec();
        let fp = FixedPoint::new(rule)?;
        Tiling::new(
            LabelSequence::new(LabelSource::Substitution(fp), 0),
            rule.alphabet().to_vec(),
            lengths,
            QuadraticNumber::zero(),
        )
    }

    pub fn periodic(
        word: Vec<u8>,
        alphabet: Vec<char>,
        lengths: Vec<QuadraticNumber>,
        offset: QuadraticNumber,
    ) -> Result<Self> {
        if word.is_empty() || word.iter().any(|&l| l as usize >= alphabet.len()) {
            return Err(Error::Tiling(
                "periodic word must be nonempty over the alphabet".into(),
            ));
        }
        Tiling::new(
            LabelSequence::new(LabelSource::Periodic(word), 0),
            alphabet,
            lengths,
            offset,
        )
    }

    pub fn labels(&self) -> &LabelSequence {
        &self.labels
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn lengths(&self) -> &[QuadraticNumber] {
        &self.lengths
    }

    pub fn offset(&self) -> &QuadraticNumber {
        &self.offset
    }

    pub fn max_length(&self) -> &QuadraticNumber {
        self.lengths
            .iter()
            .max_by(|a, b| a.cmp_exact(b).expect("lengths share a field"))
            .expect("nonempty")
    }

    /// Signed total length of tiles `from .. to`.
    fn span(&self, from: i64, to: i64) -> QuadraticNumber {
        if to < from {
            return -self.span(to, from);
        }
        let c = self.labels.counts(self.lengths.len(), from, to);
        c.iter()
            .zip(&self.lengths)
            .filter(|(&n, _)| n != 0)
            .fold(QuadraticNumber::zero(), |acc, (&n, l)| {
                &acc + &(l * &QuadraticNumber::from_integer(n))
            })
    }

    /// Left vertex of tile `n`.
    pub fn tile_start(&self, n: i64) -> QuadraticNumber {
        &self.span(0, n) - &self.offset
    }

    /// Index and left vertex of the tile owning `x`.
    pub fn locate(&self, x: &QuadraticNumber) -> (i64, QuadraticNumber) {
        let guess = ((x + &self.offset).to_f64() / self.mean.0).floor() as i64;
        let mut n = guess;
        let mut start = self.tile_start(n);
        while start > *x {
            n -= 1;
            start = &start - &self.lengths[self.labels.at(n) as usize];
        }
        loop {
            let end = &start + &self.lengths[self.labels.at(n) as usize];
            if end > *x {
                return (n, start);
            }
            start = end;
            n += 1;
        }
    }

    /// Moves the origin to the point `x` measured from the left vertex of
    /// tile 0.
    fn settle(mut self, x: QuadraticNumber) -> Self {
        self.offset = QuadraticNumber::zero();
        let (n, start) = self.locate(&x);
        Tiling {
            labels: self.labels.shifted(n),
            offset: &x - &start,
            ..self
        }
    }

    /// Tiles `from .. to` with exact positions.
    pub fn tiles(&self, from: i64, to: i64) -> Vec<Tile> {
        let labels = self.labels.block(from, to);
        let mut start = self.tile_start(from);
        labels
            .symbols
            .iter()
            .map(|&label| {
                let length = self.lengths[label as usize].clone();
                let next = &start + &length;
                Tile {
                    label,
                    start: std::mem::replace(&mut start, next),
                    length,
                }
            })
            .collect()
    }

    /// The same tiling with label sequence replaced, for tests across sources.
    pub fn with_labels(&self, labels: LabelSequence) -> Self {
        Tiling {
            labels,
            ..self.clone()
        }
    }
}

fn mean_length(source: &LabelSource, lengths: &[QuadraticNumber]) -> f64 {
    let len = |l: u8| lengths[l as usize].to_f64();
    match source {
        LabelSource::Sturmian(p) => {
            let a = p.alpha().to_f64();
            (1.0 - a) * len(0) + a * len(1)
        }
        LabelSource::Periodic(w) => w.iter().map(|&l| len(l)).sum::<f64>() / w.len() as f64,
        LabelSource::Substitution(fp) => {
            let w = fp.block(0, 1000);
            w.iter().map(|&l| len(l)).sum::<f64>() / w.len() as f64
        }
    }
}

/// Moves the origin to the point `x` of `T`.
pub fn translate(t: &Tiling, x: &QuadraticNumber) -> Tiling {
    let target = &t.offset + x;
    t.clone().settle(target)
}

/// All tiles meeting the closed interval `[lo, hi]`.
pub fn window(t: &Tiling, lo: &QuadraticNumber, hi: &QuadraticNumber) -> Patch {
    if hi < lo {
        return Patch::default();
    }
    let (mut first, start) = t.locate(lo);
    if start == *lo {
        first -= 1;
    }
    let (last, _) = t.locate(hi);
    Patch {
        tiles: t.tiles(first, last + 1),
    }
}

/// The label sequence indexed from the tile owning the origin, and the
/// origin's offset inside that tile.
pub fn phi(t: &Tiling) -> (LabelSequence, QuadraticNumber) {
    (t.labels.clone(), t.offset.clone())
}

/// Tiles of lengths `(1, alpha)` with the origin on the left vertex of the
/// tile of `s_0`.
pub fn psi(s: &SturmianParams) -> Tiling {
    Tiling::sturmian(
        s.clone(),
        [QuadraticNumber::one(), s.alpha().clone()],
        QuadraticNumber::zero(),
    )
    .expect("sturmian lengths are positive")
}

/// Length of the tile of `s_0`, i.e. the translation carrying the origin of
/// `psi(S)` to the origin of `psi(shift(S))`.
pub fn delta_alpha(s: &SturmianParams) -> QuadraticNumber {
    if sturmian_symbol(s, 0) == 0 {
        QuadraticNumber::one()
    } else {
        s.alpha().clone()
    }
}

/// Signed number of vertices the origin crosses when moved to `x`.
pub fn translation_cocycle(t: &Tiling, x: &QuadraticNumber) -> i64 {
    t.locate(x).0
}

#[cfg(test)]
mod tests;
