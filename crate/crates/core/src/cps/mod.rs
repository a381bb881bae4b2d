//! The canonical cut-and-project scheme `Z^2 -> R` along a line of irrational
//! slope `alpha` through `(0, rho)`.
//!
//! A lattice point `(i, j)` has internal coordinate `u = j - alpha i - rho`
//! and physical position `i + j alpha` (the projection onto `(1, alpha)`, up
//! to the global factor `1 / sqrt(1 + alpha^2)`, which is applied only when
//! rendering). The window is the projection of the unit square, `[-alpha, 1)`
//! or `(-alpha, 1]` depending on the boundary convention.
//!
//! Accepted points form a staircase: from an accepted point exactly one of
//! `(i + 1, j)` (a tile of length 1, label 0) and `(i, j + 1)` (length
//! `alpha`, label 1) is accepted.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{sign_surd, sign_surd_i128, QuadraticNumber, Rational};
use crate::hull::Tiling;
use crate::words::{Branch, SturmianParams, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WindowConvention {
    /// `[-alpha, 1)`; corresponds to the upper sturmian branch.
    #[default]
    Low,
    /// `(-alpha, 1]`; corresponds to the lower sturmian branch.
    High,
}

impl std::str::FromStr for WindowConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(WindowConvention::Low),
            "high" => Ok(WindowConvention::High),
            other => Err(Error::parse(
                0,
                format!("unknown window convention {other:?}"),
            )),
        }
    }
}

impl fmt::Display for WindowConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowConvention::Low => "low",
            WindowConvention::High => "high",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawScheme", into = "RawScheme")]
pub struct CutProjectScheme {
    alpha: QuadraticNumber,
    rho: QuadraticNumber,
    convention: WindowConvention,
    /// `alpha`, `rho` over a common denominator: `[A, B, E, F, W, D]` with
    /// `alpha = (A + B sqrt D) / W`, `rho = (E + F sqrt D) / W`.
    coeffs: [BigInt; 6],
    small: Option<[i128; 6]>,
}

#[derive(Serialize, Deserialize)]
struct RawScheme {
    alpha: QuadraticNumber,
    rho: QuadraticNumber,
    #[serde(default)]
    convention: WindowConvention,
}

impl TryFrom<RawScheme> for CutProjectScheme {
    type Error = Error;
    fn try_from(r: RawScheme) -> Result<Self> {
        CutProjectScheme::new(r.alpha, r.rho, r.convention)
    }
}

impl From<CutProjectScheme> for RawScheme {
    fn from(s: CutProjectScheme) -> Self {
        RawScheme {
            alpha: s.alpha,
            rho: s.rho,
            convention: s.convention,
        }
    }
}

/// A lattice point `(i, j)`, i.e. the position `i + j alpha`.
pub type LatticePoint = (i64, i64);

impl CutProjectScheme {
    pub fn new(
        alpha: QuadraticNumber,
        rho: QuadraticNumber,
        convention: WindowConvention,
    ) -> Result<Self> {
        if alpha.is_rational() {
            return Err(Error::RationalInput(alpha.to_string()));
        }
        if !alpha.is_positive() {
            return Err(Error::OutOfRange {
                value: alpha.to_string(),
                range: "alpha > 0".into(),
            });
        }
        alpha.checked_add(&rho)?;
        if rho.is_negative() || rho >= QuadraticNumber::one() {
            return Err(Error::OutOfRange {
                value: rho.to_string(),
                range: "[0, 1)".into(),
            });
        }
        let w = alpha
            .rat()
            .denom()
            .lcm(alpha.surd().denom())
            .lcm(rho.rat().denom())
            .lcm(rho.surd().denom());
        let scale = |r: &Rational| r.numer() * (&w / r.denom());
        let coeffs = [
            scale(alpha.rat()),
            scale(alpha.surd()),
            scale(rho.rat()),
            scale(rho.surd()),
            w.clone(),
            alpha.radicand().clone(),
        ];
        let small = coeffs
            .iter()
            .map(|v| v.to_i128().filter(|x| x.unsigned_abs() < 1 << 40))
            .collect::<Option<Vec<_>>>()
            .map(|v| <[i128; 6]>::try_from(v).expect("six entries"));
        Ok(CutProjectScheme {
            alpha,
            rho,
            convention,
            coeffs,
            small,
        })
    }

    pub fn alpha(&self) -> &QuadraticNumber {
        &self.alpha
    }

    pub fn rho(&self) -> &QuadraticNumber {
        &self.rho
    }

    pub fn convention(&self) -> WindowConvention {
        self.convention
    }

    pub fn with_convention(&self, convention: WindowConvention) -> Self {
        let mut s = self.clone();
        s.convention = convention;
        s
    }

    /// `j - alpha i - rho`.
    pub fn internal(&self, p: LatticePoint) -> QuadraticNumber {
        let (i, j) = p;
        &(&QuadraticNumber::from_integer(j) - &(&self.alpha * &QuadraticNumber::from_integer(i)))
            - &self.rho
    }

    /// `i + j alpha`.
    pub fn position(&self, p: LatticePoint) -> QuadraticNumber {
        &QuadraticNumber::from_integer(p.0) + &(&self.alpha * &QuadraticNumber::from_integer(p.1))
    }

    /// Signs of `u + alpha` and `u - 1` for the internal coordinate `u`.
    fn window_signs(&self, p: LatticePoint) -> (i8, i8) {
        if let Some(s) = self.fast_window_signs(p) {
            return s;
        }
        let [a, b, e, f, w, d] = &self.coeffs;
        let (i, j) = (BigInt::from(p.0), BigInt::from(p.1));
        // W u = (j W - i A - E) + (-i B - F) sqrt D
        let x = &j * w - &i * a - e;
        let y = -(&i * b) - f;
        let lo = sign_surd(&(&x + a), &(&y + b), d);
        let hi = sign_surd(&(&x - w), &y, d);
        (lo, hi)
    }

    fn fast_window_signs(&self, p: LatticePoint) -> Option<(i8, i8)> {
        let [a, b, e, f, w, d] = self.small?;
        let (i, j) = (p.0 as i128, p.1 as i128);
        if i.unsigned_abs() >= 1 << 40 || j.unsigned_abs() >= 1 << 40 {
            return None;
        }
        let x = j * w - i * a - e;
        let y = -i * b - f;
        let lo = sign_surd_i128(x + a, y + b, d)?;
        let hi = sign_surd_i128(x - w, y, d)?;
        Some((lo, hi))
    }
}

/// Whether the lattice point projects into the window.
pub fn accept(scheme: &CutProjectScheme, p: LatticePoint) -> bool {
    let (lo, hi) = scheme.window_signs(p);
    match scheme.convention {
        WindowConvention::Low => lo >= 0 && hi < 0,
        WindowConvention::High => lo > 0 && hi <= 0,
    }
}

/// Accepted points in increasing position order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VertexSet {
    pub points: Vec<LatticePoint>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Labels of the gaps between consecutive vertices: 0 for a step in `i`
    /// (length 1), 1 for a step in `j` (length `alpha`).
    pub fn gap_labels(&self) -> Vec<u8> {
        self.points
            .windows(2)
            .map(|w| if w[1].0 == w[0].0 + 1 { 0 } else { 1 })
            .collect()
    }
}

/// The next accepted point along the staircase.
fn step(scheme: &CutProjectScheme, p: LatticePoint) -> LatticePoint {
    let right = (p.0 + 1, p.1);
    if accept(scheme, right) {
        right
    } else {
        let up = (p.0, p.1 + 1);
        debug_assert!(accept(scheme, up));
        up
    }
}

/// Some accepted point on the vertical line `i`: the lowest `j` with
/// `j - alpha i - rho` in the window.
fn accepted_in_column(scheme: &CutProjectScheme, i: i64) -> LatticePoint {
    // u >= -alpha  <=>  j >= alpha (i - 1) + rho
    let base = &(&scheme.alpha * &QuadraticNumber::from_integer(i - 1)) + &scheme.rho;
    let mut j = base.ceil().to_i64().expect("column index in range");
    while !accept(scheme, (i, j)) {
        j += 1;
    }
    (i, j)
}

/// Last accepted point with position `<= x`.
fn vertex_at_or_before(scheme: &CutProjectScheme, x: &QuadraticNumber) -> LatticePoint {
    let a = scheme.alpha.to_f64();
    // positions advance by about 1 + alpha^2 per column
    let guess = (x.to_f64() / (1.0 + a * a)).floor() as i64;
    let mut back = 2i64;
    let mut p = loop {
        let p = accepted_in_column(scheme, guess - back);
        if scheme.position(p) <= *x {
            break p;
        }
        back *= 2;
    };
    loop {
        let q = step(scheme, p);
        if scheme.position(q) > *x {
            return p;
        }
        p = q;
    }
}

/// Vertices with position in `[lo, hi)`.
pub fn vertices_in_range(
    scheme: &CutProjectScheme,
    lo: &QuadraticNumber,
    hi: &QuadraticNumber,
) -> Result<VertexSet> {
    scheme.alpha.checked_add(lo)?;
    scheme.alpha.checked_add(hi)?;
    if hi <= lo {
        return Ok(VertexSet::default());
    }
    let mut p = vertex_at_or_before(scheme, lo);
    if scheme.position(p) < *lo {
        p = step(scheme, p);
    }
    let mut points = Vec::new();
    while scheme.position(p) < *hi {
        points.push(p);
        p = step(scheme, p);
    }
    Ok(VertexSet { points })
}

/// The vertex at or left of the origin; tile 0 starts there.
pub fn origin_vertex(scheme: &CutProjectScheme) -> LatticePoint {
    vertex_at_or_before(scheme, &QuadraticNumber::zero())
}

/// Labels of tiles `from .. to`, tile 0 being the one starting at
/// [`origin_vertex`].
pub fn gap_word(scheme: &CutProjectScheme, from: i64, to: i64) -> Word {
    if to <= from {
        return Word::new(Vec::new(), from);
    }
    let mut p = origin_vertex(scheme);
    if from < 0 {
        // walk back by restarting far enough to the left
        // every tile is at most max(1, alpha) long
        let longest = scheme.alpha.clone().max(QuadraticNumber::one());
        let reach = &QuadraticNumber::from_integer(from - 2) * &longest;
        let mut q = vertex_at_or_before(scheme, &(&scheme.position(p) + &reach));
        let mut trail = vec![q];
        while q != p {
            q = step(scheme, q);
            trail.push(q);
        }
        let k = trail.len() as i64 - 1;
        p = trail[(k + from) as usize];
    } else {
        for _ in 0..from {
            p = step(scheme, p);
        }
    }
    let mut labels = Vec::with_capacity((to - from) as usize);
    for _ in from..to {
        let q = step(scheme, p);
        labels.push(if q.0 == p.0 + 1 { 0 } else { 1 });
        p = q;
    }
    Word::new(labels, from)
}

/// Slope of the gap word, `alpha / (1 + alpha)`.
pub fn gap_slope(alpha: &QuadraticNumber) -> QuadraticNumber {
    alpha / &(alpha + &QuadraticNumber::one())
}

impl CutProjectScheme {
    /// Sturmian parameters whose word, indexed from the origin tile, is the
    /// gap word. With `u_0` the internal coordinate of the origin vertex and
    /// `beta = alpha / (1 + alpha)`, the quantity `(1 - u_k) / (1 + alpha)`
    /// rotates by `beta` from tile to tile, giving `rho = (1 - u_0) / (1 + alpha)
    /// + beta` mod 1.
    pub fn sturmian_params(&self) -> SturmianParams {
        let beta = gap_slope(&self.alpha);
        let u0 = self.internal(origin_vertex(self));
        let t0 = &(&QuadraticNumber::one() - &u0) / &(&self.alpha + &QuadraticNumber::one());
        let branch = match self.convention {
            WindowConvention::Low => Branch::Upper,
            WindowConvention::High => Branch::Lower,
        };
        SturmianParams::with_any_intercept(beta, &t0 + &gap_slope(&self.alpha), branch)
            .expect("gap slope lies in (0, 1)")
    }
}

/// The tiling with tiles of lengths `(1, alpha)` on the accepted points,
/// positioned so that the physical origin is the point 0.
pub fn tiling_from_cps(scheme: &CutProjectScheme) -> Result<Tiling> {
    let v0 = scheme.position(origin_vertex(scheme));
    Tiling::sturmian(
        scheme.sturmian_params(),
        [QuadraticNumber::one(), scheme.alpha.clone()],
        -v0,
    )
}

/// `(i, j)` with `x = i + j alpha`, or an error when `x` is not in the lattice
/// projection.
pub fn lattice_coordinates(
    alpha: &QuadraticNumber,
    x: &QuadraticNumber,
) -> Result<(BigInt, BigInt)> {
    alpha.checked_add(x)?;
    let j = x.surd() / alpha.surd();
    let i = x.rat() - &(alpha.rat() * &j);
    if !i.is_integer() || !j.is_integer() {
        return Err(Error::NotInFrame(x.to_string()));
    }
    Ok((i.to_integer(), j.to_integer()))
}
