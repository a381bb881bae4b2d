//! Certified bounds for the tiling distance
//! `d(T, T') = inf { eps : exists x, x' with |x|, |x'| < eps / 2 and
//! T + x, T' + x' agreeing on the ball of radius 1 / eps about 0 }`.
//!
//! With `tau = x' - x` this asks for some `|tau| < eps` such that `T` and
//! `T' - tau` agree on the ball of radius `1 / eps` about `-tau / 2`.
//! Feasibility is monotone in `eps`. A ball either contains a vertex, and
//! then `tau` aligns a vertex of `T'` with one of `T` near the centre, or it
//! sits inside one tile of each tiling, which is a linear condition on `tau`.
//! Both cases are decided exactly, and the infimum is bracketed by bisection.
//!
//! The test at a given `eps` relaxes both inequalities to non-strict ones.
//! A relaxed failure still proves `d >= eps`, and a relaxed success proves
//! `d <= eps`.

use serde::Serialize;

use super::{translate, window, Tiling};
use crate::error::{Error, Result};
use crate::exactnum::{QuadraticNumber, Rational};

/// `lower <= d <= upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceBounds {
    pub lower: QuadraticNumber,
    pub upper: QuadraticNumber,
}

impl DistanceBounds {
    pub fn width(&self) -> QuadraticNumber {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &QuadraticNumber) -> bool {
        self.lower <= *x && *x <= self.upper
    }
}

type Clipped = Vec<(u8, QuadraticNumber, QuadraticNumber)>;

/// Tiles of `t` cut down to the open interval `(lo, hi)`.
fn clipped(t: &Tiling, lo: &QuadraticNumber, hi: &QuadraticNumber) -> Clipped {
    window(t, lo, hi)
        .tiles
        .into_iter()
        .filter_map(|tile| {
            let end = tile.end();
            let s = tile.start.max(lo.clone());
            let e = end.min(hi.clone());
            (s < e).then_some((tile.label, s, e))
        })
        .collect()
}

struct Search<'a> {
    a: &'a Tiling,
    b: &'a Tiling,
    max_len: QuadraticNumber,
}

impl Search<'_> {
    fn feasible(&self, eps: &QuadraticNumber) -> bool {
        let r = QuadraticNumber::one()
            .checked_div(eps)
            .expect("eps is positive");
        self.aligned(eps, &r) || self.inside_tiles(eps, &r)
    }

    fn aligned(&self, eps: &QuadraticNumber, r: &QuadraticNumber) -> bool {
        let half = eps / &QuadraticNumber::from_integer(2);
        let reach = &half + &r.clone().min(self.max_len.clone());
        let mut taus: Vec<QuadraticNumber> = Vec::new();
        for v1 in window(self.a, &-&reach, &reach).vertices() {
            if v1.abs() > reach {
                continue;
            }
            for v2 in window(self.b, &(&v1 - eps), &(&v1 + eps)).vertices() {
                let tau = &v2 - &v1;
                if tau.abs() <= *eps && !taus.contains(&tau) {
                    taus.push(tau);
                }
            }
        }
        taus.iter().any(|tau| {
            let moved = translate(self.b, tau);
            let c = -(tau / &QuadraticNumber::from_integer(2));
            let (lo, hi) = (&c - r, &c + r);
            clipped(self.a, &lo, &hi) == clipped(&moved, &lo, &hi)
        })
    }

    fn inside_tiles(&self, eps: &QuadraticNumber, r: &QuadraticNumber) -> bool {
        let two = QuadraticNumber::from_integer(2);
        let half = eps / &two;
        let r2 = &two * r;
        let ta = window(self.a, &-&half, &half);
        let tb = window(self.b, &-&half, &half);
        for t1 in &ta.tiles {
            for t2 in tb.tiles.iter().filter(|t| t.label == t1.label) {
                let a1 = &two * &t1.start;
                let a2 = &two * &t2.start;
                let l1 = &two * &t1.length;
                let l2 = &two * &t2.length;
                let lo = (&(&-&a1 - &l1) + &r2).max(&a2 + &r2).max(-eps.clone());
                let hi = (&-&a1 - &r2).min(&(&a2 + &l2) - &r2).min(eps.clone());
                if lo <= hi {
                    return true;
                }
            }
        }
        false
    }

    /// An exact alignment making the two tilings identical, if one is near.
    fn exact_shift(&self, bound: &QuadraticNumber) -> Option<QuadraticNumber> {
        let reach = &self.max_len + bound;
        let mut best: Option<QuadraticNumber> = None;
        for v1 in window(self.a, &-&self.max_len, &self.max_len).vertices() {
            for v2 in window(self.b, &(&v1 - &reach), &(&v1 + &reach)).vertices() {
                let tau = &v2 - &v1;
                if tau.abs() <= *bound
                    && best.as_ref().is_none_or(|b| tau.abs() < *b)
                    && translate(self.b, &tau) == *self.a
                {
                    best = Some(tau.abs());
                }
            }
        }
        best
    }
}

/// An interval of width at most `tol` containing `d(a, b)`.
pub fn metric_d(a: &Tiling, b: &Tiling, tol: &Rational) -> Result<DistanceBounds> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::Tiling(
            "tilings use different label alphabets".into(),
        ));
    }
    if *tol <= Rational::from_integer(0.into()) {
        return Err(Error::OutOfRange {
            value: tol.to_string(),
            range: "tol > 0".into(),
        });
    }
    a.offset().checked_add(b.offset())?;
    a.max_length().checked_add(b.max_length())?;
    let zero = QuadraticNumber::zero();
    if a == b {
        return Ok(DistanceBounds {
            lower: zero.clone(),
            upper: zero,
        });
    }
    let search = Search {
        a,
        b,
        max_len: a.max_length().clone().max(b.max_length().clone()),
    };
    let mut lower = zero;
    let mut upper = QuadraticNumber::one();
    while !search.feasible(&upper) {
        lower = upper.clone();
        upper = &upper * &QuadraticNumber::from_integer(2);
    }
    if let Some(s) = search.exact_shift(&upper) {
        upper = s;
    }
    let tol = QuadraticNumber::from_rational(tol.clone());
    let two = QuadraticNumber::from_integer(2);
    while &upper - &lower > tol {
        let mid = &(&lower + &upper) / &two;
        if search.feasible(&mid) {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    Ok(DistanceBounds { lower, upper })
}
