use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{Patch, Tiling};
use crate::error::{Error, Result};
use crate::exactnum::{QuadraticNumber, Rational};
use crate::words::Branch;

/// A submodule of `Z + alpha Z`, stored as the row-style Hermite normal form
/// of its coordinates in the basis `(1, alpha)`: upper triangular, positive
/// pivots, entries above a pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReturnModule {
    frame: QuadraticNumber,
    basis: Vec<[BigInt; 2]>,
}

fn hnf(rows: Vec<[BigInt; 2]>) -> Vec<[BigInt; 2]> {
    let mut pivot: Option<[BigInt; 2]> = None;
    let mut rest: Vec<BigInt> = Vec::new();
    for r in rows {
        if r[0].is_zero() {
            rest.push(r[1].clone());
            continue;
        }
        match pivot.take() {
            None => pivot = Some(r),
            Some(p) => {
                let e = p[0].extended_gcd(&r[0]);
                let (g, u, v) = (e.gcd, e.x, e.y);
                let new_p = [&u * &p[0] + &v * &r[0], &u * &p[1] + &v * &r[1]];
                let (pa, ra) = (&p[0] / &g, &r[0] / &g);
                rest.push(&ra * &p[1] - &pa * &r[1]);
                pivot = Some(new_p);
            }
        }
    }
    let g1 = rest.iter().fold(BigInt::zero(), |acc, y| acc.gcd(y));
    let mut out = Vec::new();
    if let Some(mut p) = pivot {
        if p[0].is_negative() {
            p = [-&p[0], -&p[1]];
        }
        if !g1.is_zero() {
            p[1] = p[1].mod_floor(&g1);
        }
        out.push(p);
    }
    if !g1.is_zero() {
        out.push([BigInt::zero(), g1]);
    }
    out
}

impl ReturnModule {
    /// The span of integer coordinate rows `(i, j)`, meaning `i + j alpha`.
    pub fn from_coordinates(frame: QuadraticNumber, rows: Vec<[BigInt; 2]>) -> Result<Self> {
        if frame.is_rational() {
            return Err(Error::RationalInput(frame.to_string()));
        }
        Ok(ReturnModule {
            frame,
            basis: hnf(rows),
        })
    }

    pub fn frame(&self) -> &QuadraticNumber {
        &self.frame
    }

    pub fn basis(&self) -> &[[BigInt; 2]] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> Vec<QuadraticNumber> {
        self.basis.iter().map(|[i, j]| self.point(i, j)).collect()
    }

    fn point(&self, s: &BigInt, t: &BigInt) -> QuadraticNumber {
        let s = QuadraticNumber::from_integer(s.clone());
        let t = QuadraticNumber::from_integer(t.clone());
        &s + &(&t * &self.frame)
    }

    /// `(s, t)` rational with `x = s + t alpha`.
    pub fn coordinates(&self, x: &QuadraticNumber) -> Result<(Rational, Rational)> {
        self.frame.checked_add(x)?;
        let t = x.surd() / self.frame.surd();
        let s = x.rat() - &(self.frame.rat() * &t);
        Ok((s, t))
    }

    pub fn contains(&self, x: &QuadraticNumber) -> Result<bool> {
        Ok(self.reduce(x)?.is_zero())
    }

    /// The representative of `x + R` with coefficients in `[0, 1)` under the
    /// basis; the last basis vector is used for the remaining freedom.
    pub fn reduce(&self, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        let (mut s, mut t) = self.coordinates(x)?;
        for [i, j] in &self.basis {
            let (i, j) = (Rational::from(i.clone()), Rational::from(j.clone()));
            let k = if !i.is_zero() {
                (&s / &i).floor()
            } else {
                (&t / &j).floor()
            };
            s -= &k * &i;
            t -= &k * &j;
        }
        let s = QuadraticNumber::from_rational(s);
        let t = QuadraticNumber::from_rational(t);
        Ok(&s + &(&t * &self.frame))
    }

    /// Index in `Z + alpha Z` for a full-rank module.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == 2).then(|| &self.basis[0][0] * &self.basis[1][1])
    }

    pub fn is_full_lattice(&self) -> bool {
        self.index().is_some_and(|d| d.is_one())
    }
}

impl Serialize for ReturnModule {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use crate::exactnum::int_to_json;
        let basis: Vec<_> = self
            .basis
            .iter()
            .map(|[i, j]| serde_json::json!([int_to_json(i), int_to_json(j)]))
            .collect();
        serde_json::json!({
            "frame": self.frame,
            "basis": basis,
            "generators": self.generators(),
        })
        .serialize(ser)
    }
}

/// The module spanned by `vectors`, each of which must be `i + j alpha` with
/// integers `i, j`.
pub fn return_module(vectors: &[QuadraticNumber], alpha: &QuadraticNumber) -> Result<ReturnModule> {
    let rows = vectors
        .iter()
        .map(|v| {
            let (i, j) = crate::cps::lattice_coordinates(alpha, v)?;
            Ok([i, j])
        })
        .collect::<Result<Vec<_>>>()?;
    ReturnModule::from_coordinates(alpha.clone(), rows)
}

/// Every `v` with `|v| <= radius` such that `T` carries the patch `P + v`.
pub fn return_vectors(
    t: &Tiling,
    p: &Patch,
    radius: &QuadraticNumber,
) -> Result<Vec<QuadraticNumber>> {
    let p0 = p.start().ok_or(Error::PatchNotFound)?;
    let (n0, start) = t.locate(p0);
    let labels = p.labels();
    let k = labels.len() as i64;
    if start != *p0 || t.tiles(n0, n0 + k) != p.tiles {
        return Err(Error::PatchNotFound);
    }
    let (lo, _) = t.locate(&(p0 - radius));
    let (hi, _) = t.locate(&(p0 + radius));
    let tiles = t.tiles(lo, hi + k + 1);
    let mut out = Vec::new();
    for (idx, w) in tiles.windows(labels.len()).enumerate() {
        if w.iter().map(|x| x.label).eq(labels.iter().copied()) {
            let v = &tiles[idx].start - p0;
            if v.abs() <= *radius {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// The origin's class modulo `R`, plus the branch when the tiling lies on the
/// doubled orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusPoint {
    pub representative: QuadraticNumber,
    pub origin_tag: Option<Branch>,
}

/// Reduces the origin's offset from the vertex set modulo `R`.
pub fn torus_project(t: &Tiling, r: &ReturnModule) -> Result<TorusPoint> {
    let representative = r.reduce(t.offset())?;
    let origin_tag = t
        .labels()
        .sturmian_params()
        .filter(|p| p.is_singular())
        .map(|p| p.branch());
    Ok(TorusPoint {
        representative,
        origin_tag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[(i64, i64)]) -> Vec<[BigInt; 2]> {
        v.iter()
            .map(|&(a, b)| [BigInt::from(a), BigInt::from(b)])
            .collect()
    }

    #[test]
    fn hermite_forms() {
        assert_eq!(
            hnf(rows(&[(1, 0), (0, 1), (1, 1)])),
            rows(&[(1, 0), (0, 1)])
        );
        assert_eq!(hnf(rows(&[(2, 0), (0, 2)])), rows(&[(2, 0), (0, 2)]));
        assert_eq!(hnf(rows(&[(3, 5), (2, 1)])), rows(&[(1, 4), (0, 7)]));
        assert_eq!(hnf(rows(&[(-4, 2), (6, -3)])), rows(&[(2, -1)]));
        assert_eq!(hnf(rows(&[(0, -3), (0, 6)])), rows(&[(0, 3)]));
        assert!(hnf(rows(&[(0, 0)])).is_empty());
    }
}
