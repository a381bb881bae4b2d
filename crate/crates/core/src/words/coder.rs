use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Branch, SturmianParams};
use crate::exactnum::{sign_surd, sign_surd_i128, QuadraticNumber};

/// Walks `n -> n + 1` along the rotation, keeping `k = floor(n alpha + rho)`.
///
/// Both values are written over a common denominator as
/// `((n A + E) + (n B + F) sqrt(D)) / W`, so each step is one exact sign test,
/// done in `i128` when it fits.
#[derive(Debug, Clone)]
pub struct RotationCoder {
    n: i64,
    k: BigInt,
    big: [BigInt; 6],
    small: Option<[i128; 6]>,
    singular: Option<i64>,
    branch: Branch,
}

impl RotationCoder {
    /// Positions the coder at index `n`.
    pub fn new(p: &SturmianParams, n: i64) -> Self {
        let alpha = p.alpha();
        let rho = p.rho();
        let w = alpha
            .rat()
            .denom()
            .lcm(alpha.surd().denom())
            .lcm(rho.rat().denom())
            .lcm(rho.surd().denom());
        let scale = |r: &crate::exactnum::Rational| r.numer() * (&w / r.denom());
        let big = [
            scale(alpha.rat()),
            scale(alpha.surd()),
            scale(rho.rat()),
            scale(rho.surd()),
            w.clone(),
            alpha.radicand().clone(),
        ];
        let small = big
            .iter()
            .map(|v| v.to_i128())
            .collect::<Option<Vec<_>>>()
            .map(|v| <[i128; 6]>::try_from(v).expect("six entries"));
        let x = &(alpha * &QuadraticNumber::from_integer(n)) + rho;
        RotationCoder {
            n,
            k: x.floor(),
            big,
            small,
            singular: p.singular_index().and_then(|s| s.to_i64()),
            branch: p.branch(),
        }
    }

    pub fn index(&self) -> i64 {
        self.n
    }

    /// `floor(n alpha + rho)`.
    pub fn floor(&self) -> &BigInt {
        &self.k
    }

    /// `g(n alpha + rho)` for the coder's branch.
    pub fn g(&self) -> i64 {
        let k = self.k.to_i64().expect("index range keeps floor in i64");
        let at_integer = self.singular == Some(self.n);
        if at_integer && self.branch == Branch::Upper {
            k
        } else {
            k + 1
        }
    }

    pub fn advance(&mut self) {
        self.n += 1;
        if self.crossed() {
            self.k += 1;
        }
    }

    /// Whether `n alpha + rho >= k + 1`.
    fn crossed(&self) -> bool {
        if let Some(s) = self.fast_crossed() {
            return s >= 0;
        }
        let [a, b, e, f, w, d] = &self.big;
        let n = BigInt::from(self.n);
        let x = &n * a + e - (&self.k + 1) * w;
        let y = &n * b + f;
        sign_surd(&x, &y, d) >= 0
    }

    fn fast_crossed(&self) -> Option<i8> {
        let [a, b, e, f, w, d] = self.small?;
        let n = self.n as i128;
        let k1 = self.k.to_i128()?.checked_add(1)?;
        let x = n
            .checked_mul(a)?
            .checked_add(e)?
            .checked_sub(k1.checked_mul(w)?)?;
        let y = n.checked_mul(b)?.checked_add(f)?;
        sign_surd_i128(x, y, d)
    }
}
