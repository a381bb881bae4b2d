//! Strong orbit equivalence of sturmian tiling spaces, decided arithmetically:
//! `Omega_alpha` and `Omega_beta` (equivalently the subshifts `X_alpha`,
//! `X_beta`, or the tori `T_alpha`, `T_beta` up to diffeomorphism) are
//! equivalent iff `alpha` and `beta` are GL(2, Z)-conjugate, i.e. iff their
//! continued fractions share a tail.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::confrac::{cf_equivalent, cf_expand, mobius_apply, ContinuedFraction, ModularMatrix};
use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;
use crate::substitution::{
    is_pisot, perron, substitutive_representative, validate_representative, SubstitutionRule,
};

/// How the verdict was reached: the two expansions and, when they agree,
/// their common period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Route {
    pub criterion: &'static str,
    #[serde(serialize_with = "cf_json")]
    pub alpha_cf: ContinuedFraction,
    #[serde(serialize_with = "cf_json")]
    pub beta_cf: ContinuedFraction,
    pub common_period: Option<Vec<String>>,
}

fn cf_json<S: serde::Serializer>(
    cf: &ContinuedFraction,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    cf.to_json().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    #[serde(serialize_with = "matrix_json")]
    pub witness: Option<ModularMatrix>,
    pub route: Route,
}

fn matrix_json<S: serde::Serializer>(
    m: &Option<ModularMatrix>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    m.as_ref().map(ModularMatrix::to_json).serialize(s)
}

pub fn soe_tiling_spaces(
    alpha: &QuadraticNumber,
    beta: &QuadraticNumber,
) -> Result<EquivalenceVerdict> {
    let (equivalent, witness) = cf_equivalent(alpha, beta)?;
    let alpha_cf = cf_expand(alpha);
    let beta_cf = cf_expand(beta);
    if let Some(m) = &witness {
        if m.det().abs() != BigInt::one() || mobius_apply(m, alpha)? != *beta {
            return Err(Error::Certificate(format!(
                "witness {m} fails to map {alpha} to {beta}"
            )));
        }
    }
    let common_period =
        equivalent.then(|| alpha_cf.period().iter().map(|q| q.to_string()).collect());
    Ok(EquivalenceVerdict {
        equivalent,
        witness,
        route: Route {
            criterion: "continued fraction tails",
            alpha_cf,
            beta_cf,
            common_period,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffeoClass {
    Diffeomorphism,
    SmoothOnly,
    Neither,
}

/// Class of the torus map induced by the integer matrix `[[a, b], [c, d]]`.
pub fn diffeo_criterion(m: &[BigInt; 4]) -> DiffeoClass {
    let [a, b, c, d] = m;
    let det = a * d - b * c;
    if det.is_zero() {
        DiffeoClass::Neither
    } else if det.abs().is_one() {
        DiffeoClass::Diffeomorphism
    } else {
        DiffeoClass::SmoothOnly
    }
}

/// A checked substitution tiling space in the class of `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstitutiveCertificate {
    pub alpha: QuadraticNumber,
    #[serde(serialize_with = "cf_json")]
    pub alpha_cf: ContinuedFraction,
    pub beta: QuadraticNumber,
    /// Expansion of `1 / beta`, which is purely periodic.
    #[serde(serialize_with = "cf_json")]
    pub reciprocal_cf: ContinuedFraction,
    #[serde(serialize_with = "rule_json")]
    pub rule: SubstitutionRule,
    pub digits: Vec<String>,
    #[serde(serialize_with = "matrix_json")]
    pub witness: Option<ModularMatrix>,
    pub lambda: QuadraticNumber,
    pub pisot: bool,
}

fn rule_json<S: serde::Serializer>(
    r: &SubstitutionRule,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn class_substitutive_witness(alpha: &QuadraticNumber) -> Result<SubstitutiveCertificate> {
    let rep = substitutive_representative(alpha)?;
    validate_representative(alpha, &rep)?;
    let verdict = soe_tiling_spaces(alpha, &rep.beta)?;
    if !verdict.equivalent {
        return Err(Error::Certificate(format!(
            "{} is not equivalent to {alpha}",
            rep.beta
        )));
    }
    let reciprocal_cf = cf_expand(&rep.beta.recip()?);
    if !reciprocal_cf.is_purely_periodic() {
        return Err(Error::Certificate(format!(
            "1/{} is not purely periodic",
            rep.beta
        )));
    }
    let pd = perron(&rep.rule)?;
    let pisot = is_pisot(&pd)?;
    if !pisot {
        return Err(Error::Certificate(format!(
            "{} is not Pisot",
            pd.exact_lambda()?
        )));
    }
    Ok(SubstitutiveCertificate {
        alpha: alpha.clone(),
        alpha_cf: verdict.route.alpha_cf,
        beta: rep.beta,
        reciprocal_cf,
        rule: rep.rule,
        digits: rep.digits.iter().map(|d| d.to_string()).collect(),
        witness: verdict.witness,
        lambda: pd.exact_lambda()?.clone(),
        pisot,
    })
}
