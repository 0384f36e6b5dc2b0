//! Representation catalog: fixed-vector dimensions, Hecke and Atkin-Lehner
//! eigenvalues, Satake restrictions, central characters and Bessel-model
//! existence for the non-spherical Iwahori-spherical types with nonzero
//! Siegel-parahoric-fixed vectors.

use std::fmt;
use std::str::FromStr;

use bessel_scalar::{int, q, sym, RatFunc, Scalar, Symbol};
use serde::Serialize;

use crate::case::LCase;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("{t}: parameter restriction {which} violated")]
    RestrictionViolated { t: RepType, which: String },
    #[error("existence condition not decidable from the stored values: {0}")]
    Inexpressible(String),
    #[error("invalid character data: {0}")]
    InvalidCharacter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RepType {
    IIa,
    IIIa,
    IVb,
    IVc,
    Vb,
    VIa,
    VIb,
}

impl RepType {
    pub const ALL: [RepType; 7] =
        [RepType::IIa, RepType::IIIa, RepType::IVb, RepType::IVc, RepType::Vb, RepType::VIa, RepType::VIb];

    pub fn tag(self) -> &'static str {
        match self {
            RepType::IIa => "IIa",
            RepType::IIIa => "IIIa",
            RepType::IVb => "IVb",
            RepType::IVc => "IVc",
            RepType::Vb => "Vb",
            RepType::VIa => "VIa",
            RepType::VIb => "VIb",
        }
    }

    pub fn p1_dim(self) -> usize {
        match self {
            RepType::IIIa | RepType::IVb => 2,
            _ => 1,
        }
    }

    /// Satake parameters the formulas depend on.
    pub fn params(self) -> &'static [Symbol] {
        match self {
            RepType::IIa | RepType::IIIa => &[Symbol::Alpha, Symbol::Gamma],
            _ => &[Symbol::Gamma],
        }
    }

    pub fn representation(self) -> &'static str {
        match self {
            RepType::IIa => "chi St_GL(2) x| sigma",
            RepType::IIIa => "chi x| sigma St_GSp(2)",
            RepType::IVb => "L(nu^2, nu^-1 sigma St_GSp(2))",
            RepType::IVc => "L(nu^(3/2) St_GL(2), nu^(-3/2) sigma)",
            RepType::Vb => "L(nu^(1/2) xi St_GL(2), nu^(-1/2) sigma)",
            RepType::VIa => "tau(S, nu^(-1/2) sigma)",
            RepType::VIb => "tau(T, nu^(-1/2) sigma)",
        }
    }

    /// Fixed-vector dimensions for `K`, `P02`, `P2`, `P1`, `I`.
    pub fn fixed_dims(self) -> FixedDims {
        let (k, p02, p2, p1, i) = match self {
            RepType::IIa => (0, 1, 2, 1, 4),
            RepType::IIIa => (0, 0, 1, 2, 4),
            RepType::IVb => (0, 0, 1, 2, 3),
            RepType::IVc => (0, 1, 2, 1, 3),
            RepType::Vb => (0, 1, 1, 1, 2),
            RepType::VIa => (0, 0, 1, 1, 3),
            RepType::VIb => (0, 0, 0, 1, 1),
        };
        FixedDims { k, p02, p2, p1, i }
    }

    /// Conductor exponent.
    pub fn conductor(self) -> u32 {
        match self {
            RepType::IIa | RepType::IVc | RepType::Vb => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RepType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        RepType::ALL.into_iter().find(|t| t.tag() == s).ok_or_else(|| format!("unknown representation type {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FixedDims {
    pub k: u32,
    pub p02: u32,
    pub p2: u32,
    pub p1: u32,
    pub i: u32,
}

/// Action of the Atkin-Lehner element on the eigenbasis.
#[derive(Clone, Debug, PartialEq)]
pub enum EtaAction {
    /// `eta B = omega B`.
    Scalar(Scalar),
    /// `eta B1 = b1_to_b2 * B2` and `eta B2 = b2_to_b1 * B1`.
    Swap { b1_to_b2: Scalar, b2_to_b1: Scalar },
}

impl EtaAction {
    /// Matrix `H` with `eta B_c = sum_d H[c][d] B_d`.
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        match self {
            EtaAction::Scalar(w) => vec![vec![w.clone()]],
            EtaAction::Swap { b1_to_b2, b2_to_b1 } => {
                vec![vec![Scalar::zero(), b1_to_b2.clone()], vec![b2_to_b1.clone(), Scalar::zero()]]
            }
        }
    }

    /// `omega^2` for one-dimensional types, the product of the swap entries otherwise.
    pub fn square(&self) -> Scalar {
        match self {
            EtaAction::Scalar(w) => w * w,
            EtaAction::Swap { b1_to_b2, b2_to_b1 } => b1_to_b2 * b2_to_b1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueData {
    pub t: RepType,
    pub lambdas: Vec<Scalar>,
    pub mus: Vec<Scalar>,
    pub eta: EtaAction,
    pub central_char_at_pi: Scalar,
}

/// Values of a Bessel character. `lam_pi_l` is present only in the ramified
/// case and `lam_10`, `lam_01` only in the split case.
#[derive(Clone, Debug, PartialEq)]
pub struct BesselCharacter {
    pub case: LCase,
    pub m0: u32,
    pub lam_pi: Scalar,
    pub lam_pi_l: Option<Scalar>,
    pub lam_10: Option<Scalar>,
    pub lam_01: Option<Scalar>,
}

impl BesselCharacter {
    pub fn inert(m0: u32, lam_pi: Scalar) -> Self {
        BesselCharacter { case: LCase::Inert, m0, lam_pi, lam_pi_l: None, lam_10: None, lam_01: None }
    }

    /// `lam_pi` is `lam_pi_l^2`.
    pub fn ramified(m0: u32, lam_pi_l: Scalar) -> Self {
        let lam_pi = &lam_pi_l * &lam_pi_l;
        BesselCharacter { case: LCase::Ramified, m0, lam_pi, lam_pi_l: Some(lam_pi_l), lam_10: None, lam_01: None }
    }

    /// `lam_pi` is `lam_10 * lam_01`.
    pub fn split(m0: u32, lam_10: Scalar, lam_01: Scalar) -> Self {
        let lam_pi = &lam_10 * &lam_01;
        BesselCharacter { case: LCase::Split, m0, lam_pi, lam_pi_l: None, lam_10: Some(lam_10), lam_01: Some(lam_01) }
    }

    /// Fully symbolic character for a case.
    pub fn symbolic(case: LCase, m0: u32) -> Self {
        match case {
            LCase::Inert => Self::inert(m0, sym(Symbol::LamPi)),
            LCase::Ramified => Self::ramified(m0, sym(Symbol::LamPiL)),
            LCase::Split => Self::split(m0, sym(Symbol::Lam10), sym(Symbol::Lam01)),
        }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |s: &str| Err(CatalogError::InvalidCharacter(s.to_string()));
        match self.case {
            LCase::Inert => {
                if self.lam_pi_l.is_some() || self.lam_10.is_some() || self.lam_01.is_some() {
                    return bad("inert character carries only lam_pi");
                }
            }
            LCase::Ramified => match &self.lam_pi_l {
                Some(l) if &(l * l) == &self.lam_pi => {}
                Some(_) => return bad("lam_piL^2 must equal lam_pi"),
                None => return bad("ramified character needs lam_piL"),
            },
            LCase::Split => match (&self.lam_10, &self.lam_01) {
                (Some(a), Some(b)) if &(a * b) == &self.lam_pi => {}
                (Some(_), Some(_)) => return bad("lam_10 * lam_01 must equal lam_pi"),
                _ => return bad("split character needs lam_10 and lam_01"),
            },
        }
        if self.lam_pi.is_zero() {
            return bad("lam_pi must be nonzero");
        }
        Ok(())
    }

    pub fn lam_pi_l(&self) -> &Scalar {
        self.lam_pi_l.as_ref().expect("ramified character")
    }

    pub fn lam_10(&self) -> &Scalar {
        self.lam_10.as_ref().expect("split character")
    }

    pub fn lam_01(&self) -> &Scalar {
        self.lam_01.as_ref().expect("split character")
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        BesselCharacter {
            case: self.case,
            m0: self.m0,
            lam_pi: f(&self.lam_pi),
            lam_pi_l: self.lam_pi_l.as_ref().map(&f),
            lam_10: self.lam_10.as_ref().map(&f),
            lam_01: self.lam_01.as_ref().map(&f),
        }
    }
}

fn rpow(k: i32) -> Scalar {
    RatFunc::var_pow(Symbol::R, k)
}

/// Nonzero-ness conditions on the Satake parameters, as `(name, expr)`
/// pairs where `expr` must not vanish.
pub fn restrictions(t: RepType, alpha: &Scalar) -> Vec<(&'static str, Scalar)> {
    let a2 = alpha * alpha;
    match t {
        RepType::IIa => vec![
            ("alpha^2 != q", &a2 - &q()),
            ("alpha^2 != q^-1", &a2 - &rpow(-2)),
            ("alpha != q^(3/2)", alpha - &rpow(3)),
            ("alpha != q^(-3/2)", alpha - &rpow(-3)),
        ],
        RepType::IIIa => vec![
            ("alpha != 1", alpha - &int(1)),
            ("alpha != q^2", alpha - &rpow(4)),
            ("alpha != q^-2", alpha - &rpow(-4)),
        ],
        _ => vec![],
    }
}

pub fn check_restrictions(t: RepType, alpha: &Scalar) -> Result<(), CatalogError> {
    for (which, e) in restrictions(t, alpha) {
        if e.is_zero() {
            return Err(CatalogError::RestrictionViolated { t, which: which.to_string() });
        }
    }
    Ok(())
}

/// Hecke and Atkin-Lehner eigenvalues with `q = r^2`.
pub fn eigenvalues(t: RepType, alpha: &Scalar, gamma: &Scalar) -> Result<EigenvalueData, CatalogError> {
    check_restrictions(t, alpha)?;
    let q = q();
    let one = int(1);
    let g2 = gamma * gamma;
    let ag = alpha * gamma;
    let (lambdas, mus, eta, cc) = match t {
        RepType::IIa => {
            let ainv = alpha.inv().map_err(|_| CatalogError::InvalidCharacter("alpha = 0".into()))?;
            let mu = &(&(&ag * &ag) * &(alpha + &ainv)) * &rpow(3);
            (vec![&ag * &q], vec![mu], EtaAction::Scalar(-&ag), &ag * &ag)
        }
        RepType::IIIa => {
            let ainv = alpha.inv().map_err(|_| CatalogError::InvalidCharacter("alpha = 0".into()))?;
            let base = &(alpha * &g2) * &q;
            let mu1 = &base * &(&(alpha * &q) + &one);
            let mu2 = &base * &(&(&ainv * &q) + &one);
            let eta = EtaAction::Swap { b1_to_b2: ag.clone(), b2_to_b1: gamma.clone() };
            (vec![&ag * &q, gamma * &q], vec![mu1, mu2], eta, alpha * &g2)
        }
        RepType::IVb => {
            let q3 = &(&q * &q) * &q;
            let mu1 = &g2 * &(&q + &one);
            let mu2 = &(&g2 * &q) * &(&q3 + &one);
            let eta = EtaAction::Swap { b1_to_b2: gamma.clone(), b2_to_b1: gamma.clone() };
            (vec![gamma.clone(), &(gamma * &q) * &q], vec![mu1, mu2], eta, g2.clone())
        }
        RepType::IVc => {
            let q3 = &(&q * &q) * &q;
            (vec![gamma * &q], vec![&g2 * &(&q3 + &one)], EtaAction::Scalar(-gamma), g2.clone())
        }
        RepType::Vb => {
            let mu = -&(&(&g2 * &q) * &(&q + &one));
            (vec![-&(gamma * &q)], vec![mu], EtaAction::Scalar(gamma.clone()), g2.clone())
        }
        RepType::VIa => {
            let mu = &(&g2 * &q) * &(&q + &one);
            (vec![gamma * &q], vec![mu], EtaAction::Scalar(-gamma), g2.clone())
        }
        RepType::VIb => {
            let mu = &(&g2 * &q) * &(&q + &one);
            (vec![gamma * &q], vec![mu], EtaAction::Scalar(gamma.clone()), g2.clone())
        }
    };
    Ok(EigenvalueData { t, lambdas, mus, eta, central_char_at_pi: cc })
}

/// Eigenvalues of the xi-twist of a type: `sigma -> xi sigma`, so `gamma -> -gamma`.
/// For `Vb` this yields type Vc.
pub fn eigenvalues_twisted(t: RepType, alpha: &Scalar, gamma: &Scalar) -> Result<EigenvalueData, CatalogError> {
    eigenvalues(t, alpha, &-gamma)
}

/// The symmetry `gamma -> gamma/alpha`, then `alpha -> 1/alpha`, which
/// exchanges the two IIIa eigenvectors: `f(alpha, gamma) -> f(1/alpha, alpha*gamma)`.
pub fn iiia_swap(f: &Scalar) -> Scalar {
    let a = sym(Symbol::Alpha);
    let ainv = a.inv().unwrap();
    let g = f.subs(Symbol::Gamma, &(&ainv * &sym(Symbol::Gamma))).expect("substitution");
    g.subs(Symbol::Alpha, &ainv).expect("substitution")
}

/// Central-character compatibility: `Lambda(varpi)` equals the central
/// character at `varpi`.
pub fn central_char_compat(t: RepType, ch: &BesselCharacter, alpha: &Scalar, gamma: &Scalar) -> bool {
    let cc = match t {
        RepType::IIa => {
            let ag = alpha * gamma;
            &ag * &ag
        }
        RepType::IIIa => &(alpha * gamma) * gamma,
        _ => gamma * gamma,
    };
    ch.lam_pi == cc
}

/// Exact equality when decidable from the values.
fn decide_eq(a: &Scalar, b: &Scalar) -> Option<bool> {
    let d = a - b;
    if d.is_zero() {
        Some(true)
    } else if d.is_constant() {
        Some(false)
    } else {
        None
    }
}

fn undecided(what: &str) -> CatalogError {
    CatalogError::Inexpressible(format!("cannot decide {what} for symbolic values"))
}

/// `Lambda = phi o N` for an unramified `phi` with `phi(varpi) = c`.
fn is_norm_composite(ch: &BesselCharacter, c: &Scalar) -> Result<bool, CatalogError> {
    if ch.m0 > 0 {
        return Ok(false);
    }
    let checks: Vec<(&Scalar, Scalar)> = match ch.case {
        LCase::Inert => vec![(&ch.lam_pi, c * c)],
        LCase::Ramified => vec![(ch.lam_pi_l(), c.clone())],
        LCase::Split => vec![(ch.lam_10(), c.clone()), (ch.lam_01(), c.clone())],
    };
    let mut all = true;
    for (v, target) in checks {
        match decide_eq(v, &target) {
            Some(true) => {}
            Some(false) => all = false,
            None => return Err(undecided("Lambda = phi o N")),
        }
    }
    Ok(all)
}

/// Split diagonal condition `Lambda(diag(a,b,b,a)) = f(a) g(b)` for unramified
/// `f`, `g`, given by `(f(varpi), g(varpi))`.
fn is_split_pair(ch: &BesselCharacter, f: &Scalar, g: &Scalar) -> Result<bool, CatalogError> {
    if ch.m0 > 0 {
        return Ok(false);
    }
    match (decide_eq(ch.lam_10(), f), decide_eq(ch.lam_01(), g)) {
        (Some(a), Some(b)) => Ok(a && b),
        (Some(false), _) | (_, Some(false)) => Ok(false),
        _ => Err(undecided("the diagonal character condition")),
    }
}

/// Existence of a `(Lambda, theta)`-Bessel model.
pub fn bessel_exists(t: RepType, ch: &BesselCharacter, sigma_at_pi: &Scalar, chi_at_pi: &Scalar) -> Result<bool, CatalogError> {
    bessel_exists_twisted(t, ch, sigma_at_pi, chi_at_pi, false)
}

/// As [`bessel_exists`], for the xi-twist of the type when `xi_twist` is
/// set (type Vc from Vb).
pub fn bessel_exists_twisted(
    t: RepType,
    ch: &BesselCharacter,
    sigma_at_pi: &Scalar,
    chi_at_pi: &Scalar,
    xi_twist: bool,
) -> Result<bool, CatalogError> {
    ch.validate()?;
    let sigma = sigma_at_pi.clone();
    let xi_sigma = -sigma_at_pi;
    let field = ch.case != LCase::Split;
    let out = match (t, xi_twist) {
        (RepType::IIa, _) => field.then(|| is_norm_composite(ch, &(chi_at_pi * sigma_at_pi)).map(|b| !b)),
        (RepType::IIIa, _) => None,
        (RepType::IVb, _) => Some(is_norm_composite(ch, &sigma)),
        (RepType::IVc, _) => {
            if field {
                Some(Ok(false))
            } else {
                let up = &q() * &sigma;
                let down = &sigma * &rpow(-2);
                let a = is_split_pair(ch, &down, &up);
                let b = is_split_pair(ch, &up, &down);
                Some(match (a, b) {
                    (Ok(x), Ok(y)) => Ok(x || y),
                    (Ok(true), _) | (_, Ok(true)) => Ok(true),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                })
            }
        }
        (RepType::Vb, false) => Some(is_norm_composite(ch, &sigma).and_then(|b| {
            if !field || !b {
                Ok(b)
            } else {
                is_norm_composite(ch, &xi_sigma).map(|c| !c)
            }
        })),
        (RepType::Vb, true) => Some(is_norm_composite(ch, &xi_sigma).and_then(|b| {
            if !field || !b {
                Ok(b)
            } else {
                is_norm_composite(ch, &sigma).map(|c| !c)
            }
        })),
        (RepType::VIa, _) => field.then(|| is_norm_composite(ch, &sigma).map(|b| !b)),
        (RepType::VIb, _) => Some(if field { is_norm_composite(ch, &sigma) } else { Ok(false) }),
    };
    out.unwrap_or(Ok(true))
}

/// Printed form of the existence condition.
pub fn existence_condition(t: RepType, case: LCase) -> &'static str {
    let field = case != LCase::Split;
    match (t, field) {
        (RepType::IIa, false) | (RepType::IIIa, _) | (RepType::VIa, false) => "all Lambda",
        (RepType::IIa, true) => "Lambda != (chi sigma) o N",
        (RepType::IVb, _) => "Lambda = sigma o N",
        (RepType::IVc, false) => "Lambda(diag(a,b,b,a)) = nu(a/b) sigma(ab) or nu(b/a) sigma(ab)",
        (RepType::IVc, true) => "none",
        (RepType::Vb, false) => "Lambda = sigma o N",
        (RepType::Vb, true) => "Lambda = sigma o N, Lambda != (xi sigma) o N",
        (RepType::VIa, true) => "Lambda != sigma o N",
        (RepType::VIb, false) => "none",
        (RepType::VIb, true) => "Lambda = sigma o N",
    }
}

/// Sign of the epsilon factor at 1/2, as a scalar in the Satake parameters.
pub fn epsilon_half(t: RepType, alpha: &Scalar, gamma: &Scalar) -> Scalar {
    match t {
        RepType::IIa => -&(alpha * gamma),
        RepType::IVc => -gamma,
        RepType::Vb => gamma.clone(),
        _ => int(1),
    }
}
