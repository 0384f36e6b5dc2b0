//! Shared configuration helpers for the integration tests.
#![allow(dead_code)]

use bessel_core::case::LCase;
use bessel_core::catalog::{bessel_exists, central_char_compat, BesselCharacter, RepType};
use bessel_core::engine::system::{solve_rational, Solved};
use bessel_core::engine::{applicable, assemble_eigensystem, Components, EigenSystem, FamilyId, Model, Window};
use bessel_core::Specialization;
use bessel_scalar::{int, rat, RatFunc, Rational, Scalar, Symbol};

pub fn c(n: i64, d: i64) -> Scalar {
    RatFunc::from_rational(rat(n, d))
}

pub fn r_pow(k: i32) -> Scalar {
    RatFunc::var_pow(Symbol::R, k)
}

/// `q = 9`.
pub fn spec() -> Specialization {
    Specialization::new().with(Symbol::R, rat(3, 1))
}

/// Candidate values for `Lambda` built from the Satake parameters.
fn candidates(alpha: &Scalar, gamma: &Scalar) -> Vec<Scalar> {
    let mut base = vec![int(1), c(2, 1), c(1, 2), c(3, 1), c(1, 3), r_pow(2), r_pow(-2)];
    base.extend([alpha.clone()]);
    let mut out = Vec::new();
    for b in &base {
        for s in [gamma * b, alpha * &(gamma * b)] {
            out.push(s.clone());
            out.push(-&s);
        }
    }
    out.sort_by_key(|x| x.to_string());
    out.dedup();
    out
}

/// Characters with conductor exponent `m0` compatible with the central
/// character and admitting a Bessel model, one per distinct value set.
pub fn characters(t: RepType, alpha: &Scalar, gamma: &Scalar, case: LCase, m0: u32) -> Vec<BesselCharacter> {
    let cc = Model::new(t, alpha.clone(), gamma.clone()).unwrap().eig.central_char_at_pi;
    let cands = candidates(alpha, gamma);
    let raw: Vec<BesselCharacter> = match case {
        LCase::Inert => vec![BesselCharacter::inert(m0, cc.clone())],
        LCase::Ramified => {
            cands.iter().filter(|s| &(*s * *s) == &cc).map(|s| BesselCharacter::ramified(m0, s.clone())).collect()
        }
        LCase::Split => cands.iter().map(|v| BesselCharacter::split(m0, v.clone(), &cc / v)).collect(),
    };
    raw.into_iter()
        .filter(|ch| central_char_compat(t, ch, alpha, gamma) && bessel_exists(t, ch, gamma, alpha) == Ok(true))
        .collect()
}

/// The IIa split character with `Lambda(1,varpi) = Lambda(varpi,1) = -omega`,
/// `omega = -alpha gamma`.
pub fn iia_exceptional(alpha: &Scalar, gamma: &Scalar) -> BesselCharacter {
    let v = alpha * gamma;
    BesselCharacter::split(0, v.clone(), v)
}

/// Split configurations with `Lambda(1,varpi) = -omega`, where `omega` is the
/// Atkin-Lehner eigenvalue: `-alpha gamma` for IIa and `-gamma` for VIa. The
/// Hecke rows alone do not settle the value at `h(0,0)` there.
pub fn is_exceptional(t: RepType, alpha: &Scalar, gamma: &Scalar, ch: &BesselCharacter) -> bool {
    if ch.case != LCase::Split || ch.m0 != 0 {
        return false;
    }
    match t {
        RepType::IIa => ch.lam_01() == &(alpha * gamma),
        RepType::VIa => ch.lam_01() == gamma,
        _ => false,
    }
}

/// The component selection used for a type: both eigenvectors jointly for
/// IVb, one at a time otherwise.
pub fn selections(t: RepType) -> Vec<Components> {
    match t {
        RepType::IVb => vec![Components::Joint],
        RepType::IIIa => vec![Components::Single(0), Components::Single(1)],
        _ => vec![Components::Single(0)],
    }
}

/// Families derived from the Hecke rows, checked after solving.
pub const HELD_OUT: [FamilyId; 4] =
    [FamilyId::T01s2conslemmaeq1, FamilyId::T01s2conseq4, FamilyId::T01s2conseq4b, FamilyId::T01s2conslemmaeq1b];

pub fn system(model: &Model, sel: Components, ch: &BesselCharacter, held_out: &[FamilyId]) -> EigenSystem {
    let joint = matches!(sel, Components::Joint);
    let fams: Vec<FamilyId> =
        applicable(model.t, ch, joint).into_iter().filter(|f| !held_out.contains(f)).collect();
    assemble_eigensystem(model, sel, ch, Window::default_for(ch.m0), &fams).unwrap()
}

pub fn solve(model: &Model, sel: Components, ch: &BesselCharacter, held_out: &[FamilyId]) -> (EigenSystem, Solved<Rational>) {
    let joint = matches!(sel, Components::Joint);
    let held: Vec<FamilyId> =
        applicable(model.t, ch, joint).into_iter().filter(|f| held_out.contains(f)).collect();
    let sys = system(model, sel, ch, &held);
    let s = solve_rational(&sys, &spec(), &held).unwrap();
    (sys, s)
}
