//! The integration formula on `GL2(o)` against brute-force summation over
//! `GL2(F_p)`.
//!
//! A function right invariant under `Gamma_0(p)` or `Gamma^0(p)` factors
//! through `GL2(F_p)`. On the left it transforms under `T(o)_m` by
//! `Lambda(diag(varpi^m, 1) t diag(varpi^-m, 1))`. At residue level that
//! factor is 1 unless `m = 0 < m0 = 1`, where `Lambda` restricted to
//! `o_L^x` is represented by the quadratic character `t -> (det t / p)`.
//! It is trivial on `o^x` and exists in the inert and split cases.

use std::collections::BTreeMap;

use bessel_scalar::{int, Scalar};

use super::gl2::Side;
use super::residue::{gl2, lower, w, ResidueMatrix};
use super::setup::{torus_residue, BesselSetup};
use super::{legendre, CosetError};
use crate::case::LCase;
use crate::catalog::BesselCharacter;

/// A function on `GL2(F_p)` given by one value per right coset of the
/// subgroup on `side`; unlisted cosets carry 0.
#[derive(Clone, Debug)]
pub struct TowerProbe {
    pub side: Side,
    values: BTreeMap<(i64, i64), Scalar>,
}

impl TowerProbe {
    pub fn new(side: Side) -> Self {
        TowerProbe { side, values: BTreeMap::new() }
    }

    /// Set the value on the coset of `g`.
    pub fn set(&mut self, g: &ResidueMatrix, v: Scalar) {
        self.values.insert(self.side.coset_key(g), v);
    }

    pub fn value(&self, g: &ResidueMatrix) -> Scalar {
        self.values.get(&self.side.coset_key(g)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `f(t rep gamma) = chi(t)` and 0 off the double coset of `rep`, where
    /// `chi` is the residue-level factor. The first value reached on a
    /// coset wins, so a forced zero shows up as an inconsistent probe.
    pub fn orbit(setup: &BesselSetup, m: u32, ch: &BesselCharacter, side: Side, rep: &ResidueMatrix) -> Result<Self, CosetError> {
        let chi = residue_character(setup, m, ch)?;
        let mut probe = TowerProbe::new(side);
        for t in torus_residue(setup, m) {
            let key = side.coset_key(&t.mul(rep));
            probe.values.entry(key).or_insert_with(|| int(chi(&t)));
        }
        Ok(probe)
    }

    /// One orbit probe per double coset `T(o)_m g Gamma`.
    pub fn spanning_family(setup: &BesselSetup, m: u32, ch: &BesselCharacter, side: Side) -> Result<Vec<Self>, CosetError> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        let t = torus_residue(setup, m);
        for g in gl2(setup.p) {
            if seen.contains(&side.coset_key(&g)) {
                continue;
            }
            for x in &t {
                seen.insert(side.coset_key(&x.mul(&g)));
            }
            out.push(TowerProbe::orbit(setup, m, ch, side, &g)?);
        }
        Ok(out)
    }
}

/// The factor `t -> Lambda(diag(varpi^m,1) t diag(varpi^-m,1))` on the
/// residue image of `T(o)_m`, as a `+-1`-valued function.
fn residue_character(setup: &BesselSetup, m: u32, ch: &BesselCharacter) -> Result<impl Fn(&ResidueMatrix) -> i64, CosetError> {
    if ch.case != setup.case {
        return Err(CosetError::UnsupportedCharacter(format!("{} character on a {} setup", ch.case, setup.case)));
    }
    let twisted = match ch.m0 {
        0 => false,
        1 if setup.case == LCase::Ramified => {
            return Err(CosetError::UnsupportedCharacter("ramified with m0 = 1 needs p-th roots of unity".into()))
        }
        1 => m == 0,
        k => return Err(CosetError::UnsupportedCharacter(format!("m0 = {k} is not seen mod p"))),
    };
    let p = setup.p;
    Ok(move |t: &ResidueMatrix| if twisted { legendre(t.det(), p) } else { 1 })
}

/// `(1/|GL2(F_p)|) sum_g f(g)`, after checking `f(t g) = chi(t) f(g)`.
pub fn brute_force_integral(setup: &BesselSetup, m: u32, ch: &BesselCharacter, probe: &TowerProbe) -> Result<Scalar, CosetError> {
    let chi = residue_character(setup, m, ch)?;
    let t = torus_residue(setup, m);
    let g_all = gl2(setup.p);
    let mut sum = Scalar::zero();
    for g in &g_all {
        let fg = probe.value(g);
        for x in &t {
            let lhs = probe.value(&x.mul(g));
            if lhs != &int(chi(x)) * &fg {
                return Err(CosetError::InconsistentProbe(g.to_string()));
            }
        }
        sum = &sum + &fg;
    }
    Ok(&sum / &int(g_all.len() as i64))
}

/// The closed form of the integral in terms of a few values of `f`.
pub fn integration_formula(setup: &BesselSetup, m: u32, m0: u32, side: Side, f: impl Fn(&ResidueMatrix) -> Scalar) -> Scalar {
    let p = setup.p;
    let q = int(p);
    let q1 = int(p + 1);
    let one = ResidueMatrix::identity(2, p);
    let w = w(p);
    if m < m0 {
        return Scalar::zero();
    }
    // `a` is evaluated with weight 1, `b` with weight q.
    let (a, b) = match side {
        Side::Gamma0 => (one.clone(), w.clone()),
        Side::GammaUpper0 => (w.clone(), one.clone()),
    };
    let at_u = |u: i64| match side {
        Side::Gamma0 => f(&lower(p, u)),
        Side::GammaUpper0 => f(&lower(p, u).mul(&w)),
    };
    if m >= m0.max(1) {
        return &(&f(&a) + &(&q * &f(&b))) / &q1;
    }
    match setup.case {
        LCase::Inert => f(&b),
        LCase::Ramified => &(&at_u(setup.roots[0]) + &(&q * &f(&b))) / &q1,
        LCase::Split => {
            let s = &at_u(setup.roots[0]) + &at_u(setup.roots[1]);
            &(&s + &(&int(p - 1) * &f(&b))) / &q1
        }
    }
}
