//! Formal check of the two consequences of the Hecke rows that mix the
//! `s2`-tower with the main tower.

use std::collections::BTreeMap;

use bessel_scalar::{int, q, Scalar};
use serde::Serialize;

use super::index::{vanishes, Tag, TowerIndex};
use super::rows::{t01_row, t10_row};
use super::EngineError;
use crate::case::LCase;
use crate::catalog::BesselCharacter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Consequence {
    T01s2conslemmaeq1,
    T01s2conseq4,
}

impl Consequence {
    pub const ALL: [Consequence; 2] = [Consequence::T01s2conslemmaeq1, Consequence::T01s2conseq4];

    pub fn name(self) -> &'static str {
        match self {
            Consequence::T01s2conslemmaeq1 => "T01s2conslemmaeq1",
            Consequence::T01s2conseq4 => "T01s2conseq4",
        }
    }
}

/// How a term enters the left side: `lambda B(x)` and `mu B(x)` are
/// replaced by the Hecke row expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Apply {
    T10,
    T01,
    Plain,
}

/// `coeff * op(B(h(l+dl, m+dm) w))`.
#[derive(Clone, Debug)]
pub struct FormalTerm {
    pub coeff: Scalar,
    pub apply: Apply,
    pub dl: i64,
    pub dm: i64,
    pub w: Tag,
}

#[derive(Clone, Debug)]
pub struct FormalIdentity {
    pub id: Consequence,
    pub lhs: Vec<FormalTerm>,
    pub rhs: Vec<FormalTerm>,
}

fn ft(coeff: Scalar, apply: Apply, dl: i64, dm: i64, w: Tag) -> FormalTerm {
    FormalTerm { coeff, apply, dl, dm, w }
}

impl FormalIdentity {
    pub fn new(id: Consequence, ch: &BesselCharacter) -> Self {
        let q = q();
        let q2 = &q * &q;
        let q3 = &q2 * &q;
        let q4 = &q3 * &q;
        let q5 = &q4 * &q;
        let qm1 = &q - &int(1);
        let lp = ch.lam_pi.clone();
        use Apply::*;
        use Tag::*;
        match id {
            Consequence::T01s2conslemmaeq1 => FormalIdentity {
                id,
                lhs: vec![ft(lp, T10, 0, 0, S2), ft(-&q, T01, 1, 0, S2), ft(q3.clone(), T10, 2, 0, S2)],
                rhs: vec![ft(&q5 * &qm1, Plain, 3, 0, E), ft(-&(&q3 * &qm1), Plain, 1, 1, E)],
            },
            Consequence::T01s2conseq4 => FormalIdentity {
                id,
                lhs: vec![ft(int(1), T01, 0, 0, S2), ft(-&q2, T10, 1, 0, S2), ft(-&(&lp * &lp), Plain, 0, -1, S2)],
                rhs: vec![ft(&q2 * &qm1, Plain, 0, 1, E), ft(-&(&q4 * &qm1), Plain, 2, 0, E)],
            },
        }
    }

    /// Number of coefficients, left side first.
    pub fn len(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The identity with coefficient `k` replaced by `f(coeff)`.
    pub fn mutated(&self, k: usize, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = self.clone();
        let n = out.lhs.len();
        let t = if k < n { &mut out.lhs[k] } else { &mut out.rhs[k - n] };
        t.coeff = f(&t.coeff);
        out
    }

    /// Left minus right side at `(l, m)` as a formal combination of tower values.
    pub fn defect(&self, l: i64, m: i64, ch: &BesselCharacter) -> Result<BTreeMap<TowerIndex, Scalar>, EngineError> {
        let mut acc: BTreeMap<TowerIndex, Scalar> = BTreeMap::new();
        let mut add = |idx: TowerIndex, c: Scalar| {
            if vanishes(&idx, ch) {
                return;
            }
            let e = acc.entry(idx).or_insert_with(Scalar::zero);
            *e = &*e + &c;
        };
        for (sign, terms) in [(1, &self.lhs), (-1, &self.rhs)] {
            for t in terms {
                let idx = TowerIndex::new(l + t.dl, m + t.dm, t.w);
                let c = if sign < 0 { -&t.coeff } else { t.coeff.clone() };
                match t.apply {
                    Apply::Plain => add(idx, c),
                    Apply::T10 | Apply::T01 => {
                        let row = if t.apply == Apply::T10 { t10_row(&idx, ch)? } else { t01_row(&idx, ch)? };
                        for term in row.terms {
                            add(term.idx, &c * &term.coeff);
                        }
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(acc)
    }

    /// Whether the identity holds at every stated instance for the character.
    pub fn holds(&self, ch: &BesselCharacter) -> Result<bool, EngineError> {
        for (l, m) in instances(self.id, ch.m0) {
            if !self.defect(l, m, ch)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Instances `(l, m)` checked for a conductor exponent: the stated ranges,
/// cut off after a few steps.
pub fn instances(id: Consequence, m0: u32) -> Vec<(i64, i64)> {
    let m0 = m0 as i64;
    let base = m0.max(1);
    match id {
        Consequence::T01s2conslemmaeq1 => {
            let start = if m0 > 0 { m0 - 1 } else { base };
            (start..=base + 2).flat_map(|m| (0..=3).map(move |l| (l, m))).collect()
        }
        Consequence::T01s2conseq4 => (base..=base + 3).map(|m| (0, m)).collect(),
    }
}

/// Conductor exponents and cases over which the identities are checked,
/// with a generic character.
pub fn check_characters() -> Vec<BesselCharacter> {
    let mut out = Vec::new();
    for m0 in 0..=2 {
        for case in LCase::ALL {
            out.push(BesselCharacter::symbolic(case, m0));
        }
    }
    out
}

/// The identity holds formally in every case and for `m0` in `0..=2`.
pub fn verify_consequence_identity(id: Consequence) -> bool {
    check_characters().iter().all(|ch| FormalIdentity::new(id, ch).holds(ch).unwrap_or(false))
}

/// As [`verify_consequence_identity`] for the identity with coefficient `k`
/// replaced by `f(coeff)`.
pub fn verify_mutated(id: Consequence, k: usize, f: impl Fn(&Scalar) -> Scalar) -> bool {
    check_characters().iter().all(|ch| FormalIdentity::new(id, ch).mutated(k, &f).holds(ch).unwrap_or(false))
}
