//! Hecke operator rows: `(T B)(g)` as a linear combination of tower values.

use std::fmt;

use bessel_scalar::{int, q, Scalar};
use serde::Serialize;

use super::families::FamilyId;
use super::index::{vanishes, Tag, TowerIndex};
use super::EngineError;
use crate::case::LCase;
use crate::catalog::BesselCharacter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Operator {
    T10,
    T01,
    Constraint(FamilyId),
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::T10 => f.write_str("T10"),
            Operator::T01 => f.write_str("T01"),
            Operator::Constraint(id) => write!(f, "{}", id.name()),
        }
    }
}

/// `coeff * B_comp(idx)`. `comp` selects the eigenvector in two-dimensional types.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub comp: usize,
    pub idx: TowerIndex,
    pub coeff: Scalar,
}

/// For Hecke rows: `(T B_comp)(target) = sum of terms`. For constraint rows:
/// `sum of terms = 0`, with `target` naming the instance.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRow {
    pub target: TowerIndex,
    pub comp: usize,
    pub operator: Operator,
    pub terms: Vec<Term>,
}

impl LinearRow {
    /// Terms of the homogeneous relation, given the eigenvalue for Hecke rows.
    pub fn homogeneous(&self, eigen: Option<&Scalar>) -> Vec<Term> {
        match self.operator {
            Operator::Constraint(_) => self.terms.clone(),
            _ => {
                let e = eigen.expect("Hecke row needs its eigenvalue");
                let mut out: Vec<Term> = self
                    .terms
                    .iter()
                    .map(|t| Term { comp: t.comp, idx: t.idx, coeff: -&t.coeff })
                    .collect();
                add_term(&mut out, self.comp, self.target, e.clone());
                out.retain(|t| !t.coeff.is_zero());
                out
            }
        }
    }

    /// Move the row to another eigenvector component.
    pub fn on_component(mut self, comp: usize) -> Self {
        self.comp = comp;
        for t in &mut self.terms {
            t.comp = comp;
        }
        self
    }

    pub fn indices(&self) -> impl Iterator<Item = &TowerIndex> {
        self.terms.iter().map(|t| &t.idx)
    }
}

pub(crate) fn add_term(terms: &mut Vec<Term>, comp: usize, idx: TowerIndex, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    if let Some(t) = terms.iter_mut().find(|t| t.comp == comp && t.idx == idx) {
        t.coeff = &t.coeff + &coeff;
    } else {
        terms.push(Term { comp, idx, coeff });
    }
}

/// Collects terms, dropping automatically vanishing indices.
pub(crate) struct Builder<'a> {
    ch: &'a BesselCharacter,
    comp: usize,
    terms: Vec<Term>,
}

impl<'a> Builder<'a> {
    pub(crate) fn new(ch: &'a BesselCharacter, comp: usize) -> Self {
        Builder { ch, comp, terms: Vec::new() }
    }

    pub(crate) fn add(&mut self, w: Tag, l: i64, m: i64, coeff: Scalar) -> &mut Self {
        self.add_on(self.comp, w, l, m, coeff)
    }

    pub(crate) fn add_on(&mut self, comp: usize, w: Tag, l: i64, m: i64, coeff: Scalar) -> &mut Self {
        let idx = TowerIndex::new(l, m, w);
        debug_assert!(idx.is_representative(self.ch.case), "not a representative: {idx}");
        if !vanishes(&idx, self.ch) {
            add_term(&mut self.terms, comp, idx, coeff);
        }
        self
    }

    pub(crate) fn finish(mut self, target: TowerIndex, operator: Operator) -> LinearRow {
        self.terms.retain(|t| !t.coeff.is_zero());
        LinearRow { target, comp: self.comp, operator, terms: self.terms }
    }
}

/// Which case distinction of the Hecke lemmas applies at `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Branch {
    /// `m < m0`
    Below,
    /// `m >= max(m0, 1)`
    Generic,
    /// `m = m0 = 0`
    Base(LCase),
}

pub(crate) fn branch(m: i64, ch: &BesselCharacter) -> Branch {
    let m0 = ch.m0 as i64;
    if m < m0 {
        Branch::Below
    } else if m >= m0.max(1) {
        Branch::Generic
    } else {
        Branch::Base(ch.case)
    }
}

/// Frequently used powers of `q`.
pub(crate) struct Qs {
    pub q: Scalar,
    pub q2: Scalar,
    pub q3: Scalar,
    pub q4: Scalar,
    pub qm1: Scalar,
}

impl Qs {
    pub(crate) fn new() -> Self {
        let q = q();
        let q2 = &q * &q;
        let q3 = &q2 * &q;
        let q4 = &q3 * &q;
        let qm1 = &q - &int(1);
        Qs { q, q2, q3, q4, qm1 }
    }
}

fn check_target(idx: &TowerIndex, ch: &BesselCharacter) -> Result<(), EngineError> {
    if !idx.is_representative(ch.case) {
        return Err(EngineError::OutOfStatedRange(*idx));
    }
    let ok = match idx.w {
        Tag::E | Tag::S2 | Tag::S12 | Tag::S212 => idx.l >= 0,
        Tag::U0 => idx.l >= -1 && ch.m0 == 0,
        Tag::U1 | Tag::U2 => idx.l >= 0 && ch.m0 == 0,
    };
    if ok {
        Ok(())
    } else {
        Err(EngineError::OutOfStatedRange(*idx))
    }
}

/// `(T10 B)(idx)`.
pub fn t10_row(idx: &TowerIndex, ch: &BesselCharacter) -> Result<LinearRow, EngineError> {
    check_target(idx, ch)?;
    let Qs { q, q2, q3, qm1, .. } = Qs::new();
    let lam = &ch.lam_pi;
    let (l, m) = (idx.l, idx.m);
    let mut b = Builder::new(ch, 0);
    use Tag::*;
    match idx.w {
        E => {
            b.add(E, l + 1, m, q3.clone());
        }
        S2 => {
            b.add(E, l + 1, m, &q2 * &qm1);
            match branch(m, ch) {
                Branch::Below => {
                    b.add(S12, l - 1, m + 1, -&q);
                }
                Branch::Generic => {
                    b.add(S2, l + 1, m - 1, &q * lam);
                    b.add(S12, l - 1, m + 1, &q * &qm1);
                }
                Branch::Base(LCase::Inert) => {
                    b.add(S12, l - 1, 1, q2.clone());
                }
                Branch::Base(LCase::Ramified) => {
                    b.add(U0, l, 0, &q * ch.lam_pi_l());
                    b.add(S12, l - 1, 1, &q * &qm1);
                }
                Branch::Base(LCase::Split) => {
                    b.add(U2, l, 0, &q * ch.lam_10());
                    b.add(U1, l, 0, &q * ch.lam_01());
                    b.add(S12, l - 1, 1, &q * &(&q - &int(2)));
                }
            }
        }
        S12 => {
            b.add(E, l + 1, m, &q2 * &qm1);
            match branch(m, ch) {
                Branch::Below => {
                    b.add(S2, l + 1, m - 1, -&(&q * lam));
                }
                Branch::Generic => {
                    b.add(S12, l - 1, m + 1, q2.clone());
                }
                Branch::Base(_) => unreachable!("s1s2 representatives need m >= 1"),
            }
        }
        S212 => {
            b.add(E, l + 1, m, &q2 * &qm1);
            b.add(S212, l - 1, m, lam.clone());
            match branch(m, ch) {
                Branch::Below => {}
                Branch::Generic => {
                    b.add(S12, l - 1, m + 1, &q * &qm1);
                    b.add(S2, l + 1, m - 1, &qm1 * lam);
                }
                Branch::Base(LCase::Inert) => {
                    b.add(S12, l - 1, 1, &q2 - &int(1));
                }
                Branch::Base(LCase::Ramified) => {
                    b.add(U0, l, 0, &qm1 * ch.lam_pi_l());
                    b.add(S12, l - 1, 1, &q * &qm1);
                }
                Branch::Base(LCase::Split) => {
                    b.add(U1, l, 0, &qm1 * ch.lam_01());
                    b.add(U2, l, 0, &qm1 * ch.lam_10());
                    b.add(S12, l - 1, 1, &qm1 * &qm1);
                }
            }
        }
        U0 => {
            if l == -1 {
                b.add(E, 0, 0, -&q2);
            } else {
                b.add(E, l + 1, 0, &q2 * &qm1);
                b.add(S12, l - 1, 1, q2.clone());
            }
        }
        U1 | U2 => {
            let own = if idx.w == U1 { ch.lam_01() } else { ch.lam_10() };
            b.add(E, l + 1, 0, &q2 * &qm1);
            b.add(S12, l - 1, 1, &q * &qm1);
            b.add(idx.w, l, 0, &q * own);
        }
    }
    Ok(b.finish(*idx, Operator::T10))
}

/// `(T01 B)(idx)` for `idx.w` in `E`, `S2` and the `u`-cosets.
pub fn t01_row(idx: &TowerIndex, ch: &BesselCharacter) -> Result<LinearRow, EngineError> {
    if matches!(idx.w, Tag::S12 | Tag::S212) {
        return Err(EngineError::UnsupportedIndex(*idx));
    }
    check_target(idx, ch)?;
    let Qs { q, q2, q3, q4, qm1 } = Qs::new();
    let lam = &ch.lam_pi;
    let (l, m) = (idx.l, idx.m);
    let mut b = Builder::new(ch, 0);
    use Tag::*;
    match idx.w {
        E => match branch(m, ch) {
            Branch::Below => {}
            Branch::Generic => {
                b.add(E, l + 2, m - 1, &q3 * lam);
                b.add(E, l, m + 1, q4.clone());
            }
            Branch::Base(LCase::Inert) => {
                b.add(E, l, 1, &q3 * &(&q + &int(1)));
            }
            Branch::Base(LCase::Ramified) => {
                b.add(E, l + 1, 0, &q3 * ch.lam_pi_l());
                b.add(E, l, 1, q4.clone());
            }
            Branch::Base(LCase::Split) => {
                b.add(E, l + 1, 0, &q3 * &(ch.lam_10() + ch.lam_01()));
                b.add(E, l, 1, &q3 * &qm1);
            }
        },
        S2 => {
            match branch(m, ch) {
                Branch::Below => {
                    b.add(S12, l, m + 1, -&q3);
                    b.add(S12, l - 2, m + 1, -lam);
                }
                Branch::Generic => {
                    b.add(S2, l + 2, m - 1, &q3 * lam);
                    b.add(S2, l, m - 1, lam * lam);
                    b.add(S12, l - 2, m + 1, &qm1 * lam);
                    b.add(S12, l, m + 1, &q3 * &qm1);
                }
                Branch::Base(LCase::Inert) => {
                    b.add(S12, l, 1, q4.clone());
                    b.add(S12, l - 2, 1, &q * lam);
                }
                Branch::Base(LCase::Ramified) => {
                    let ll = ch.lam_pi_l();
                    b.add(U0, l + 1, 0, &q3 * ll);
                    b.add(U0, l - 1, 0, lam * ll);
                    b.add(S12, l - 2, 1, &qm1 * lam);
                    b.add(S12, l, 1, &q3 * &qm1);
                }
                Branch::Base(LCase::Split) => {
                    let (l10, l01) = (ch.lam_10(), ch.lam_01());
                    let qm2 = &q - &int(2);
                    b.add(U2, l + 1, 0, &q3 * l10);
                    b.add(U1, l + 1, 0, &q3 * l01);
                    b.add(U2, l - 1, 0, lam * l10);
                    b.add(U1, l - 1, 0, lam * l01);
                    b.add(S12, l, 1, &q3 * &qm2);
                    b.add(S12, l - 2, 1, &qm2 * lam);
                }
            }
            b.add(E, l, m + 1, &q2 * &qm1);
            if l == 0 && m == 0 {
                b.add(E, 0, 0, &int(ch.case.symbol()) * &(&q * lam));
            } else if l >= 1 {
                b.add(E, l, m, &(&q * &qm1) * lam);
            }
        }
        U0 => {
            let ll = ch.lam_pi_l();
            match l {
                -1 => {
                    b.add(S12, -1, 1, q4.clone());
                    b.add(E, 0, 0, -&(&q2 * ll));
                }
                0 => {
                    b.add(S12, 0, 1, q4.clone());
                    b.add(E, 1, 0, &(&q2 * &qm1) * ll);
                    b.add(E, 0, 0, -&(&q * lam));
                }
                _ => {
                    b.add(S12, l, 1, q4.clone());
                    b.add(S12, l - 2, 1, &q * lam);
                    b.add(E, l + 1, 0, &(&q2 * &qm1) * ll);
                    b.add(E, l, 0, &(lam * &q) * &qm1);
                }
            }
        }
        U1 | U2 => {
            let (own, other) = if idx.w == U1 {
                (ch.lam_01(), ch.lam_10())
            } else {
                (ch.lam_10(), ch.lam_01())
            };
            b.add(idx.w, l + 1, 0, &q3 * own);
            b.add(S12, l, 1, &q3 * &qm1);
            b.add(E, l + 1, 0, &(&q2 * &qm1) * other);
            if l >= 1 {
                b.add(E, l, 0, &(lam * &q) * &qm1);
                b.add(idx.w, l - 1, 0, lam * own);
                b.add(S12, l - 2, 1, &qm1 * lam);
            }
        }
        S12 | S212 => unreachable!(),
    }
    Ok(b.finish(*idx, Operator::T01))
}
