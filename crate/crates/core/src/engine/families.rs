//! Derived linear relations among tower values, emitted as homogeneous rows.

use std::fmt;
use std::str::FromStr;

use bessel_scalar::{int, Scalar};
use serde::{Serialize, Serializer};

use super::index::{Tag, TowerIndex, Window};
use super::rows::{Builder, LinearRow, Operator, Qs};
use super::Model;
use crate::case::LCase;
use crate::catalog::{BesselCharacter, EtaAction, RepType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    T01s2conslemmaeq1,
    T01s2conseq4,
    T01s2conseq4b,
    T01s2conslemmaeq1b,
    OnedimT10eq1,
    OnedimT10eq5a,
    VIbspecialeq2,
    VIbspecialeq3,
    B1S2s1s2,
    Eq318,
    Eq328,
    Eq428,
    Inert3a1,
    Inert3a2,
    Inert3a3,
    AtkinLehner,
    /// `B(h(0,m0)) = 0`, the hypothesis under which the conditional families hold.
    Premise,
}

impl FamilyId {
    pub const ALL: [FamilyId; 17] = [
        FamilyId::T01s2conslemmaeq1,
        FamilyId::T01s2conseq4,
        FamilyId::T01s2conseq4b,
        FamilyId::T01s2conslemmaeq1b,
        FamilyId::OnedimT10eq1,
        FamilyId::OnedimT10eq5a,
        FamilyId::VIbspecialeq2,
        FamilyId::VIbspecialeq3,
        FamilyId::B1S2s1s2,
        FamilyId::Eq318,
        FamilyId::Eq328,
        FamilyId::Eq428,
        FamilyId::Inert3a1,
        FamilyId::Inert3a2,
        FamilyId::Inert3a3,
        FamilyId::AtkinLehner,
        FamilyId::Premise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::T01s2conslemmaeq1 => "T01s2conslemmaeq1",
            FamilyId::T01s2conseq4 => "T01s2conseq4",
            FamilyId::T01s2conseq4b => "T01s2conseq4b",
            FamilyId::T01s2conslemmaeq1b => "T01s2conslemmaeq1b",
            FamilyId::OnedimT10eq1 => "onedimT10eq1",
            FamilyId::OnedimT10eq5a => "onedimT10eq5a",
            FamilyId::VIbspecialeq2 => "VIbspecialeq2",
            FamilyId::VIbspecialeq3 => "VIbspecialeq3",
            FamilyId::B1S2s1s2 => "B1-s2s1s2-l-l+1",
            FamilyId::Eq318 => "3aT10eq318",
            FamilyId::Eq328 => "3aT10eq328",
            FamilyId::Eq428 => "3aT10eq428",
            FamilyId::Inert3a1 => "m0=0-inert-3a-1",
            FamilyId::Inert3a2 => "m0=0-inert-3a-2",
            FamilyId::Inert3a3 => "m0=0-inert-3a-3",
            FamilyId::AtkinLehner => "atkin-lehner",
            FamilyId::Premise => "premise",
        }
    }

    /// Families that only hold when the main tower vanishes identically.
    pub fn is_conditional(self) -> bool {
        matches!(self, FamilyId::Inert3a1 | FamilyId::Inert3a2 | FamilyId::Inert3a3 | FamilyId::Premise)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        FamilyId::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown constraint family {s:?}"))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Unconditional families that hold for the type and character. Atkin-Lehner
/// rows couple both eigenvectors of a two-dimensional type, so they are only
/// listed when `joint` is set or the type is one-dimensional.
pub fn applicable(t: RepType, ch: &BesselCharacter, joint: bool) -> Vec<FamilyId> {
    use FamilyId::*;
    let mut out = vec![T01s2conslemmaeq1, T01s2conseq4];
    if ch.m0 > 0 {
        out.extend([T01s2conseq4b, T01s2conslemmaeq1b]);
    }
    if t.p1_dim() == 1 {
        out.push(OnedimT10eq1);
    }
    if matches!(t, RepType::IIa | RepType::IVc | RepType::Vb | RepType::VIa) {
        out.push(OnedimT10eq5a);
    }
    if t == RepType::VIb {
        out.push(VIbspecialeq2);
        if ch.case != LCase::Inert {
            out.push(VIbspecialeq3);
        }
    }
    if t == RepType::IIIa {
        out.extend([B1S2s1s2, Eq318, Eq328, Eq428]);
    }
    if t.p1_dim() == 1 || joint {
        out.push(AtkinLehner);
    }
    out
}

/// Conditional families valid for the type and character, if any.
pub fn conditional(t: RepType, ch: &BesselCharacter) -> Vec<FamilyId> {
    if t == RepType::IIIa && ch.case == LCase::Inert && ch.m0 == 0 {
        vec![FamilyId::Inert3a1, FamilyId::Inert3a2, FamilyId::Inert3a3]
    } else {
        vec![]
    }
}

/// All instances of a family for eigenvector `comp`, with indices up to the
/// window bounds. Instances may reference indices beyond the window; the
/// assembler drops those.
pub fn family_rows(id: FamilyId, model: &Model, comp: usize, ch: &BesselCharacter, w: &Window) -> Vec<LinearRow> {
    let mut out = Vec::new();
    if id == FamilyId::AtkinLehner {
        atkin_lehner(model, ch, w, &mut out);
        return out;
    }
    if id == FamilyId::Premise {
        let mut b = Builder::new(ch, comp);
        let m0 = ch.m0 as i64;
        b.add(Tag::E, 0, m0, int(1));
        out.push(b.finish(TowerIndex::new(0, m0, Tag::E), Operator::Constraint(id)));
        return out;
    }
    // The IIIa relations are stated for the first eigenvector; the second
    // follows from the parameter swap.
    let (alpha, gamma) = if model.t == RepType::IIIa && comp == 1 {
        let ainv = model.alpha.inv().expect("alpha is nonzero");
        (ainv, &model.alpha * &model.gamma)
    } else {
        (model.alpha.clone(), model.gamma.clone())
    };
    let lam = &model.eig.lambdas[comp];
    let mu = &model.eig.mus[comp];
    let Qs { q, q2, q3, q4, qm1 } = Qs::new();
    let q5 = &q4 * &q;
    let lp = &ch.lam_pi;
    let m0 = ch.m0 as i64;
    let base = m0.max(1);
    use FamilyId::*;
    use Tag::*;
    let mut emit = |anchor: TowerIndex, f: &mut dyn FnMut(&mut Builder)| {
        let mut b = Builder::new(ch, comp);
        f(&mut b);
        let row = b.finish(anchor, Operator::Constraint(id));
        if !row.terms.is_empty() {
            out.push(row);
        }
    };
    for m in 0..=w.m_max {
        for l in -1..=w.l_max {
            let at = TowerIndex::new(l, m, E);
            match id {
                T01s2conslemmaeq1 => {
                    if l >= 0 && (m >= base || (m0 > 0 && m >= m0 - 1)) {
                        emit(at, &mut |b| {
                            b.add(S2, l, m, lam * lp);
                            b.add(S2, l + 1, m, -&(mu * &q));
                            b.add(S2, l + 2, m, lam * &q3);
                            b.add(E, l + 3, m, -&(&q5 * &qm1));
                            b.add(E, l + 1, m + 1, &q3 * &qm1);
                        });
                    }
                }
                T01s2conseq4 => {
                    if l == 0 && m >= base {
                        emit(at, &mut |b| {
                            b.add(S2, 0, m, mu.clone());
                            b.add(S2, 1, m, -&(&q2 * lam));
                            b.add(S2, 0, m - 1, -&(lp * lp));
                            b.add(E, 0, m + 1, -&(&q2 * &qm1));
                            b.add(E, 2, m, &q4 * &qm1);
                        });
                    }
                }
                T01s2conseq4b => {
                    if l == 0 && m0 > 0 && m == m0 {
                        let qinv2 = q2.inv().unwrap();
                        emit(at, &mut |b| {
                            b.add(S2, 0, m0, mu.clone());
                            b.add(S2, 1, m0, -&(&q2 * lam));
                            b.add(S2, 0, m0 - 1, -&(lp * lp));
                            b.add(E, 0, m0, -&(&(&qinv2 * &qm1) * &(mu - &(lam * lam))));
                        });
                    }
                }
                T01s2conslemmaeq1b => {
                    if l >= 0 && m0 > 0 && m == m0 {
                        emit(at, &mut |b| {
                            b.add(S2, l, m0 - 1, lam * lp);
                            b.add(S2, l + 1, m0 - 1, -&(mu * &q));
                            b.add(S2, l + 2, m0 - 1, lam * &q3);
                            b.add(E, l, m0, lam * &qm1);
                        });
                    }
                }
                OnedimT10eq1 => {
                    if l >= 0 {
                        emit(at, &mut |b| {
                            b.add(E, l, m, lam.clone());
                            b.add(E, l + 1, m, -&q3);
                        });
                    }
                }
                OnedimT10eq5a => {
                    if l >= 0 && m >= base {
                        let omega = one_dim_omega(model);
                        emit(at, &mut |b| {
                            b.add(E, l, m, qm1.clone());
                            b.add(S2, l, m, -&q2);
                            b.add(S2, l + 1, m - 1, -&(&q * &omega));
                        });
                    }
                }
                VIbspecialeq2 => {
                    if l >= 0 {
                        emit(at, &mut |b| {
                            b.add(S2, l, m, q.clone());
                            b.add(E, l, m, int(1));
                        });
                    }
                }
                VIbspecialeq3 => {
                    if m == 0 {
                        let us: &[Tag] = match ch.case {
                            LCase::Inert => &[],
                            LCase::Ramified => &[U0],
                            LCase::Split => &[U1, U2],
                        };
                        for &u in us {
                            emit(TowerIndex::new(l, 0, u), &mut |b| {
                                b.add(S212, l, 0, q.clone());
                                b.add(u, l, 0, int(1));
                            });
                        }
                    }
                }
                B1S2s1s2 => {
                    emit(TowerIndex::new(l, m, S212), &mut |b| {
                        b.add(S212, l, m, gamma.clone());
                        b.add(S212, l + 1, m, -&q2);
                    });
                }
                Eq318 => {
                    if l >= 0 && m >= base {
                        let ag = &alpha * &gamma;
                        emit(at, &mut |b| {
                            b.add(S12, l, m, -&(&ag * &q));
                            b.add(S12, l - 1, m + 1, q2.clone());
                            b.add(E, l, m, &ag * &qm1);
                        });
                    }
                }
                Eq328 => {
                    if l >= 0 && m >= base {
                        emit(at, &mut |b| {
                            b.add(S2, l + 1, m - 1, -&(&gamma * &q));
                            b.add(S2, l, m, q2.clone());
                            b.add(S212, l, m, &q2 * &qm1);
                        });
                    }
                }
                Eq428 => {
                    if l >= 0 && m >= base {
                        emit(at, &mut |b| {
                            b.add(S212, l, m, q3.clone());
                            b.add(S2, l, m, q2.clone());
                            b.add(S12, l, m, q.clone());
                            b.add(E, l, m, int(1));
                        });
                    }
                }
                Inert3a1 => {
                    if l >= 0 && m == 0 {
                        let ag = &alpha * &gamma;
                        emit(at, &mut |b| {
                            b.add(S2, l, 0, &ag * &q);
                            b.add(S12, l - 1, 1, -&q2);
                        });
                    }
                }
                Inert3a2 => {
                    if l >= 0 && m == 0 {
                        let ag = &alpha * &gamma;
                        emit(at, &mut |b| {
                            b.add(S212, l, 0, &ag * &q);
                            b.add(S12, l - 1, 1, &q + &int(1));
                        });
                    }
                }
                Inert3a3 => {
                    if l >= 0 && m == 0 {
                        emit(at, &mut |b| {
                            b.add(S2, l, 0, gamma.clone());
                            b.add(S2, l + 1, 0, -&q2);
                        });
                    }
                }
                AtkinLehner | Premise => unreachable!(),
            }
        }
    }
    out
}

fn one_dim_omega(model: &Model) -> Scalar {
    match &model.eig.eta {
        EtaAction::Scalar(w) => w.clone(),
        EtaAction::Swap { .. } => panic!("{} has no scalar Atkin-Lehner eigenvalue", model.t),
    }
}

/// Image of `h(l,m) w` under right translation by the Atkin-Lehner element:
/// `B(h(l,m) w eta) = c * B(target)`. `c` is `Lambda(varpi)` or 1.
pub fn al_image(idx: &TowerIndex, ch: &BesselCharacter) -> Option<(TowerIndex, Scalar)> {
    let (l, m) = (idx.l, idx.m);
    let lp = ch.lam_pi.clone();
    match idx.w {
        Tag::E => Some((TowerIndex::new(l - 1, m, Tag::S212), lp)),
        Tag::S2 => Some((TowerIndex::new(l - 1, m + 1, Tag::S12), int(1))),
        Tag::S12 => Some((TowerIndex::new(l + 1, m - 1, Tag::S2), lp)),
        Tag::S212 => Some((TowerIndex::new(l + 1, m, Tag::E), int(1))),
        _ => None,
    }
}

/// `sum_d H[c][d] B_d(x) - c_x B_c(sigma x) = 0` for every representative
/// `x` outside the `u`-cosets and every component `c`.
fn atkin_lehner(model: &Model, ch: &BesselCharacter, w: &Window, out: &mut Vec<LinearRow>) {
    let h = model.eig.eta.matrix();
    let n = h.len();
    for &tag in &[Tag::E, Tag::S2, Tag::S12, Tag::S212] {
        for m in 0..=w.m_max {
            for l in -1..=w.l_max {
                let x = TowerIndex::new(l, m, tag);
                if !x.is_representative(ch.case) {
                    continue;
                }
                let (y, c) = al_image(&x, ch).unwrap();
                for comp in 0..n {
                    let mut b = Builder::new(ch, comp);
                    for (d, hd) in h[comp].iter().enumerate() {
                        b.add_on(d, x.w, x.l, x.m, hd.clone());
                    }
                    b.add_on(comp, y.w, y.l, y.m, -&c);
                    let row = b.finish(x, Operator::Constraint(FamilyId::AtkinLehner));
                    if !row.terms.is_empty() {
                        out.push(row);
                    }
                }
            }
        }
    }
}
