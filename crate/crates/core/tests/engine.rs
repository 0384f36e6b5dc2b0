mod common;

use std::collections::BTreeMap;

use bessel_core::case::LCase;
use bessel_core::catalog::{BesselCharacter, RepType};
use bessel_core::engine::consequence::{verify_consequence_identity, verify_mutated, Consequence, FormalIdentity};
use bessel_core::engine::series::check_l_shift;
use bessel_core::engine::system::{solve_rational, solve_symbolic};
use bessel_core::engine::*;
use bessel_core::Specialization;
use bessel_scalar::{int, q, rat, sym, Scalar, Symbol, TruncatedSeries};
use common::*;
use proptest::prelude::*;

fn ix(l: i64, m: i64, w: Tag) -> TowerIndex {
    TowerIndex::new(l, m, w)
}

fn terms(row: &LinearRow) -> BTreeMap<TowerIndex, Scalar> {
    row.terms.iter().map(|t| (t.idx, t.coeff.clone())).collect()
}

fn qp(k: i32) -> Scalar {
    q().pow(k).unwrap()
}

fn inert0() -> BesselCharacter {
    BesselCharacter::symbolic(LCase::Inert, 0)
}

// Vanishing rules

#[test]
fn vanishing_examples() {
    assert!(vanishes(&ix(-1, 0, Tag::E), &inert0()));
    for m0 in 1..=3 {
        let ch = BesselCharacter::symbolic(LCase::Inert, m0);
        assert!(!vanishes(&ix(0, m0 as i64 - 1, Tag::S2), &ch));
        assert!(vanishes(&ix(0, m0 as i64 - 1, Tag::E), &ch));
    }
    let split2 = BesselCharacter::symbolic(LCase::Split, 2);
    assert!(vanishes(&ix(0, 0, Tag::U1), &split2));
    assert!(!vanishes(&ix(0, 0, Tag::U1), &BesselCharacter::symbolic(LCase::Split, 0)));
    assert!(!vanishes(&ix(-1, 0, Tag::U0), &BesselCharacter::symbolic(LCase::Ramified, 0)));
    assert!(vanishes(&ix(-2, 0, Tag::U0), &BesselCharacter::symbolic(LCase::Ramified, 0)));
    assert!(vanishes(&ix(-2, 3, Tag::S12), &inert0()));
    assert!(!vanishes(&ix(-1, 3, Tag::S12), &inert0()));
}

fn tag_strategy() -> impl Strategy<Value = Tag> {
    prop::sample::select(vec![Tag::E, Tag::S2, Tag::S12, Tag::S212, Tag::U0, Tag::U1, Tag::U2])
}

proptest! {
    #[test]
    fn vanishing_is_monotone(l in -4i64..6, m in 0i64..6, dl in 0i64..3, dm in 0i64..3, m0 in 0u32..4, w in tag_strategy()) {
        let ch = BesselCharacter::symbolic(LCase::Split, m0);
        let hi = ix(l, m, w);
        let lo = ix(l - dl, (m - dm).max(0), w);
        if vanishes(&hi, &ch) {
            prop_assert!(vanishes(&lo, &ch));
        }
    }
}

// Hecke rows

#[test]
fn t10_main_tower() {
    let ch = inert0();
    let row = t10_row(&ix(2, 3, Tag::E), &ch).unwrap();
    assert_eq!(terms(&row), BTreeMap::from([(ix(3, 3, Tag::E), qp(3))]));
}

#[test]
fn t10_s2_generic_branch() {
    for (case, m0) in [(LCase::Inert, 0u32), (LCase::Split, 1), (LCase::Ramified, 2)] {
        let ch = BesselCharacter::symbolic(case, m0);
        let m = (m0 as i64).max(1) + 1;
        let row = t10_row(&ix(2, m, Tag::S2), &ch).unwrap();
        let expect = BTreeMap::from([
            (ix(3, m, Tag::E), &qp(2) * &(&q() - &int(1))),
            (ix(3, m - 1, Tag::S2), &q() * &ch.lam_pi),
            (ix(1, m + 1, Tag::S12), &q() * &(&q() - &int(1))),
        ]);
        assert_eq!(terms(&row), expect, "{case} m0={m0}");
    }
}

#[test]
fn t10_u0_at_minus_one() {
    let ch = BesselCharacter::symbolic(LCase::Ramified, 0);
    let row = t10_row(&ix(-1, 0, Tag::U0), &ch).unwrap();
    assert_eq!(terms(&row), BTreeMap::from([(ix(0, 0, Tag::E), -&qp(2))]));
    assert!(matches!(t10_row(&ix(-2, 0, Tag::U0), &ch), Err(EngineError::OutOfStatedRange(_))));
}

#[test]
fn t01_main_tower() {
    for (case, m0) in [(LCase::Inert, 0u32), (LCase::Split, 2)] {
        let ch = BesselCharacter::symbolic(case, m0);
        let m = (m0 as i64).max(1);
        let row = t01_row(&ix(1, m, Tag::E), &ch).unwrap();
        let mut expect = BTreeMap::from([(ix(1, m + 1, Tag::E), qp(4))]);
        if m - 1 >= m0 as i64 {
            expect.insert(ix(3, m - 1, Tag::E), &qp(3) * &ch.lam_pi);
        }
        assert_eq!(terms(&row), expect, "{case} m0={m0}");
    }
    let row = t01_row(&ix(2, 0, Tag::E), &inert0()).unwrap();
    assert_eq!(terms(&row), BTreeMap::from([(ix(2, 1, Tag::E), &qp(3) * &(&q() + &int(1)))]));
}

#[test]
fn t01_u1_split_base() {
    let ch = BesselCharacter::symbolic(LCase::Split, 0);
    let row = t01_row(&ix(0, 0, Tag::U1), &ch).unwrap();
    let qm1 = &q() - &int(1);
    let expect = BTreeMap::from([
        (ix(1, 0, Tag::U1), &qp(3) * ch.lam_01()),
        (ix(0, 1, Tag::S12), &qp(3) * &qm1),
        (ix(1, 0, Tag::E), &(&qp(2) * &qm1) * ch.lam_10()),
    ]);
    assert_eq!(terms(&row), expect);
}

#[test]
fn t01_not_provided_for_s12_s212() {
    let ch = inert0();
    assert!(matches!(t01_row(&ix(0, 1, Tag::S12), &ch), Err(EngineError::UnsupportedIndex(_))));
    assert!(matches!(t01_row(&ix(0, 1, Tag::S212), &ch), Err(EngineError::UnsupportedIndex(_))));
}

#[test]
fn rows_drop_vanishing_terms() {
    for case in LCase::ALL {
        for m0 in 0..=2 {
            let ch = BesselCharacter::symbolic(case, m0);
            for idx in Window::new(3, 4).unknowns(&ch) {
                for row in [t10_row(&idx, &ch), t01_row(&idx, &ch)].into_iter().flatten() {
                    assert!(row.terms.iter().all(|t| !vanishes(&t.idx, &ch) && !t.coeff.is_zero()), "{idx}");
                }
            }
        }
    }
}

// Constraint families

#[test]
fn vib_eq2_rows() {
    let model = Model::symbolic(RepType::VIb);
    let ch = inert0();
    let w = Window::new(2, 2);
    let rows = family_rows(FamilyId::VIbspecialeq2, &model, 0, &ch, &w);
    assert!(!rows.is_empty());
    for row in rows {
        let t = row.target;
        let expect = BTreeMap::from([(ix(t.l, t.m, Tag::S2), q()), (ix(t.l, t.m, Tag::E), int(1))]);
        assert_eq!(terms(&row), expect);
    }
}

#[test]
fn iiia_b1_row() {
    let model = Model::symbolic(RepType::IIIa);
    let ch = inert0();
    let rows = family_rows(FamilyId::B1S2s1s2, &model, 0, &ch, &Window::new(3, 3));
    let g = sym(Symbol::Gamma);
    let found = rows.iter().any(|row| {
        let t = row.target;
        let m = terms(row);
        m.len() == 2
            && m.get(&ix(t.l, t.m, Tag::S212)).map(|c| c == &g).unwrap_or(false)
            && m.get(&ix(t.l + 1, t.m, Tag::S212)).map(|c| c == &-&qp(2)).unwrap_or(false)
    });
    assert!(found, "{rows:?}");
}

#[test]
fn eq4b_instance_at_conductor() {
    let model = Model::symbolic(RepType::VIa);
    for m0 in 1..=2 {
        let ch = BesselCharacter::symbolic(LCase::Inert, m0);
        let rows = family_rows(FamilyId::T01s2conseq4b, &model, 0, &ch, &Window::default_for(m0));
        let e0 = ix(0, m0 as i64, Tag::E);
        let (lam, mu) = (model.lambda(0), model.mu(0));
        let c = &(&qp(-2) * &(&q() - &int(1))) * &(mu - &(lam * lam));
        let row = rows.iter().find(|r| r.target.m == m0 as i64).expect("instance at m0");
        let coeff = terms(row).get(&e0).cloned().unwrap_or_else(Scalar::zero);
        assert!(!coeff.is_zero());
        assert!(row.terms.iter().any(|t| t.idx.w == Tag::S2));
        // The relation is stated up to an overall scale.
        let ratio = &coeff / &c;
        assert!(ratio.is_constant(), "{coeff} vs {c}");
    }
}

#[test]
fn applicable_families() {
    let ch = inert0();
    assert!(applicable(RepType::VIb, &ch, false).contains(&FamilyId::VIbspecialeq2));
    assert!(!applicable(RepType::VIb, &ch, false).contains(&FamilyId::VIbspecialeq3));
    assert!(!applicable(RepType::IIIa, &ch, false).contains(&FamilyId::AtkinLehner));
    assert!(applicable(RepType::IIIa, &ch, true).contains(&FamilyId::AtkinLehner));
    assert_eq!(conditional(RepType::IIIa, &ch).len(), 3);
    assert!(conditional(RepType::IIIa, &BesselCharacter::symbolic(LCase::Split, 0)).is_empty());
    for f in FamilyId::ALL {
        assert_eq!(f.name().parse::<FamilyId>().unwrap(), f);
    }
}

// Assembly and solving

#[test]
fn window_zero_leaves_everything_free() {
    let model = Model::new(RepType::VIa, int(1), int(1)).unwrap();
    let ch = BesselCharacter::inert(1, int(1));
    let sys = assemble_eigensystem(&model, Components::Single(0), &ch, Window::new(0, 0), &[]).unwrap();
    let s = solve_rational(&sys, &spec(), &[]).unwrap();
    assert_eq!(s.kernel.len(), sys.unknowns.len());
}

#[test]
fn empty_window_is_an_error() {
    let model = Model::symbolic(RepType::VIa);
    let ch = inert0();
    assert!(matches!(
        assemble_eigensystem(&model, Components::Single(0), &ch, Window::new(-1, 0), &[]),
        Err(EngineError::EmptyWindow)
    ));
    assert!(matches!(
        assemble_eigensystem(&model, Components::Single(1), &ch, Window::new(2, 2), &[]),
        Err(EngineError::NoSuchComponent(1))
    ));
}

#[test]
fn window_unknowns_follow_the_vanishing_rules() {
    // Independent enumeration of representatives for the inert case.
    let ch = inert0();
    let w = Window::new(2, 2);
    let mut expect = 0;
    for m in 0..=2i64 {
        expect += 3 + 3; // E, S2 for 0 <= l <= 2
        expect += 4; // S212 for -1 <= l <= 2
        if m >= 1 {
            expect += 4; // S12 for -1 <= l <= 2, only m >= 1
        }
    }
    assert_eq!(w.unknowns(&ch).len(), expect);
    assert!(w.unknowns(&ch).iter().all(|i| !vanishes(i, &ch) && w.contains(i)));
}

#[test]
fn warnings_for_inadmissible_characters() {
    let model = Model::new(RepType::VIa, int(1), int(1)).unwrap();
    let bad_cc = BesselCharacter::inert(0, int(2));
    let sys = assemble_eigensystem(&model, Components::Single(0), &bad_cc, Window::new(2, 2), &[]).unwrap();
    assert!(sys.warnings.iter().any(|w| w.contains("central character")));
    let no_model = BesselCharacter::ramified(0, int(1));
    let sys = assemble_eigensystem(&model, Components::Single(0), &no_model, Window::new(2, 2), &[]).unwrap();
    assert!(sys.warnings.iter().any(|w| w.contains("no Bessel model")));
}

#[test]
fn forced_vanishing_without_a_model() {
    // VIa has no model with Lambda = sigma o N in the field case.
    let model = Model::new(RepType::VIa, int(1), int(1)).unwrap();
    for ch in [BesselCharacter::ramified(0, int(1)), BesselCharacter::inert(0, int(1))] {
        let (_, s) = solve(&model, Components::Single(0), &ch, &[]);
        for v in &s.kernel {
            for idx in s.interior(0).into_iter().filter(|i| i.w == Tag::E) {
                assert!(s.value(v, 0, &idx).numer() == &0.into(), "{idx}");
            }
        }
    }
}

#[test]
fn iia_inert_example() {
    // alpha = 2, gamma = 1, q = 9, Lambda(varpi) = 4, conductor exponent 1.
    let model = Model::new(RepType::IIa, int(2), int(1)).unwrap();
    let ch = BesselCharacter::inert(1, int(4));
    let (sys, s) = solve(&model, Components::Single(0), &ch, &HELD_OUT);
    assert!(sys.warnings.is_empty(), "{:?}", sys.warnings);
    assert!(!s.kernel.is_empty());
    assert!(s.detects(0, &ix(0, 1, Tag::E)));
}

#[test]
fn iia_split_exceptional_report() {
    let (alpha, gamma) = (int(2), int(1));
    let model = Model::new(RepType::IIa, alpha.clone(), gamma.clone()).unwrap();
    let ch = iia_exceptional(&alpha, &gamma);
    let sys = system(&model, Components::Single(0), &ch, &HELD_OUT);
    let rep = solve_and_report(&sys, &spec(), &HELD_OUT).unwrap();
    assert!(rep.held_out_ok);
    assert!(rep.dim >= 1);
    for v in &rep.distinguished {
        assert_eq!(v["E(0,0)"], "0");
    }
    let check = |name: &str| rep.checks.iter().find(|c| c.index == name).unwrap().clone();
    assert!(!check("E(0,0)").nonzero);
    for u in ["U1(0,0)", "U2(0,0)"] {
        assert!(check(u).nonzero && check(u).determines_interior, "{u}");
    }
    let json = serde_json::to_value(&rep).unwrap();
    assert!(json.get("held_out_ok").is_some() && json.get("dim").is_some());
}

#[test]
fn vib_eq2_eliminates_s2() {
    let model = Model::new(RepType::VIb, int(1), int(1)).unwrap();
    let ch = BesselCharacter::inert(0, int(1));
    let (_, s) = solve(&model, Components::Single(0), &ch, &[]);
    let q9 = rat(9, 1);
    for v in &s.kernel {
        for idx in s.window.unknowns(&ch).into_iter().filter(|i| i.w == Tag::E) {
            let s2 = s.value(v, 0, &ix(idx.l, idx.m, Tag::S2));
            assert_eq!(&q9 * &s2, -s.value(v, 0, &idx));
        }
    }
}

#[test]
fn symbolic_solve_agrees_with_rational() {
    let model = Model::new(RepType::VIa, int(1), int(1)).unwrap();
    let ch = BesselCharacter::inert(1, int(1));
    let sys = system(&model, Components::Single(0), &ch, &[]);
    let num = solve_rational(&sys, &spec(), &[]).unwrap();
    let symb = solve_symbolic(&sys, &Specialization::new(), &[]).unwrap();
    assert_eq!(num.kernel.len(), symb.kernel.len());
    let e = ix(0, 1, Tag::E);
    let v = symb.normalized_at(0, &e).unwrap();
    let n = num.normalized_at(0, &e).unwrap();
    for idx in num.interior(0).into_iter().filter(|i| i.w == Tag::E) {
        let sv = symb.value(&v, 0, &idx).eval(Symbol::R, &rat(3, 1)).unwrap();
        assert_eq!(sv.as_rational().unwrap(), num.value(&n, 0, &idx), "{idx}");
    }
}

#[test]
fn tower_table_csv() {
    let model = Model::new(RepType::VIa, int(1), int(1)).unwrap();
    let ch = BesselCharacter::inert(1, int(1));
    let (_, s) = solve(&model, Components::Single(0), &ch, &[]);
    let v = s.normalized_at(0, &ix(0, 1, Tag::E)).unwrap();
    let t = TowerTable::from_vector(&s, &v, 0);
    assert_eq!(t.get(&ix(0, 1, Tag::E)), Some("1"));
    assert_eq!(t.get(&ix(0, 0, Tag::E)), Some("0"));
    let csv = t.main_tower().to_csv();
    assert!(csv.starts_with("l,m,w,value\n"));
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(2) == Some("E")));
}

// Generating series

/// Power series of `num / den` by naive long division over the scalar field.
fn long_division(num: &[Scalar], den: &[Scalar], order: usize) -> Vec<Scalar> {
    let mut rem: Vec<Scalar> = (0..=order).map(|k| num.get(k).cloned().unwrap_or_else(Scalar::zero)).collect();
    let mut out = Vec::new();
    let d0 = den[0].inv().unwrap();
    for k in 0..=order {
        let c = &rem[k] * &d0;
        for (j, d) in den.iter().enumerate() {
            if k + j <= order {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
        }
        out.push(c);
    }
    out
}

#[test]
fn kappa_branches() {
    let (lam, mu) = (sym(Symbol::Alpha), sym(Symbol::Gamma));
    assert!(kappa(&BesselCharacter::symbolic(LCase::Split, 3), &lam, &mu).is_zero());
    assert_eq!(kappa(&inert0(), &lam, &mu), &mu / &(&q() + &int(1)));
    let ram = BesselCharacter::symbolic(LCase::Ramified, 0);
    assert_eq!(kappa(&ram, &lam, &mu), ram.lam_pi_l() * &lam);
    let sp = BesselCharacter::symbolic(LCase::Split, 0);
    let expect = &(&(&(&q() * &lam) * &(sp.lam_10() + sp.lam_01())) - &mu) / &(&q() - &int(1));
    assert_eq!(kappa(&sp, &lam, &mu), expect);
}

#[test]
fn series_examples() {
    let model = Model::symbolic(RepType::VIa);
    let (lam, mu) = (model.lambda(0), model.mu(0));
    let ch = BesselCharacter::symbolic(LCase::Inert, 1);
    let s = main_tower_series(0, 3, &ch, lam, mu).unwrap();
    let lp = &ch.lam_pi;
    let c3 = &(&(mu * mu) * &qp(-8)) - &(&(&(lam * lam) * &qp(-7)) * lp);
    assert_eq!(s.coeffs(), &[Scalar::zero(), int(1), mu * &qp(-4), c3]);
    let s = main_tower_series(0, 2, &inert0(), lam, mu).unwrap();
    assert_eq!(s.coeffs()[1], &(mu * &qp(-3)) / &(&q() + &int(1)));
    let s0 = main_tower_series(0, 6, &inert0(), lam, mu).unwrap();
    let s1 = main_tower_series(1, 6, &inert0(), lam, mu).unwrap();
    assert!(check_l_shift(&s0, &s1, lam));
}

#[test]
fn series_matches_long_division() {
    for t in RepType::ALL {
        let model = Model::symbolic(t);
        for comp in 0..model.dim() {
            let (lam, mu) = (model.lambda(comp), model.mu(comp));
            for case in LCase::ALL {
                let ch = BesselCharacter::symbolic(case, 0);
                let k = kappa(&ch, lam, mu);
                let num = [int(1), -&(&k * &qp(-4))];
                let den = [int(1), -&(mu * &qp(-4)), &(&(lam * lam) * &qp(-7)) * &ch.lam_pi];
                let oracle = long_division(&num, &den, 5);
                let s = main_tower_series(0, 5, &ch, lam, mu).unwrap();
                assert_eq!(s.coeffs(), &oracle[..], "{t} {case}");
            }
        }
    }
}

#[test]
fn recursion_check_examples() {
    let model = Model::symbolic(RepType::IVc);
    let (lam, mu) = (model.lambda(0), model.mu(0));
    let ch = BesselCharacter::symbolic(LCase::Ramified, 0);
    let s = main_tower_series(0, 8, &ch, lam, mu).unwrap();
    assert!(check_two_step_recursion(&s, lam, mu, &ch.lam_pi, 0));
    let spike = TruncatedSeries::new(Symbol::Y, vec![int(1), int(0), int(0), int(0)]).unwrap();
    assert!(!check_two_step_recursion(&spike, lam, mu, &ch.lam_pi, 0));
    let zero = TruncatedSeries::zero(Symbol::Y, 5).unwrap();
    assert!(check_two_step_recursion(&zero, lam, mu, &ch.lam_pi, 0));
}

// Consequence identities

#[test]
fn consequences_hold_formally() {
    for id in Consequence::ALL {
        assert!(verify_consequence_identity(id), "{}", id.name());
    }
}

#[test]
fn consequence_mutations_fail() {
    for id in Consequence::ALL {
        let len = FormalIdentity::new(id, &BesselCharacter::symbolic(LCase::Split, 1)).len();
        assert!(len > 0);
        for k in 0..len {
            // q^5 -> q^4 style: divide one coefficient by q.
            assert!(!verify_mutated(id, k, |c| c / &q()), "{} coefficient {k}", id.name());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn kernel_main_tower_obeys_recursion(gi in 0usize..3, ci in 0usize..3, m0 in 0u32..2) {
        let gamma = [int(1), int(-1), int(2)][gi].clone();
        let model = Model::new(RepType::VIa, int(1), gamma.clone()).unwrap();
        let case = LCase::ALL[ci];
        let chs: Vec<_> = characters(RepType::VIa, &int(1), &gamma, case, m0)
            .into_iter()
            .filter(|ch| !is_exceptional(RepType::VIa, &int(1), &gamma, ch))
            .collect();
        prop_assume!(!chs.is_empty());
        let (_, s) = solve(&model, Components::Single(0), &chs[0], &[]);
        let sp = spec();
        let num = |x: &Scalar| sp.rational(x).unwrap().unwrap();
        let (lam, mu, lp) = (num(model.lambda(0)), num(model.mu(0)), num(&chs[0].lam_pi));
        let q = rat(9, 1);
        let q3 = &q * &(&q * &q);
        for v in &s.kernel {
            for idx in s.interior(0).into_iter().filter(|i| i.w == Tag::E && i.m >= m0 as i64) {
                let b = |l: i64, m: i64| s.value(v, 0, &ix(l, m, Tag::E));
                // l-shift: q^3 B(l+1,m) = lambda B(l,m)
                prop_assert_eq!(&q3 * &b(idx.l + 1, idx.m), &lam * &b(idx.l, idx.m));
                // q^4 B(m+2) - mu B(m+1) + lambda^2 q^-3 Lambda(varpi) B(m) = 0
                let r = &(&(&q * &q3) * &b(idx.l, idx.m + 2)) - &(&mu * &b(idx.l, idx.m + 1))
                    + &(&(&(&lam * &lam) / &q3) * &lp) * &b(idx.l, idx.m);
                prop_assert_eq!(r, rat(0, 1));
            }
        }
    }
}
