use std::collections::BTreeSet;

use bessel_core::case::LCase;
use bessel_core::catalog::BesselCharacter;
use bessel_core::coset::gl2::{Part, Side};
use bessel_core::coset::gsp4::{eta, h, hat_u, s1, s2};
use bessel_core::coset::identities::{
    conjugated_xi, eta_factorization_holds, mentions_sqrt_d, s_prime, transform, useful_identity_holds,
};
use bessel_core::coset::residue::{gl2, lower, w};
use bessel_core::coset::*;
use bessel_scalar::{int, rat, sym, RatFunc, Scalar, Symbol};
use proptest::prelude::*;

fn setups(p: i64) -> Vec<BesselSetup> {
    let abc: &[(i64, i64, i64)] = if p == 3 {
        &[(1, 0, 1), (3, 0, 1), (-1, 0, 1), (1, 1, 1), (0, 1, 1)]
    } else {
        &[(-2, 0, 1), (5, 0, 1), (-1, 0, 1), (1, 1, 1), (0, 1, 1)]
    };
    abc.iter().map(|&(a, b, c)| classify(a, b, c, p).unwrap()).collect()
}

fn squares(p: i64) -> BTreeSet<i64> {
    (1..p).map(|x| x * x % p).collect()
}

#[test]
fn classify_examples() {
    let s = classify(1, 0, 1, 3).unwrap();
    assert_eq!((s.case, s.roots.clone(), s.d), (LCase::Inert, vec![], -4));
    let s = classify(-1, 0, 1, 3).unwrap();
    assert_eq!((s.case, s.roots.clone()), (LCase::Split, vec![1, 2]));
    let s = classify(3, 0, 1, 3).unwrap();
    assert_eq!((s.case, s.roots.clone()), (LCase::Ramified, vec![0]));
}

#[test]
fn classify_errors() {
    assert_eq!(classify(1, 0, 1, 2), Err(CosetError::UnsupportedPrime(2)));
    assert_eq!(classify(1, 0, 1, 9), Err(CosetError::UnsupportedPrime(9)));
    assert_eq!(classify(1, 0, 3, 3), Err(CosetError::NonUnitC { c: 3, p: 3 }));
    assert_eq!(classify(0, 0, 1, 3), Err(CosetError::DegenerateD));
    assert_eq!(classify(9, 0, 1, 3), Err(CosetError::NotStandard { d: -36, p: 3 }));
}

#[test]
fn root_count_matches_symbol_exhaustively() {
    for p in [3i64, 5] {
        let sq = squares(p);
        for a in -p * p..p * p {
            for b in 0..p {
                for c in 1..p {
                    let Ok(s) = classify(a, b, c, p) else { continue };
                    let d = (b * b - 4 * a * c).rem_euclid(p);
                    let sym = if d == 0 { 0 } else if sq.contains(&d) { 1 } else { -1 };
                    assert_eq!(s.case.symbol(), sym, "{a} {b} {c} mod {p}");
                    assert_eq!(s.roots.len() as i64, sym + 1, "{a} {b} {c} mod {p}");
                }
            }
        }
    }
}

#[test]
fn torus_orders() {
    for p in [3i64, 5] {
        for s in setups(p) {
            let expected = match s.case {
                LCase::Inert => p * p - 1,
                LCase::Ramified => p * (p - 1),
                LCase::Split => (p - 1) * (p - 1),
            };
            assert_eq!(torus_residue(&s, 0).len() as i64, expected, "{s:?}");
            for m in 1..=2 {
                assert_eq!(torus_residue(&s, m).len() as i64, p * (p - 1));
            }
        }
    }
}

#[test]
fn torus_matches_defining_equation_when_s_is_nondegenerate() {
    for p in [3i64, 5] {
        for s in setups(p).into_iter().filter(|s| s.case != LCase::Ramified) {
            assert_eq!(torus_residue(&s, 0), s.torus_by_equation(), "{s:?}");
        }
    }
}

#[test]
fn torus_is_a_group() {
    for p in [3i64, 5] {
        for s in setups(p) {
            for m in 0..=1 {
                let t = torus_residue(&s, m);
                for x in &t {
                    for y in &t {
                        assert!(t.contains(&x.mul(y)));
                    }
                }
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let inert = classify(1, 0, 1, 3).unwrap();
    let r = verify_gl2_decomposition(&inert, Part::I, 0).unwrap();
    assert!(r.passed());
    let g0: Vec<_> = r.cosets.iter().filter(|c| c.side == Side::Gamma0).collect();
    assert_eq!(g0.len(), 1);
    assert_eq!(g0[0].size, 48);

    let split = classify(-1, 0, 1, 3).unwrap();
    let r = verify_gl2_decomposition(&split, Part::III, 0).unwrap();
    assert!(r.passed());
    let sizes: Vec<usize> = r.cosets.iter().filter(|c| c.side == Side::Gamma0).map(|c| c.size).collect();
    // Two absorbed cosets of size |B| = 12, the rest is the w-coset.
    assert_eq!(sizes, vec![12, 12, 24]);

    for s in setups(3) {
        let r = verify_gl2_decomposition(&s, Part::IV, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.cosets.iter().filter(|c| c.side == Side::Gamma0).count(), 2);
        assert_eq!(r.absorption.len(), 1);
        assert!(r.absorption[0].holds);
    }
}

#[test]
fn decompositions_hold_for_all_parts() {
    for p in [3i64, 5] {
        let order = ((p * p - 1) * (p * p - p)) as usize;
        assert_eq!(gl2(p).len(), order);
        for s in setups(p) {
            let r = verify_gl2_decomposition(&s, Part::for_case(s.case), 0).unwrap();
            assert!(r.passed(), "{s:?}");
            assert_eq!(r.absorption.len(), s.roots.len());
            for side in Side::BOTH {
                let total: usize = r.cosets.iter().filter(|c| c.side == side).map(|c| c.size).sum();
                assert_eq!(total, order);
            }
            for m in 1..=2 {
                assert!(verify_gl2_decomposition(&s, Part::IV, m).unwrap().passed());
            }
        }
    }
}

#[test]
fn decomposition_errors() {
    let inert = classify(1, 0, 1, 3).unwrap();
    assert!(matches!(verify_gl2_decomposition(&inert, Part::III, 0), Err(CosetError::CaseMismatch { .. })));
    assert_eq!(verify_gl2_decomposition(&inert, Part::IV, 0).unwrap_err(), CosetError::BadLevel(0));
}

#[test]
fn report_serializes() {
    let s = classify(3, 0, 1, 3).unwrap();
    let r = verify_gl2_decomposition(&s, Part::II, 0).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["case"], "ramified");
    assert_eq!(v["part"], "ii");
    assert_eq!(v["p"], 3);
    assert_eq!(v["cosets"][0]["rep"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(v["cosets"][0]["side"], "Gamma_0");
    assert_eq!(v["disjoint"], true);
    assert_eq!(v["covers"], true);
}

fn unramified(case: LCase) -> BesselCharacter {
    match case {
        LCase::Inert => BesselCharacter::inert(0, int(1)),
        LCase::Ramified => BesselCharacter::ramified(0, int(1)),
        LCase::Split => BesselCharacter::split(0, int(1), int(1)),
    }
}

fn with_m0(ch: &BesselCharacter, m0: u32) -> BesselCharacter {
    BesselCharacter { m0, ..ch.clone() }
}

#[test]
fn constant_probe_integrates_to_one() {
    let s = classify(1, 0, 1, 3).unwrap();
    let mut f = TowerProbe::new(Side::Gamma0);
    for g in gl2(3) {
        f.set(&g, int(1));
    }
    assert_eq!(brute_force_integral(&s, 0, &unramified(LCase::Inert), &f).unwrap(), int(1));
    let closed = integration_formula(&s, 0, 0, Side::Gamma0, |g| f.value(g));
    assert_eq!(closed, int(1));
}

#[test]
fn split_branch_from_coset_values() {
    let s = classify(-1, 0, 1, 3).unwrap();
    let ch = unramified(LCase::Split);
    let (x1, x2, xw) = (int(2), rat_s(5, 3), int(-7));
    let mut f = TowerProbe::new(Side::Gamma0);
    f.set(&lower(3, s.roots[0]), x1.clone());
    f.set(&lower(3, s.roots[1]), x2.clone());
    for t in torus_residue(&s, 0) {
        f.set(&t.mul(&w(3)), xw.clone());
    }
    let brute = brute_force_integral(&s, 0, &ch, &f).unwrap();
    let expected = &(&(&x1 + &x2) + &(&int(2) * &xw)) / &int(4);
    assert_eq!(brute, expected);
}

fn rat_s(n: i64, d: i64) -> Scalar {
    RatFunc::from_rational(rat(n, d))
}

#[test]
fn level_one_branch_from_coset_values() {
    for s in setups(3) {
        let ch = unramified(s.case);
        for side in Side::BOTH {
            let (x1, xw) = (int(3), rat_s(-1, 2));
            let mut f = TowerProbe::new(side);
            let one = bessel_core::coset::ResidueMatrix::identity(2, 3);
            // f(1) and f(w); every other coset of the level-1 torus orbit of 1
            // or w must match.
            for t in torus_residue(&s, 1) {
                f.set(&t.mul(&one), x1.clone());
                f.set(&t.mul(&w(3)), xw.clone());
            }
            let brute = brute_force_integral(&s, 1, &ch, &f).unwrap();
            let (a, b) = match side {
                Side::Gamma0 => (&x1, &xw),
                Side::GammaUpper0 => (&xw, &x1),
            };
            assert_eq!(brute, &(a + &(&int(3) * b)) / &int(4), "{s:?} {side:?}");
        }
    }
}

#[test]
fn brute_force_matches_closed_form_on_spanning_probes() {
    for p in [3i64, 5] {
        for s in setups(p) {
            let base = unramified(s.case);
            let mut m0s = vec![0];
            if s.case != LCase::Ramified {
                m0s.push(1);
            }
            for m0 in m0s {
                let ch = with_m0(&base, m0);
                for m in 0..=2 {
                    for side in Side::BOTH {
                        let probes = TowerProbe::spanning_family(&s, m, &ch, side).unwrap();
                        let mut consistent = 0;
                        for f in &probes {
                            match brute_force_integral(&s, m, &ch, f) {
                                Ok(v) => {
                                    consistent += 1;
                                    let closed = integration_formula(&s, m, m0, side, |g| f.value(g));
                                    assert_eq!(v, closed, "{s:?} m={m} m0={m0} {side:?}");
                                }
                                Err(CosetError::InconsistentProbe(_)) => assert!(m < m0),
                                Err(e) => panic!("{e}"),
                            }
                        }
                        assert!(consistent >= 1);
                    }
                }
            }
        }
    }
}

#[test]
fn ramified_conductor_one_is_not_visible() {
    let s = classify(3, 0, 1, 3).unwrap();
    let ch = BesselCharacter::ramified(1, int(1));
    let f = TowerProbe::new(Side::Gamma0);
    assert!(matches!(brute_force_integral(&s, 0, &ch, &f), Err(CosetError::UnsupportedCharacter(_))));
}

#[test]
fn constant_probe_is_inconsistent_below_conductor() {
    let s = classify(1, 0, 1, 3).unwrap();
    let ch = BesselCharacter::inert(1, int(1));
    let mut f = TowerProbe::new(Side::Gamma0);
    for g in gl2(3) {
        f.set(&g, int(1));
    }
    assert!(matches!(brute_force_integral(&s, 0, &ch, &f), Err(CosetError::InconsistentProbe(_))));
}

#[test]
fn membership_examples() {
    let subs = [SubgroupSpec::IwahoriI, SubgroupSpec::SiegelP1, SubgroupSpec::KlingenP2, SubgroupSpec::ParamodularN(0)];
    for p in [3i64, 5] {
        let one = ResidueMatrix::identity(4, p);
        for sub in subs {
            assert!(gsp4_membership(&one, sub).unwrap());
            assert!(!gsp4_membership(&h(p, 1, 0).unwrap(), sub).unwrap());
        }
        // s1 has zero lower-left block but a unit in position (0, 1).
        assert!(gsp4_membership(&s1(p), SubgroupSpec::SiegelP1).unwrap());
        assert!(!gsp4_membership(&s1(p), SubgroupSpec::IwahoriI).unwrap());
        // s2 has -1 in the lower-left block and zeros where the Klingen
        // pattern asks for p.
        assert!(!gsp4_membership(&s2(p), SubgroupSpec::SiegelP1).unwrap());
        assert!(!gsp4_membership(&s2(p), SubgroupSpec::IwahoriI).unwrap());
        assert!(gsp4_membership(&s2(p), SubgroupSpec::KlingenP2).unwrap());
        // The multiplier of eta is varpi.
        assert!(!gsp4_membership(&eta(p * p), SubgroupSpec::SiegelP1).unwrap());
        for u in 0..p {
            assert!(gsp4_membership(&hat_u(p, u), SubgroupSpec::SiegelP1).unwrap());
            assert!(gsp4_membership(&hat_u(p, u), SubgroupSpec::IwahoriI).unwrap());
        }
    }
}

#[test]
fn membership_matches_pattern_for_iwahori() {
    // Iwahori = Siegel and Klingen congruence subgroups intersected.
    let p = 3;
    let gens = [s1(p), s2(p), hat_u(p, 1), hat_u(p, 2), ResidueMatrix::diag(p, &[1, 2, 2, 1])];
    let mut elems = vec![ResidueMatrix::identity(4, p)];
    for _ in 0..3 {
        let mut next = elems.clone();
        for x in &elems {
            for g in &gens {
                next.push(x.mul(g));
            }
        }
        next.sort();
        next.dedup();
        elems = next;
    }
    for g in &elems {
        let i = gsp4_membership(g, SubgroupSpec::IwahoriI).unwrap();
        let a = gsp4_membership(g, SubgroupSpec::SiegelP1).unwrap();
        let b = gsp4_membership(g, SubgroupSpec::KlingenP2).unwrap();
        assert_eq!(i, a && b);
    }
}

#[test]
fn paramodular_with_scaled_entry() {
    for p in [3i64, 5] {
        for n in 1..=2u32 {
            let pn = p.pow(n);
            let modulus = pn * p;
            // [[0,0,1,0],[0,0,0,-varpi^-n],[-1,0,0,0],[0,varpi^n,0,0]],
            // with entry (1,3) stored times varpi^n.
            let t = ResidueMatrix::new(4, modulus, vec![0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, pn, 0, 0]);
            assert!(gsp4_membership(&t, SubgroupSpec::ParamodularN(n)).unwrap());
            let bad = ResidueMatrix::new(4, modulus, vec![0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0]);
            assert!(gsp4_membership(&bad, SubgroupSpec::ParamodularN(n)).is_err_or_false());
        }
    }
}

trait ErrOrFalse {
    fn is_err_or_false(&self) -> bool;
}

impl ErrOrFalse for Result<bool, CosetError> {
    fn is_err_or_false(&self) -> bool {
        !matches!(self, Ok(true))
    }
}

#[test]
fn membership_errors() {
    let g = ResidueMatrix::diag(3, &[1, 2, 1, 1]);
    assert_eq!(gsp4_membership(&g, SubgroupSpec::SiegelP1), Err(CosetError::NotSymplectic));
    let g2 = ResidueMatrix::identity(2, 3);
    assert!(matches!(gsp4_membership(&g2, SubgroupSpec::SiegelP1), Err(CosetError::WrongDimension { .. })));
    assert!(matches!(gsp4_membership(&ResidueMatrix::identity(4, 3), SubgroupSpec::GL2Gamma0), Err(_)));
}

#[test]
fn gl2_membership_agrees_with_enumeration() {
    for s in setups(3) {
        let t0 = torus_residue(&s, 0);
        let t1 = torus_residue(&s, 1);
        for g in gl2(3) {
            assert_eq!(gl2_membership(&g, SubgroupSpec::GL2Gamma0, &s).unwrap(), g.get(1, 0) == 0);
            assert_eq!(gl2_membership(&g, SubgroupSpec::GL2GammaUpper0, &s).unwrap(), g.get(0, 1) == 0);
            assert_eq!(gl2_membership(&g, SubgroupSpec::TorusTO, &s).unwrap(), t0.contains(&g));
            assert_eq!(gl2_membership(&g, SubgroupSpec::TorusTOm(1), &s).unwrap(), t1.contains(&g));
        }
    }
}

#[test]
fn matrix_identities() {
    assert!(verify_matrix_identities(&IdentityArg::Residue { z: 1, p: 3 }).unwrap());
    for p in [3i64, 5, 7] {
        for z in 1..p {
            assert!(verify_matrix_identities(&IdentityArg::Residue { z, p }).unwrap());
        }
    }
    assert!(verify_matrix_identities(&IdentityArg::Symbolic(sym(Symbol::Alpha))).unwrap());
    let z = &sym(Symbol::Alpha) / &(&sym(Symbol::Gamma) + &int(1));
    assert!(useful_identity_holds(&z).unwrap());
    assert!(eta_factorization_holds(&sym(Symbol::X)));
    assert!(eta_factorization_holds(&int(3)));
    assert_eq!(verify_matrix_identities(&IdentityArg::Residue { z: 3, p: 3 }), Err(CosetError::NotInvertible));
    assert_eq!(verify_matrix_identities(&IdentityArg::Symbolic(Scalar::zero())), Err(CosetError::NotInvertible));
}

#[test]
fn eta_squares_to_varpi() {
    // eta^2 = varpi on the nose.
    let (e, _) = bessel_core::coset::identities::eta_factorization_sides(&sym(Symbol::X));
    let e2 = bessel_core::coset::identities::smul(&e, &e);
    for (i, row) in e2.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { sym(Symbol::X) } else { Scalar::zero() };
            assert_eq!(x, &want);
        }
    }
}

fn with_sqrt(x: &Scalar, v: i64) -> Scalar {
    x.eval(Symbol::SqrtD, &rat(v, 1)).unwrap()
}

#[test]
fn split_transfer_examples() {
    for ((a, b, c), root) in [((-1, 0, 1), 2), ((0, 1, 1), 1), ((-2, 1, 1), 3)] {
        let s = classify(a, b, c, 5).unwrap();
        assert_eq!(s.case, LCase::Split);
        let t = build_split_transfer(&s).unwrap();
        assert!(t.verified);
        assert_eq!(t.lambda, rat_s(1, 2));
        // Independent check with the numeric root: A^t S A = 2 S'.
        let an: Vec<Vec<Scalar>> = t.a.iter().map(|r| r.iter().map(|x| with_sqrt(x, root)).collect()).collect();
        let sm = [[int(a), rat_s(b, 2)], [rat_s(b, 2), int(c)]];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Scalar::zero();
                for k in 0..2 {
                    for l in 0..2 {
                        acc = &acc + &(&(&an[k][i] * &sm[k][l]) * &an[l][j]);
                    }
                }
                assert_eq!(acc, if i == j { int(0) } else { int(1) });
            }
        }
        let x = conjugated_xi(&s, &t.a).unwrap();
        assert!(x[0][1].is_zero() && x[1][0].is_zero());
        assert!(mentions_sqrt_d(&x));
    }
}

#[test]
fn split_transfer_rejections() {
    let s = classify(-1, 0, 1, 3).unwrap();
    let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
    assert_ne!(transform(&s, &id, &rat_s(1, 2)).unwrap(), s_prime());
    let t = build_split_transfer(&s).unwrap();
    assert_ne!(transform(&s, &t.a, &int(1)).unwrap(), s_prime());
    let inert = classify(1, 0, 1, 3).unwrap();
    assert!(build_split_transfer(&inert).is_err());
}

proptest! {
    #[test]
    fn decomposition_sizes_sum_to_group_order(a in -20i64..20, b in -20i64..20, c in 1i64..20, pi in 0usize..2) {
        let p = [3i64, 5][pi];
        prop_assume!(c % p != 0);
        let Ok(s) = classify(a, b, c, p) else { return Ok(()) };
        let r = verify_gl2_decomposition(&s, Part::for_case(s.case), 0).unwrap();
        prop_assert!(r.passed());
        let total: usize = r.cosets.iter().filter(|e| e.side == Side::GammaUpper0).map(|e| e.size).sum();
        prop_assert_eq!(total, gl2(p).len());
    }

    #[test]
    fn useful_identity_mod_p(z in 1i64..1000, pi in 0usize..4) {
        let p = [3i64, 5, 7, 11][pi];
        prop_assume!(z % p != 0);
        let arg = IdentityArg::Residue { z, p };
        prop_assert!(verify_matrix_identities(&arg).unwrap());
    }

    #[test]
    fn useful_identity_rational(n in -50i64..50, d in 1i64..50) {
        prop_assume!(n != 0);
        prop_assert!(useful_identity_holds(&rat_s(n, d)).unwrap());
    }
}
