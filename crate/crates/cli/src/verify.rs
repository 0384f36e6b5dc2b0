//! The default verification profile.

use bessel_core::catalog::{bessel_exists, central_char_compat, BesselCharacter, RepType};
use bessel_core::coset::{
    brute_force_integral, classify, integration_formula, verify_gl2_decomposition, BesselSetup, Part, Side, TowerProbe,
};
use bessel_core::engine::consequence::{verify_consequence_identity, verify_mutated, Consequence, FormalIdentity};
use bessel_core::engine::series::check_l_shift;
use bessel_core::engine::system::solve_rational;
use bessel_core::engine::{
    applicable, assemble_eigensystem, check_two_step_recursion, main_tower_series, Components, FamilyId, Model, Tag,
    TowerIndex, Window,
};
use bessel_core::zeta::zeta_report;
use bessel_core::{LCase, Specialization};
use bessel_scalar::{int, q, rat, RatFunc, Scalar, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{CliError, RunConfig, DEFAULT_HELD_OUT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub check_id: String,
    pub anchor: &'static str,
    pub status: Status,
    /// Counterexample on failure, summary otherwise.
    pub witness: Value,
}

impl Item {
    fn new(check_id: String, anchor: &'static str, ok: bool, witness: Value) -> Self {
        Item { check_id, anchor, status: if ok { Status::Pass } else { Status::Fail }, witness }
    }

    fn error(check_id: String, anchor: &'static str, e: impl std::fmt::Display) -> Self {
        Item { check_id, anchor, status: Status::Fail, witness: json!({ "error": e.to_string() }) }
    }

    fn skipped(check_id: String, anchor: &'static str, why: impl Into<String>) -> Self {
        Item { check_id, anchor, status: Status::Skipped, witness: json!({ "reason": why.into() }) }
    }
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub items: Vec<Item>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub const GROUPS: [&str; 6] = ["cosets", "torus", "consequences", "series", "kernels", "zeta"];

pub fn run(cfg: &RunConfig, seed: u64) -> Result<VerificationReport, CliError> {
    let groups: Vec<String> = cfg.checks.clone().unwrap_or_else(|| GROUPS.iter().map(|s| s.to_string()).collect());
    if let Some(g) = groups.iter().find(|g| !GROUPS.contains(&g.as_str())) {
        return Err(CliError::Config(format!("unknown check group {g:?}")));
    }
    let primes = match cfg.prime()? {
        Some(p) => vec![p],
        None => vec![3, 5],
    };
    let types = cfg.types()?;
    let mut items = Vec::new();
    for g in &groups {
        match g.as_str() {
            "cosets" => items.extend(primes.par_iter().flat_map(|&p| cosets(p)).collect::<Vec<_>>()),
            "torus" => items.extend(primes.par_iter().flat_map(|&p| torus(p)).collect::<Vec<_>>()),
            "consequences" => items.extend(consequences(seed)),
            "series" => items.extend(RepType::ALL.par_iter().flat_map(|&t| series(t)).collect::<Vec<_>>()),
            "kernels" => items.extend(kernels(&types)),
            _ => items.extend(zeta()),
        }
    }
    let count = |s| items.iter().filter(|i| i.status == s).count();
    Ok(VerificationReport { passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skipped), items })
}

/// One setup per case: the first `(a, b, 1)` of each kind.
pub fn setups(p: i64) -> Vec<BesselSetup> {
    let mut out: Vec<BesselSetup> = Vec::new();
    for b in 0..=1 {
        for a in -p..=p {
            if let Ok(s) = classify(a, b, 1, p) {
                if !out.iter().any(|o| o.case == s.case) {
                    out.push(s);
                }
            }
        }
    }
    out.sort_by_key(|s| s.case);
    out
}

fn cosets(p: i64) -> Vec<Item> {
    let mut items = Vec::new();
    for s in setups(p) {
        let mut parts = vec![(Part::for_case(s.case), 0)];
        parts.extend((1..=2).map(|m| (Part::IV, m)));
        for (part, m) in parts {
            let id = format!("cosets[p={p},{},part={part},m={m}]", s.case);
            items.push(match verify_gl2_decomposition(&s, part, m) {
                Ok(r) => {
                    let sizes: Vec<u64> = r.cosets.iter().map(|c| c.size as u64).collect();
                    let witness = if r.passed() { json!({ "sizes": sizes }) } else { json!(r) };
                    Item::new(id, "gl2-double-cosets", r.passed(), witness)
                }
                Err(e) => Item::error(id, "gl2-double-cosets", e),
            });
        }
    }
    items
}

fn torus(p: i64) -> Vec<Item> {
    let mut items = Vec::new();
    for s in setups(p) {
        let m0s: &[u32] = if s.case == LCase::Ramified { &[0] } else { &[0, 1] };
        for &m0 in m0s {
            let ch = match s.case {
                LCase::Inert => BesselCharacter::inert(m0, int(1)),
                LCase::Ramified => BesselCharacter::ramified(m0, int(1)),
                LCase::Split => BesselCharacter::split(m0, int(1), int(1)),
            };
            for m in 0..=1u32 {
                for side in Side::BOTH {
                    let id = format!("torus[p={p},{},m0={m0},m={m},{side:?}]", s.case);
                    if m == 0 && side == Side::GammaUpper0 {
                        items.push(Item::skipped(id, "torus-integration", "no Gamma^0 coset at m = 0"));
                        continue;
                    }
                    items.push(torus_one(&s, m, m0, &ch, side, id));
                }
            }
        }
    }
    items
}

fn torus_one(s: &BesselSetup, m: u32, m0: u32, ch: &BesselCharacter, side: Side, id: String) -> Item {
    const ANCHOR: &str = "torus-integration";
    let probes = match TowerProbe::spanning_family(s, m, ch, side) {
        Ok(f) => f,
        Err(e) => return Item::error(id, ANCHOR, e),
    };
    let mut n = 0;
    for (k, f) in probes.iter().enumerate() {
        match brute_force_integral(s, m, ch, f) {
            Ok(v) => {
                let closed = integration_formula(s, m, m0, side, |g| f.value(g));
                if v != closed {
                    let w = json!({ "probe": k, "brute_force": v.to_string(), "formula": closed.to_string() });
                    return Item::new(id, ANCHOR, false, w);
                }
                n += 1;
            }
            Err(bessel_core::coset::CosetError::InconsistentProbe(_)) if m < m0 => {}
            Err(e) => return Item::error(id, ANCHOR, e),
        }
    }
    Item::new(id, ANCHOR, true, json!({ "probes": n }))
}

fn consequences(seed: u64) -> Vec<Item> {
    const ANCHOR: &str = "consequence-identities";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    for id in Consequence::ALL {
        let ok = verify_consequence_identity(id);
        items.push(Item::new(format!("consequence[{}]", id.name()), ANCHOR, ok, json!({ "formal": ok })));
        let len = FormalIdentity::new(id, &BesselCharacter::symbolic(LCase::Split, 0)).len();
        for i in 0..5 {
            let k = rng.gen_range(0..len);
            let kind = rng.gen_range(0..3);
            let f = move |c: &Scalar| match kind {
                0 => c * &int(2),
                1 => c + &int(1),
                _ => c * &q(),
            };
            let caught = !verify_mutated(id, k, f);
            let name = ["x2", "+1", "xq"][kind];
            let check_id = format!("consequence[{}].mutation[{i}]", id.name());
            items.push(Item::new(check_id, ANCHOR, caught, json!({ "coefficient": k, "mutation": name })));
        }
    }
    items
}

fn series(t: RepType) -> Vec<Item> {
    const ANCHOR: &str = "main-tower-series";
    let model = Model::symbolic(t);
    let mut items = Vec::new();
    for comp in 0..model.dim() {
        let (lambda, mu) = (model.lambda(comp), model.mu(comp));
        for m0 in 0..=2u32 {
            for case in LCase::ALL {
                let ch = BesselCharacter::symbolic(case, m0);
                let id = format!("series[{t},B{},{case},m0={m0}]", comp + 1);
                let order = m0 as usize + 10;
                let run = || -> Result<Option<u32>, String> {
                    let mut prev = main_tower_series(0, order, &ch, lambda, mu).map_err(|e| e.to_string())?;
                    for l in 0..=2u32 {
                        let next = main_tower_series(l + 1, order, &ch, lambda, mu).map_err(|e| e.to_string())?;
                        if !check_two_step_recursion(&prev, lambda, mu, &ch.lam_pi, m0) || !check_l_shift(&prev, &next, lambda) {
                            return Ok(Some(l));
                        }
                        prev = next;
                    }
                    Ok(None)
                };
                items.push(match run() {
                    Ok(None) => Item::new(id, ANCHOR, true, json!({ "order": order, "l": [0, 1, 2] })),
                    Ok(Some(l)) => Item::new(id, ANCHOR, false, json!({ "order": order, "l": l })),
                    Err(e) => Item::error(id, ANCHOR, e),
                });
            }
        }
    }
    items
}

fn c(n: i64, d: i64) -> Scalar {
    RatFunc::from_rational(rat(n, d))
}

/// Candidate character values from small rationals, `q^+-1` and the Satake
/// parameters, filtered by the central character and existence.
pub fn characters(t: RepType, alpha: &Scalar, gamma: &Scalar, case: LCase, m0: u32) -> Vec<BesselCharacter> {
    let Ok(model) = Model::new(t, alpha.clone(), gamma.clone()) else { return Vec::new() };
    let cc = model.eig.central_char_at_pi;
    let mut base = vec![int(1), c(2, 1), c(1, 2), c(3, 1), c(1, 3), RatFunc::var_pow(Symbol::R, 2), RatFunc::var_pow(Symbol::R, -2)];
    base.push(alpha.clone());
    let mut cands = Vec::new();
    for b in &base {
        for s in [gamma * b, alpha * &(gamma * b)] {
            cands.push(-&s);
            cands.push(s);
        }
    }
    cands.sort_by_key(|x| x.to_string());
    cands.dedup();
    let raw: Vec<BesselCharacter> = match case {
        LCase::Inert => vec![BesselCharacter::inert(m0, cc.clone())],
        LCase::Ramified => cands.iter().filter(|s| (*s * *s) == cc).map(|s| BesselCharacter::ramified(m0, s.clone())).collect(),
        LCase::Split => cands.iter().map(|v| BesselCharacter::split(m0, v.clone(), &cc / v)).collect(),
    };
    raw.into_iter()
        .filter(|ch| central_char_compat(t, ch, alpha, gamma) && bessel_exists(t, ch, gamma, alpha) == Ok(true))
        .collect()
}

/// IIa and VIa split characters with `Lambda(1,varpi) = -omega`, `omega` the
/// Atkin-Lehner eigenvalue.
pub fn is_exceptional(t: RepType, alpha: &Scalar, gamma: &Scalar, ch: &BesselCharacter) -> bool {
    ch.case == LCase::Split
        && ch.m0 == 0
        && match t {
            RepType::IIa => ch.lam_01() == &(alpha * gamma),
            RepType::VIa => ch.lam_01() == gamma,
            _ => false,
        }
}

struct KernelJob {
    t: RepType,
    alpha: Scalar,
    gamma: Scalar,
    ch: BesselCharacter,
    sel: Components,
    exceptional: bool,
}

fn kernels(types: &[RepType]) -> Vec<Item> {
    let mut jobs = Vec::new();
    for &t in types {
        let params: Vec<(Scalar, Scalar)> = match t {
            RepType::IIIa => vec![(c(2, 1), c(1, 1)), (c(1, 2), c(-1, 1)), (c(4, 1), c(1, 1))],
            RepType::IVb => vec![(c(1, 1), c(1, 1)), (c(1, 1), c(-1, 1)), (c(1, 1), c(2, 1))],
            _ => vec![(c(2, 1), c(1, 1)), (c(1, 2), c(-1, 1)), (c(2, 1), c(-1, 1))],
        };
        let sels = match t {
            RepType::IVb => vec![Components::Joint],
            RepType::IIIa => vec![Components::Single(0), Components::Single(1)],
            _ => vec![Components::Single(0)],
        };
        for (alpha, gamma) in params {
            for case in LCase::ALL {
                for m0 in 0..=1 {
                    let chs = characters(t, &alpha, &gamma, case, m0);
                    if let Some(ch) = chs.iter().find(|ch| !is_exceptional(t, &alpha, &gamma, ch)) {
                        for &sel in &sels {
                            let (alpha, gamma, ch) = (alpha.clone(), gamma.clone(), ch.clone());
                            jobs.push(KernelJob { t, alpha, gamma, ch, sel, exceptional: false });
                        }
                    }
                }
            }
            if t == RepType::IIa {
                let v = &alpha * &gamma;
                let ch = BesselCharacter::split(0, v.clone(), v);
                jobs.push(KernelJob { t, alpha, gamma, ch, sel: Components::Single(0), exceptional: true });
            }
        }
    }
    jobs.par_iter().map(kernel_one).collect()
}

fn kernel_one(job: &KernelJob) -> Item {
    let anchor = match job.t {
        RepType::IIIa | RepType::IVb => "test-vector-two-dimensional",
        _ => "test-vector-one-dimensional",
    };
    let ch = &job.ch;
    let sel = match job.sel {
        Components::Single(k) => format!("B{}", k + 1),
        Components::Joint => "joint".into(),
    };
    let id = format!(
        "kernel[{},alpha={},gamma={},{},m0={},{}{sel}]",
        job.t,
        job.alpha,
        job.gamma,
        ch.case,
        ch.m0,
        if job.exceptional { "exceptional," } else { "" }
    );
    let run = || -> Result<Item, String> {
        let model = Model::new(job.t, job.alpha.clone(), job.gamma.clone()).map_err(|e| e.to_string())?;
        let joint = matches!(job.sel, Components::Joint);
        let all = applicable(job.t, ch, joint);
        let held: Vec<FamilyId> = all.iter().copied().filter(|f| DEFAULT_HELD_OUT.contains(f)).collect();
        let fams: Vec<FamilyId> = all.iter().copied().filter(|f| !held.contains(f)).collect();
        let sys = assemble_eigensystem(&model, job.sel, ch, Window::default_for(ch.m0), &fams).map_err(|e| e.to_string())?;
        let spec = Specialization::new().with(Symbol::R, rat(3, 1));
        let s = solve_rational(&sys, &spec, &held).map_err(|e| e.to_string())?;
        let comps: Vec<usize> = match job.sel {
            Components::Single(k) => vec![k],
            Components::Joint => (0..model.dim()).collect(),
        };
        let validated_ok = s.validated.len() == s.kernel.len() && !s.validated.is_empty();
        let mut failures = Vec::new();
        for &k in &comps {
            if job.exceptional {
                let at = |w| TowerIndex::new(0, 0, w);
                if s.nonzero_somewhere(k, &at(Tag::E)) {
                    failures.push(format!("B{}(0,0,E) != 0", k + 1));
                }
                for u in [Tag::U1, Tag::U2] {
                    if !s.detects(k, &at(u)) {
                        failures.push(format!("B{}(0,0,{u}) does not determine the vector", k + 1));
                    }
                }
            } else {
                let e0 = TowerIndex::new(0, ch.m0 as i64, Tag::E);
                if !s.detects(k, &e0) {
                    failures.push(format!("B{}{e0} does not determine the vector", k + 1));
                }
            }
        }
        let witness = json!({
            "lambda": character_json(ch),
            "kernel_dim": s.kernel.len(),
            "validated_dim": s.validated.len(),
            "failures": failures,
        });
        Ok(Item::new(id.clone(), anchor, validated_ok && failures.is_empty(), witness))
    };
    run().unwrap_or_else(|e| Item::error(id.clone(), anchor, e))
}

fn character_json(ch: &BesselCharacter) -> Value {
    match ch.case {
        LCase::Inert => json!({ "lam_pi": ch.lam_pi.to_string() }),
        LCase::Ramified => json!({ "lam_piL": ch.lam_pi_l().to_string() }),
        LCase::Split => json!({ "lam_10": ch.lam_10().to_string(), "lam_01": ch.lam_01().to_string() }),
    }
}

fn zeta() -> Vec<Item> {
    match zeta_report() {
        Ok(rep) => rep
            .into_iter()
            .map(|c| {
                let w = json!({ "lhs": c.lhs, "rhs": c.rhs });
                Item::new(format!("zeta[{}]", c.check_id), "zeta-identities", c.holds, w)
            })
            .collect(),
        Err(e) => vec![Item::error("zeta".into(), "zeta-identities", e)],
    }
}
