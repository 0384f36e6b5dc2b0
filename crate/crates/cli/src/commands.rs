use bessel_core::catalog::{
    eigenvalues, epsilon_half, existence_condition, restrictions, EtaAction, FixedDims, RepType,
};
use bessel_core::engine::system::{distinguished_indices, solve_rational};
use bessel_core::engine::{applicable, assemble_eigensystem, solve_and_report, FamilyId, KernelReport, Tag, TowerIndex, TowerTable, Window};
use bessel_core::zeta::{zeta_report, IdentityCheck};
use bessel_core::LCase;
use bessel_scalar::{sym, Symbol};
use serde::Serialize;

use crate::config::{CliError, RunConfig, DEFAULT_HELD_OUT};

#[derive(Serialize)]
pub struct EigenPair {
    pub lambda: String,
    pub mu: String,
}

#[derive(Serialize)]
pub struct Existence {
    pub inert: &'static str,
    pub ramified: &'static str,
    pub split: &'static str,
}

#[derive(Serialize)]
pub struct CatalogEntry {
    #[serde(rename = "type")]
    pub t: RepType,
    pub representation: &'static str,
    pub conductor: u32,
    pub fixed_dims: FixedDims,
    pub p1_dim: usize,
    pub params: Vec<&'static str>,
    pub restrictions: Vec<String>,
    pub eigenvalues: Vec<EigenPair>,
    /// A scalar, or the two coefficients of the swap `B1 <-> B2`.
    pub eta: Vec<String>,
    pub central_char: String,
    pub epsilon_half: String,
    pub existence: Existence,
}

pub fn catalog() -> Result<Vec<CatalogEntry>, CliError> {
    let (a, g) = (sym(Symbol::Alpha), sym(Symbol::Gamma));
    RepType::ALL
        .into_iter()
        .map(|t| {
            let e = eigenvalues(t, &a, &g).map_err(|e| CliError::module(format!("catalog[{t}]"), e))?;
            let eta = match &e.eta {
                EtaAction::Scalar(w) => vec![w.to_string()],
                EtaAction::Swap { b1_to_b2, b2_to_b1 } => vec![b1_to_b2.to_string(), b2_to_b1.to_string()],
            };
            Ok(CatalogEntry {
                t,
                representation: t.representation(),
                conductor: t.conductor(),
                fixed_dims: t.fixed_dims(),
                p1_dim: t.p1_dim(),
                params: t.params().iter().map(|s| s.name()).collect(),
                restrictions: restrictions(t, &a).into_iter().map(|(s, _)| s.to_string()).collect(),
                eigenvalues: e.lambdas.iter().zip(&e.mus).map(|(l, m)| EigenPair { lambda: l.to_string(), mu: m.to_string() }).collect(),
                eta,
                central_char: e.central_char_at_pi.to_string(),
                epsilon_half: epsilon_half(t, &a, &g).to_string(),
                existence: Existence {
                    inert: existence_condition(t, LCase::Inert),
                    ramified: existence_condition(t, LCase::Ramified),
                    split: existence_condition(t, LCase::Split),
                },
            })
        })
        .collect()
}

#[derive(Serialize)]
pub struct TowerOutput {
    #[serde(rename = "type")]
    pub t: RepType,
    pub case: LCase,
    pub m0: u32,
    pub window: Window,
    pub families: Vec<FamilyId>,
    pub kernel_dim: usize,
    /// Index at which the reported vector is 1, if any.
    pub normalized_at: Option<String>,
    pub warnings: Vec<String>,
    pub tables: Vec<TowerTable>,
}

pub fn tower(cfg: &RunConfig) -> Result<TowerOutput, CliError> {
    let model = cfg.model()?;
    let ch = cfg.character(&model)?;
    let sel = cfg.components(model.t)?;
    let joint = matches!(sel, bessel_core::engine::Components::Joint);
    let families = cfg.families(&cfg.families)?.unwrap_or_else(|| applicable(model.t, &ch, joint));
    let window = cfg.window()?;
    let spec = cfg.specialization()?;
    let sys = assemble_eigensystem(&model, sel, &ch, window, &families).map_err(|e| CliError::module("tower", e))?;
    let s = solve_rational(&sys, &spec, &[]).map_err(|e| CliError::module("tower", e))?;
    let comps: Vec<usize> = match sel {
        bessel_core::engine::Components::Single(c) => vec![c],
        bessel_core::engine::Components::Joint => (0..model.dim()).collect(),
    };
    // B(0,m0,E) = 1 when possible, else the first nonzero distinguished index.
    let mut chosen = None;
    'outer: for idx in distinguished_indices(&ch) {
        for &c in &comps {
            if let Some(v) = s.normalized_at(c, &idx) {
                chosen = Some((v, Some(format!("B{}:{idx}", c + 1))));
                break 'outer;
            }
        }
    }
    let (v, at) = match chosen {
        Some(x) => x,
        None => match s.validated.first() {
            Some(v) => (v.clone(), None),
            None => (vec![bessel_scalar::rat(0, 1); s.unknowns.len()], None),
        },
    };
    Ok(TowerOutput {
        t: model.t,
        case: ch.case,
        m0: ch.m0,
        window,
        families,
        kernel_dim: s.kernel.len(),
        normalized_at: at,
        warnings: sys.warnings.clone(),
        tables: comps.iter().map(|&c| TowerTable::from_vector(&s, &v, c)).collect(),
    })
}

#[derive(Serialize)]
pub struct SolveOutput {
    #[serde(rename = "type")]
    pub t: RepType,
    pub case: LCase,
    pub m0: u32,
    pub window: Window,
    pub families: Vec<FamilyId>,
    pub held_out: Vec<FamilyId>,
    pub report: KernelReport,
}

impl SolveOutput {
    /// Held-out families hold and `B(0,m0,E)` determines the validated
    /// vectors, for each component.
    pub fn passed(&self) -> bool {
        let e0 = TowerIndex::new(0, self.m0 as i64, Tag::E).to_string();
        self.report.held_out_ok
            && self.report.validated_dim > 0
            && self.report.checks.iter().filter(|c| c.index == e0).all(|c| c.nonzero && c.determines_interior)
    }
}

pub fn solve(cfg: &RunConfig) -> Result<SolveOutput, CliError> {
    let model = cfg.model()?;
    let ch = cfg.character(&model)?;
    let sel = cfg.components(model.t)?;
    let joint = matches!(sel, bessel_core::engine::Components::Joint);
    let all = applicable(model.t, &ch, joint);
    let held_out: Vec<FamilyId> = match cfg.families(&cfg.held_out)? {
        Some(h) => h,
        None => all.iter().copied().filter(|f| DEFAULT_HELD_OUT.contains(f)).collect(),
    };
    let families: Vec<FamilyId> = match cfg.families(&cfg.families)? {
        Some(f) => f,
        None => all.iter().copied().filter(|f| !held_out.contains(f)).collect(),
    };
    let window = cfg.window()?;
    let spec = cfg.specialization()?;
    let sys = assemble_eigensystem(&model, sel, &ch, window, &families).map_err(|e| CliError::module("solve", e))?;
    let report = solve_and_report(&sys, &spec, &held_out).map_err(|e| CliError::module("solve", e))?;
    Ok(SolveOutput { t: model.t, case: ch.case, m0: ch.m0, window, families, held_out, report })
}

pub fn zeta() -> Result<Vec<IdentityCheck>, CliError> {
    zeta_report().map_err(|e| CliError::module("zeta", e))
}
