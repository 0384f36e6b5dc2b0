use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use bessel_core::catalog::{BesselCharacter, RepType};
use bessel_core::engine::{Components, FamilyId, Model, Window};
use bessel_core::{LCase, Specialization};
use bessel_scalar::{parse_rational, parse_scalar, RatFunc, Rational, Scalar, Symbol};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{check_id}: {msg}")]
    Module { check_id: String, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn module(check_id: impl Into<String>, e: impl fmt::Display) -> Self {
        CliError::Module { check_id: check_id.into(), msg: e.to_string() }
    }
}

fn bad(e: impl fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Catalog,
    Tower,
    Solve,
    Verify,
    Zeta,
}

/// The JSON run configuration. Every field is optional; flags override
/// `command` and `seed`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    #[serde(rename = "type")]
    pub rep_type: Option<String>,
    pub case: Option<String>,
    pub m0: Option<u32>,
    /// Symbol name to exact rational, e.g. `{"r": "3", "alpha": "1/2"}`.
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    /// Character values by symbol name (`lam_pi`, `lam_piL`, `lam_10`,
    /// `lam_01`); may use `alpha`, `gamma` and `r`.
    #[serde(default)]
    pub lambda_spec: BTreeMap<String, String>,
    pub window: Option<(i64, i64)>,
    pub families: Option<Vec<String>>,
    pub held_out: Option<Vec<String>>,
    /// `"joint"`, `1` or `2`.
    pub component: Option<serde_json::Value>,
    pub p: Option<i64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    /// Check groups for `verify`; all when absent.
    pub checks: Option<Vec<String>>,
    /// Representation types for the kernel checks of `verify`.
    pub types: Option<Vec<String>>,
}

/// Families derived from the Hecke rows, held out of solved systems and
/// checked afterwards by default.
pub const DEFAULT_HELD_OUT: [FamilyId; 4] =
    [FamilyId::T01s2conslemmaeq1, FamilyId::T01s2conseq4, FamilyId::T01s2conseq4b, FamilyId::T01s2conslemmaeq1b];

impl RunConfig {
    pub fn rep_type(&self) -> Result<RepType, CliError> {
        let s = self.rep_type.as_deref().ok_or_else(|| bad("missing \"type\""))?;
        RepType::from_str(s).map_err(bad)
    }

    pub fn case(&self) -> Result<LCase, CliError> {
        let s = self.case.as_deref().ok_or_else(|| bad("missing \"case\""))?;
        LCase::from_str(s).map_err(bad)
    }

    pub fn m0(&self) -> u32 {
        self.m0.unwrap_or(0)
    }

    pub fn param(&self, sym: Symbol) -> Result<Option<Rational>, CliError> {
        self.params.get(sym.name()).map(|s| parse_rational(s).map_err(|e| bad(format!("{}: {e}", sym.name())))).transpose()
    }

    pub fn check_params(&self) -> Result<(), CliError> {
        for (k, v) in &self.params {
            if Symbol::from_name(k).is_none() {
                return Err(bad(format!("unknown parameter {k:?}")));
            }
            parse_rational(v).map_err(|e| bad(format!("{k}: {e}")))?;
        }
        Ok(())
    }

    /// Exact values for `r` (required), `alpha` and `gamma`.
    pub fn specialization(&self) -> Result<Specialization, CliError> {
        let mut spec = Specialization::new();
        let r = self.param(Symbol::R)?.ok_or_else(|| bad("missing parameter \"r\""))?;
        spec.set(Symbol::R, r);
        for s in [Symbol::Alpha, Symbol::Gamma] {
            if let Some(v) = self.param(s)? {
                spec.set(s, v);
            }
        }
        Ok(spec)
    }

    /// The model at the given `alpha` and `gamma`; a missing one defaults to 1.
    pub fn model(&self) -> Result<Model, CliError> {
        let t = self.rep_type()?;
        let get = |s| -> Result<Scalar, CliError> {
            Ok(RatFunc::from_rational(self.param(s)?.unwrap_or_else(|| bessel_scalar::rat(1, 1))))
        };
        Model::new(t, get(Symbol::Alpha)?, get(Symbol::Gamma)?).map_err(bad)
    }

    fn lambda_value(&self, model: &Model, sym: Symbol) -> Result<Option<Scalar>, CliError> {
        let raw = self.lambda_spec.get(sym.name()).or_else(|| self.params.get(sym.name()));
        let Some(raw) = raw else { return Ok(None) };
        let x = parse_scalar(raw).map_err(|e| bad(format!("{}: {e}", sym.name())))?;
        let x = x.subs(Symbol::Alpha, &model.alpha).and_then(|x| x.subs(Symbol::Gamma, &model.gamma)).map_err(bad)?;
        Ok(Some(x))
    }

    /// The Bessel character. Missing values default to those forced by the
    /// central character where there is only one choice.
    pub fn character(&self, model: &Model) -> Result<BesselCharacter, CliError> {
        let (case, m0) = (self.case()?, self.m0());
        let cc = &model.eig.central_char_at_pi;
        let ch = match case {
            LCase::Inert => {
                BesselCharacter::inert(m0, self.lambda_value(model, Symbol::LamPi)?.unwrap_or_else(|| cc.clone()))
            }
            LCase::Ramified => {
                let v = self.lambda_value(model, Symbol::LamPiL)?.ok_or_else(|| bad("ramified case needs lam_piL"))?;
                BesselCharacter::ramified(m0, v)
            }
            LCase::Split => {
                let v = self.lambda_value(model, Symbol::Lam10)?.ok_or_else(|| bad("split case needs lam_10"))?;
                let w = match self.lambda_value(model, Symbol::Lam01)? {
                    Some(w) => w,
                    None => cc / &v,
                };
                BesselCharacter::split(m0, v, w)
            }
        };
        ch.validate().map_err(bad)?;
        Ok(ch)
    }

    pub fn window(&self) -> Result<Window, CliError> {
        match self.window {
            Some((l, m)) if l > 0 && m > 0 => Ok(Window::new(l, m)),
            Some(w) => Err(bad(format!("window {w:?} is not positive"))),
            None => Ok(Window::default_for(self.m0())),
        }
    }

    pub fn components(&self, t: RepType) -> Result<Components, CliError> {
        match &self.component {
            None if t == RepType::IVb => Ok(Components::Joint),
            None => Ok(Components::Single(0)),
            Some(serde_json::Value::String(s)) if s == "joint" => Ok(Components::Joint),
            Some(serde_json::Value::Number(n)) => match n.as_u64() {
                Some(k @ 1..=2) => Ok(Components::Single(k as usize - 1)),
                _ => Err(bad(format!("component {n} out of range"))),
            },
            Some(v) => Err(bad(format!("bad component {v}"))),
        }
    }

    pub fn families(&self, names: &Option<Vec<String>>) -> Result<Option<Vec<FamilyId>>, CliError> {
        names.as_ref().map(|v| v.iter().map(|s| FamilyId::from_str(s).map_err(bad)).collect()).transpose()
    }

    pub fn prime(&self) -> Result<Option<i64>, CliError> {
        match self.p {
            Some(p) if p > 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) => Ok(Some(p)),
            Some(p) => Err(bad(format!("p = {p} is not an odd prime"))),
            None => Ok(None),
        }
    }

    pub fn types(&self) -> Result<Vec<RepType>, CliError> {
        match &self.types {
            None => Ok(RepType::ALL.to_vec()),
            Some(v) => v.iter().map(|s| RepType::from_str(s).map_err(bad)).collect(),
        }
    }
}
