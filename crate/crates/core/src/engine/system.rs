//! Truncated eigensystems and their kernels.

use std::collections::{BTreeMap, HashMap};

use bessel_scalar::{apply_sparse, kernel_sparse, Field, Rational, Scalar};
use serde::Serialize;

use super::families::{family_rows, FamilyId};
use super::index::{vanishes, Tag, TowerIndex, Window};
use super::rows::{t01_row, t10_row, LinearRow, Operator};
use super::{EngineError, Model};
use crate::catalog::{bessel_exists, central_char_compat, BesselCharacter};
use crate::specialize::Specialization;

/// Which eigenvectors a system describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Components {
    /// One common eigenvector, selected by the index of its eigenvalue pair.
    Single(usize),
    /// All eigenvectors of the type at once, so that Atkin-Lehner rows can
    /// couple them.
    Joint,
}

/// A homogeneous sparse equation over the unknown columns.
pub type Equation = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub model: Model,
    pub comps: Vec<usize>,
    pub ch: BesselCharacter,
    pub window: Window,
    pub families: Vec<FamilyId>,
    /// Ordered unknowns `(component, index)`.
    pub unknowns: Vec<(usize, TowerIndex)>,
    /// Complete rows that entered the system, parallel to `equations`.
    pub rows: Vec<LinearRow>,
    pub equations: Vec<Equation>,
    pub warnings: Vec<String>,
    columns: HashMap<(usize, TowerIndex), usize>,
}

impl EigenSystem {
    pub fn column(&self, comp: usize, idx: &TowerIndex) -> Option<usize> {
        self.columns.get(&(comp, *idx)).copied()
    }

    /// The homogeneous form of a row, or `None` if the row is incomplete:
    /// it references a non-vanishing index outside the window or a
    /// component outside the system.
    pub fn equation_for(&self, row: &LinearRow) -> Option<Equation> {
        let eigen = match row.operator {
            Operator::T10 => Some(self.model.lambda(row.comp)),
            Operator::T01 => Some(self.model.mu(row.comp)),
            Operator::Constraint(_) => None,
        };
        let mut eq: BTreeMap<usize, Scalar> = BTreeMap::new();
        for t in row.homogeneous(eigen) {
            if vanishes(&t.idx, &self.ch) {
                continue;
            }
            let col = self.column(t.comp, &t.idx)?;
            let e = eq.entry(col).or_insert_with(Scalar::zero);
            *e = &*e + &t.coeff;
        }
        Some(eq.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Rows of the given families, restricted to complete instances.
    pub fn family_equations(&self, ids: &[FamilyId]) -> Vec<(LinearRow, Equation)> {
        let mut out = Vec::new();
        for &id in ids {
            let comps: Vec<usize> = if id == FamilyId::AtkinLehner { vec![0] } else { self.comps.clone() };
            for c in comps {
                for row in family_rows(id, &self.model, c, &self.ch, &self.window) {
                    if let Some(eq) = self.equation_for(&row) {
                        if !eq.is_empty() {
                            out.push((row, eq));
                        }
                    }
                }
            }
        }
        out
    }

    /// Window indices that every complete recursion can reach.
    pub fn is_interior(&self, idx: &TowerIndex) -> bool {
        self.window.is_interior(idx)
    }
}

/// Hecke rows for every representative target in the window, plus the
/// selected constraint families. Only complete rows are kept.
pub fn assemble_eigensystem(
    model: &Model,
    sel: Components,
    ch: &BesselCharacter,
    window: Window,
    families: &[FamilyId],
) -> Result<EigenSystem, EngineError> {
    let comps: Vec<usize> = match sel {
        Components::Single(i) if i < model.dim() => vec![i],
        Components::Single(i) => return Err(EngineError::NoSuchComponent(i)),
        Components::Joint => (0..model.dim()).collect(),
    };
    if window.l_max < 0 || window.m_max < 0 {
        return Err(EngineError::EmptyWindow);
    }
    let mut unknowns = Vec::new();
    for &c in &comps {
        unknowns.extend(window.unknowns(ch).into_iter().map(|idx| (c, idx)));
    }
    if unknowns.is_empty() {
        return Err(EngineError::EmptyWindow);
    }
    let columns = unknowns.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut warnings = Vec::new();
    if !central_char_compat(model.t, ch, &model.alpha, &model.gamma) {
        warnings.push("Lambda(varpi) differs from the central character at varpi".to_string());
    }
    match bessel_exists(model.t, ch, &model.gamma, &model.alpha) {
        Ok(true) => {}
        Ok(false) => warnings.push(format!("{} has no Bessel model for this character", model.t)),
        Err(e) => warnings.push(format!("existence undecided: {e}")),
    }
    let mut sys = EigenSystem {
        model: model.clone(),
        comps: comps.clone(),
        ch: ch.clone(),
        window,
        families: families.to_vec(),
        unknowns,
        rows: Vec::new(),
        equations: Vec::new(),
        warnings,
        columns,
    };
    let mut rows = Vec::new();
    for m in 0..=window.m_max {
        for l in -1..=window.l_max {
            for &w in Tag::for_case(ch.case) {
                let idx = TowerIndex::new(l, m, w);
                if !idx.is_representative(ch.case) {
                    continue;
                }
                for &c in &comps {
                    if let Ok(r) = t10_row(&idx, ch) {
                        rows.push(r.on_component(c));
                    }
                    if let Ok(r) = t01_row(&idx, ch) {
                        rows.push(r.on_component(c));
                    }
                }
            }
        }
    }
    for row in rows {
        if let Some(eq) = sys.equation_for(&row) {
            if !eq.is_empty() {
                sys.rows.push(row);
                sys.equations.push(eq);
            }
        }
    }
    for (row, eq) in sys.family_equations(families) {
        sys.rows.push(row);
        sys.equations.push(eq);
    }
    Ok(sys)
}

/// Kernel of a specialized system, with the subspace that also satisfies
/// held-out constraint families.
#[derive(Clone, Debug)]
pub struct Solved<T> {
    pub unknowns: Vec<(usize, TowerIndex)>,
    pub window: Window,
    pub ch: BesselCharacter,
    pub kernel: Vec<Vec<T>>,
    /// Basis of the held-out-validated subspace.
    pub validated: Vec<Vec<T>>,
    columns: HashMap<(usize, TowerIndex), usize>,
}

fn to_rows<T: Field>(
    eqs: &[Equation],
    conv: &impl Fn(&Scalar) -> Result<T, EngineError>,
) -> Result<Vec<Vec<(usize, T)>>, EngineError> {
    eqs.iter()
        .map(|eq| {
            let mut r = Vec::with_capacity(eq.len());
            for (c, s) in eq {
                let v = conv(s)?;
                if !v.is_zero() {
                    r.push((*c, v));
                }
            }
            Ok(r)
        })
        .collect()
}

/// Basis of `{ sum c_i b_i : rows * (sum c_i b_i) = 0 }`.
pub fn restrict<T: Field>(basis: &[Vec<T>], rows: &[Vec<(usize, T)>]) -> Vec<Vec<T>> {
    if basis.is_empty() || rows.is_empty() {
        return basis.to_vec();
    }
    let images: Vec<Vec<T>> = basis.iter().map(|b| apply_sparse(rows, b)).collect();
    let m: Vec<Vec<(usize, T)>> = (0..rows.len())
        .map(|i| {
            images
                .iter()
                .enumerate()
                .filter(|(_, img)| !img[i].is_zero())
                .map(|(j, img)| (j, img[i].clone()))
                .collect()
        })
        .filter(|r: &Vec<(usize, T)>| !r.is_empty())
        .collect();
    if m.is_empty() {
        return basis.to_vec();
    }
    kernel_sparse(&m, basis.len()).into_iter().map(|c| combine(basis, &c)).collect()
}

fn combine<T: Field>(basis: &[Vec<T>], c: &[T]) -> Vec<T> {
    let n = basis[0].len();
    let mut v = vec![T::zero(); n];
    for (b, cj) in basis.iter().zip(c) {
        if cj.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            if !y.is_zero() {
                *x = x.add(&cj.mul(y));
            }
        }
    }
    v
}

impl<T: Field> Solved<T> {
    pub fn column(&self, comp: usize, idx: &TowerIndex) -> Option<usize> {
        self.columns.get(&(comp, *idx)).copied()
    }

    /// Value of `B_comp(idx)` in `v`; zero for vanishing indices.
    pub fn value(&self, v: &[T], comp: usize, idx: &TowerIndex) -> T {
        match self.column(comp, idx) {
            Some(c) => v[c].clone(),
            None => T::zero(),
        }
    }

    /// Whether some validated vector is nonzero at the index.
    pub fn nonzero_somewhere(&self, comp: usize, idx: &TowerIndex) -> bool {
        self.validated.iter().any(|v| !self.value(v, comp, idx).is_zero())
    }

    /// Validated vectors vanishing at the index.
    pub fn zero_subspace(&self, comp: usize, idx: &TowerIndex) -> Vec<Vec<T>> {
        match self.column(comp, idx) {
            Some(c) => restrict(&self.validated, &[vec![(c, T::one())]]),
            None => self.validated.clone(),
        }
    }

    /// Whether all vectors vanish at every interior index of a component.
    pub fn vanish_on_interior(&self, vs: &[Vec<T>], comp: usize) -> bool {
        self.unknowns
            .iter()
            .enumerate()
            .filter(|(_, (c, idx))| *c == comp && self.window.is_interior(idx))
            .all(|(col, _)| vs.iter().all(|v| v[col].is_zero()))
    }

    /// Test-vector property at `idx`: some validated vector is nonzero there
    /// and every validated vector vanishing there is zero on the interior.
    pub fn detects(&self, comp: usize, idx: &TowerIndex) -> bool {
        self.nonzero_somewhere(comp, idx) && self.vanish_on_interior(&self.zero_subspace(comp, idx), comp)
    }

    /// A validated vector scaled to 1 at the index.
    pub fn normalized_at(&self, comp: usize, idx: &TowerIndex) -> Option<Vec<T>> {
        let v = self.validated.iter().find(|v| !self.value(v, comp, idx).is_zero())?;
        let s = self.value(v, comp, idx);
        Some(v.iter().map(|x| x.div(&s)).collect())
    }

    /// Interior indices of a component, in unknown order.
    pub fn interior(&self, comp: usize) -> Vec<TowerIndex> {
        self.unknowns
            .iter()
            .filter(|(c, idx)| *c == comp && self.window.is_interior(idx))
            .map(|(_, idx)| *idx)
            .collect()
    }
}

fn solve_with<T: Field>(
    sys: &EigenSystem,
    held_out: &[FamilyId],
    conv: impl Fn(&Scalar) -> Result<T, EngineError>,
) -> Result<Solved<T>, EngineError> {
    let rows = to_rows(&sys.equations, &conv)?;
    let kernel = kernel_sparse(&rows, sys.unknowns.len());
    let held: Vec<Equation> = sys.family_equations(held_out).into_iter().map(|(_, e)| e).collect();
    let hrows = to_rows(&held, &conv)?;
    let validated = restrict(&kernel, &hrows);
    Ok(Solved {
        unknowns: sys.unknowns.clone(),
        window: sys.window,
        ch: sys.ch.clone(),
        kernel,
        validated,
        columns: sys.columns.clone(),
    })
}

/// Kernel over the rationals. Every coefficient must specialize to a number.
pub fn solve_rational(sys: &EigenSystem, spec: &Specialization, held_out: &[FamilyId]) -> Result<Solved<Rational>, EngineError> {
    solve_with(sys, held_out, |s| {
        spec.rational(s)?.ok_or_else(|| {
            EngineError::Scalar(bessel_scalar::ScalarError::Parse(format!("coefficient {s} is not fully specialized")))
        })
    })
}

/// Kernel over the fraction field after a partial specialization.
pub fn solve_symbolic(sys: &EigenSystem, spec: &Specialization, held_out: &[FamilyId]) -> Result<Solved<Scalar>, EngineError> {
    solve_with(sys, held_out, |s| Ok(spec.apply(s)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishedCheck {
    pub comp: usize,
    pub index: String,
    /// Some validated vector is nonzero at the index.
    pub nonzero: bool,
    /// Validated vectors vanishing at the index vanish on the interior.
    pub determines_interior: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub unknowns: usize,
    pub equations: usize,
    pub dim: usize,
    pub validated_dim: usize,
    /// Every kernel vector satisfies the held-out families.
    pub held_out_ok: bool,
    /// Values of each validated basis vector at the distinguished indices.
    pub distinguished: Vec<BTreeMap<String, String>>,
    pub checks: Vec<DistinguishedCheck>,
    pub warnings: Vec<String>,
}

/// The distinguished indices `(0,m0,E)`, and `(0,0,U1)`, `(0,0,U2)` in the split case.
pub fn distinguished_indices(ch: &BesselCharacter) -> Vec<TowerIndex> {
    let mut out = vec![TowerIndex::new(0, ch.m0 as i64, Tag::E)];
    if ch.case == crate::case::LCase::Split {
        out.push(TowerIndex::new(0, 0, Tag::U1));
        out.push(TowerIndex::new(0, 0, Tag::U2));
    }
    out
}

fn report<T: Field>(sys: &EigenSystem, s: &Solved<T>, show: impl Fn(&T) -> String) -> KernelReport {
    let dist = distinguished_indices(&sys.ch);
    let distinguished = s
        .validated
        .iter()
        .map(|v| {
            let mut m = BTreeMap::new();
            for &c in &sys.comps {
                for idx in &dist {
                    let key = if sys.comps.len() > 1 { format!("B{}:{idx}", c + 1) } else { idx.to_string() };
                    m.insert(key, show(&s.value(v, c, idx)));
                }
            }
            m
        })
        .collect();
    let mut checks = Vec::new();
    for &c in &sys.comps {
        for idx in &dist {
            checks.push(DistinguishedCheck {
                comp: c,
                index: idx.to_string(),
                nonzero: s.nonzero_somewhere(c, idx),
                determines_interior: s.vanish_on_interior(&s.zero_subspace(c, idx), c),
            });
        }
    }
    KernelReport {
        unknowns: sys.unknowns.len(),
        equations: sys.equations.len(),
        dim: s.kernel.len(),
        validated_dim: s.validated.len(),
        held_out_ok: s.validated.len() == s.kernel.len(),
        distinguished,
        checks,
        warnings: sys.warnings.clone(),
    }
}

/// Solve over the rationals when the specialization fixes every symbol,
/// over the fraction field otherwise.
pub fn solve_and_report(sys: &EigenSystem, spec: &Specialization, held_out: &[FamilyId]) -> Result<KernelReport, EngineError> {
    let numeric = sys.equations.iter().flatten().all(|(_, c)| matches!(spec.rational(c), Ok(Some(_))));
    if numeric {
        let s = solve_rational(sys, spec, held_out)?;
        Ok(report(sys, &s, |x| x.to_string()))
    } else {
        let s = solve_symbolic(sys, spec, held_out)?;
        Ok(report(sys, &s, |x| x.to_string()))
    }
}
