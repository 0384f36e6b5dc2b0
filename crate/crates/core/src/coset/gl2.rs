//! Decompositions of `GL2(o)` into `T`-orbits of cosets of `Gamma_0(p)` and
//! `Gamma^0(p)`, checked on `GL2(F_p)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::residue::{gl2, lower, w, ResidueMatrix};
use super::setup::{torus_residue, BesselSetup};
use super::CosetError;
use crate::case::LCase;

/// The four statements about `GL2(o)`: one per case, and the level-`m` one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    I,
    II,
    III,
    IV,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::I, Part::II, Part::III, Part::IV];

    /// The part stating the decomposition for a case at `m = 0`.
    pub fn for_case(case: LCase) -> Part {
        match case {
            LCase::Inert => Part::I,
            LCase::Ramified => Part::II,
            LCase::Split => Part::III,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Part::I => "i",
            Part::II => "ii",
            Part::III => "iii",
            Part::IV => "iv",
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Part {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Part::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown part {s:?}"))
    }
}

/// Which congruence subgroup of `GL2(o)` sits on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Side {
    /// Lower left entry in `p`.
    #[serde(rename = "Gamma_0")]
    Gamma0,
    /// Upper right entry in `p`.
    #[serde(rename = "Gamma^0")]
    GammaUpper0,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Gamma0, Side::GammaUpper0];

    /// The image of the subgroup in `GL2(F_p)`.
    pub fn group(self, p: i64) -> Vec<ResidueMatrix> {
        gl2(p)
            .into_iter()
            .filter(|g| match self {
                Side::Gamma0 => g.get(1, 0) == 0,
                Side::GammaUpper0 => g.get(0, 1) == 0,
            })
            .collect()
    }

    /// Canonical label of the right coset `g Gamma`: the line spanned by the
    /// column the subgroup preserves, scaled to lead with 1.
    pub fn coset_key(self, g: &ResidueMatrix) -> (i64, i64) {
        let p = g.modulus();
        let j = match self {
            Side::Gamma0 => 0,
            Side::GammaUpper0 => 1,
        };
        let (x, y) = (g.get(0, j), g.get(1, j));
        if x != 0 {
            let xi = super::inv_mod(x, p).expect("p is prime");
            (1, y * xi % p)
        } else {
            (0, 1)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetEntry {
    pub side: Side,
    pub rep: ResidueMatrix,
    pub size: usize,
}

/// `T rep Gamma = rep Gamma`.
#[derive(Clone, Debug, Serialize)]
pub struct Absorption {
    pub side: Side,
    pub rep: ResidueMatrix,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub case: LCase,
    pub part: Part,
    pub p: i64,
    pub m: u32,
    pub cosets: Vec<CosetEntry>,
    /// Pairwise disjoint on both sides.
    pub disjoint: bool,
    /// The union is `GL2(F_p)` on both sides.
    pub covers: bool,
    pub absorption: Vec<Absorption>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.disjoint && self.covers && self.absorption.iter().all(|a| a.holds)
    }
}

/// The claimed representatives for each side, and those whose double coset
/// is claimed to collapse to a single right coset.
fn claimed(setup: &BesselSetup, part: Part, side: Side) -> (Vec<ResidueMatrix>, Vec<ResidueMatrix>) {
    let p = setup.p;
    let one = ResidueMatrix::identity(2, p);
    let us: Vec<ResidueMatrix> = setup.roots.iter().map(|&u| lower(p, u)).collect();
    match (part, side) {
        (Part::IV, Side::Gamma0) => (vec![one.clone(), w(p)], vec![one]),
        (Part::IV, Side::GammaUpper0) => (vec![w(p), one], vec![]),
        (_, Side::Gamma0) => {
            let mut reps = us.clone();
            reps.push(w(p));
            (reps, us)
        }
        (_, Side::GammaUpper0) => {
            let mut reps: Vec<ResidueMatrix> = us.iter().map(|u| u.mul(&w(p))).collect();
            reps.push(one);
            (reps, vec![])
        }
    }
}

fn double_coset(t: &BTreeSet<ResidueMatrix>, rep: &ResidueMatrix, gamma: &[ResidueMatrix]) -> BTreeSet<ResidueMatrix> {
    let mut out = BTreeSet::new();
    for x in t {
        let xr = x.mul(rep);
        for g in gamma {
            out.insert(xr.mul(g));
        }
    }
    out
}

/// Enumerate `GL2(F_p)` and check the decomposition stated in `part`.
pub fn verify_gl2_decomposition(setup: &BesselSetup, part: Part, m: u32) -> Result<PartitionReport, CosetError> {
    match part {
        Part::IV if m == 0 => return Err(CosetError::BadLevel(m)),
        Part::IV => {}
        _ if Part::for_case(setup.case) != part => return Err(CosetError::CaseMismatch { part, case: setup.case }),
        _ => {}
    }
    let p = setup.p;
    let t = torus_residue(setup, if part == Part::IV { m } else { 0 });
    let total = gl2(p).len();
    let mut cosets = Vec::new();
    let mut absorption = Vec::new();
    let (mut disjoint, mut covers) = (true, true);
    for side in Side::BOTH {
        let gamma = side.group(p);
        let (reps, absorbed) = claimed(setup, part, side);
        let mut union: BTreeSet<ResidueMatrix> = BTreeSet::new();
        let mut sum = 0;
        for rep in &reps {
            let dc = double_coset(&t, rep, &gamma);
            sum += dc.len();
            union.extend(dc.iter().cloned());
            cosets.push(CosetEntry { side, rep: rep.clone(), size: dc.len() });
            if absorbed.contains(rep) {
                let single: BTreeSet<ResidueMatrix> = gamma.iter().map(|g| rep.mul(g)).collect();
                absorption.push(Absorption { side, rep: rep.clone(), holds: single == dc });
            }
        }
        disjoint &= sum == union.len();
        covers &= union.len() == total;
    }
    Ok(PartitionReport { case: setup.case, part, p, m, cosets, disjoint, covers, absorption })
}
