//! Congruence subgroups of `GSp4(o)` and of `GL2(o)` as membership tests on
//! residue matrices.

use std::fmt;

use serde::Serialize;

use super::residue::ResidueMatrix;
use super::setup::{torus_residue, BesselSetup};
use super::{inv_mod, md, CosetError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubgroupSpec {
    IwahoriI,
    SiegelP1,
    KlingenP2,
    /// Level `p^n`.
    ParamodularN(u32),
    GL2Gamma0,
    GL2GammaUpper0,
    TorusTO,
    /// `T(o)_m`, `m >= 1`.
    TorusTOm(u32),
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::ParamodularN(n) => write!(f, "K(p^{n})"),
            SubgroupSpec::TorusTOm(m) => write!(f, "T(o)_{m}"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Positions `(i, j)` required to lie in `p` (or `p^n` for the
/// paramodular group).
fn pattern(sub: SubgroupSpec) -> &'static [(usize, usize)] {
    match sub {
        SubgroupSpec::IwahoriI => &[(0, 1), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)],
        SubgroupSpec::SiegelP1 => &[(2, 0), (2, 1), (3, 0), (3, 1)],
        SubgroupSpec::KlingenP2 => &[(0, 1), (2, 1), (3, 0), (3, 1), (3, 2)],
        SubgroupSpec::ParamodularN(_) => &[(0, 1), (2, 1), (3, 0), (3, 1), (3, 2)],
        _ => &[],
    }
}

fn prime_of(modulus: i64) -> i64 {
    (2..=modulus).find(|k| modulus % k == 0).expect("modulus >= 2")
}

/// `p^e * (g^t J g)` with `g_{13} = e_{13} / p^e`, as an integer matrix
/// mod the modulus. Every product in `g^t J g` holds `g_{13}` at most once.
fn scaled_gram(g: &ResidueMatrix, e: u32) -> Vec<i64> {
    let m = g.modulus();
    let pe = prime_of(m).pow(e);
    let j = |a: usize, b: usize| -> i64 {
        match (a, b) {
            (0, 2) | (1, 3) => 1,
            (2, 0) | (3, 1) => -1,
            _ => 0,
        }
    };
    let mut out = vec![0i64; 16];
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = 0i64;
            for a in 0..4 {
                for b in 0..4 {
                    let s = j(a, b);
                    if s == 0 {
                        continue;
                    }
                    let (x, y) = (g.get(a, r), g.get(b, c));
                    let scaled = (a, r) == (1, 3) || (b, c) == (1, 3);
                    let prod = if scaled { x * y % m } else { pe * (x * y % m) % m };
                    acc = md(acc + s * prod, m);
                }
            }
            out[r * 4 + c] = acc;
        }
    }
    out
}

/// The multiplier mod `p^(k-e)`, or `NotSymplectic`.
fn multiplier(g: &ResidueMatrix, e: u32) -> Result<i64, CosetError> {
    let m = g.modulus();
    let pe = prime_of(m).pow(e);
    if m % (pe * prime_of(m)) != 0 {
        return Err(CosetError::NotSymplectic);
    }
    let gram = scaled_gram(g, e);
    if gram.iter().any(|x| x % pe != 0) {
        return Err(CosetError::NotSymplectic);
    }
    let red = m / pe;
    let gram: Vec<i64> = gram.iter().map(|x| md(x / pe, red)).collect();
    let mu = gram[2];
    let expected = ResidueMatrix::new(4, red, vec![0, 0, mu, 0, 0, 0, 0, mu, -mu, 0, 0, 0, 0, -mu, 0, 0]);
    if ResidueMatrix::new(4, red, gram) != expected {
        return Err(CosetError::NotSymplectic);
    }
    Ok(mu)
}

/// Membership of a 4x4 residue matrix in one of the compact open subgroups.
///
/// For `ParamodularN(n)` the modulus must be divisible by `p^(n+1)` and
/// entry `(1, 3)` (0-based) holds `varpi^n g_{13}`, since `g_{13}` itself
/// lies in `p^-n`.
pub fn gsp4_membership(g: &ResidueMatrix, sub: SubgroupSpec) -> Result<bool, CosetError> {
    if g.n() != 4 {
        return Err(CosetError::WrongDimension { expected: 4 });
    }
    let p = prime_of(g.modulus());
    let (e, level) = match sub {
        SubgroupSpec::ParamodularN(n) => (n, p.pow(n)),
        SubgroupSpec::IwahoriI | SubgroupSpec::SiegelP1 | SubgroupSpec::KlingenP2 => (0, p),
        _ => return Err(CosetError::WrongDimension { expected: 2 }),
    };
    let mu = multiplier(g, e)?;
    if inv_mod(mu, p).is_none() {
        return Ok(false);
    }
    Ok(pattern(sub).iter().all(|&(i, j)| g.get(i, j) % level == 0))
}

/// Membership of a 2x2 residue matrix mod `p` in a subgroup of `GL2(o)`.
pub fn gl2_membership(g: &ResidueMatrix, sub: SubgroupSpec, setup: &BesselSetup) -> Result<bool, CosetError> {
    if g.n() != 2 {
        return Err(CosetError::WrongDimension { expected: 2 });
    }
    let g = g.reduce(setup.p);
    if !g.is_invertible() {
        return Ok(false);
    }
    Ok(match sub {
        SubgroupSpec::GL2Gamma0 => g.get(1, 0) == 0,
        SubgroupSpec::GL2GammaUpper0 => g.get(0, 1) == 0,
        SubgroupSpec::TorusTO => torus_residue(setup, 0).contains(&g),
        SubgroupSpec::TorusTOm(m) if m >= 1 => torus_residue(setup, m).contains(&g),
        SubgroupSpec::TorusTOm(m) => return Err(CosetError::BadLevel(m)),
        _ => return Err(CosetError::WrongDimension { expected: 4 }),
    })
}

pub fn s1(modulus: i64) -> ResidueMatrix {
    ResidueMatrix::new(4, modulus, vec![0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0])
}

pub fn s2(modulus: i64) -> ResidueMatrix {
    ResidueMatrix::new(4, modulus, vec![0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1])
}

/// The Atkin-Lehner element with `varpi = p`.
pub fn eta(modulus: i64) -> ResidueMatrix {
    let p = prime_of(modulus);
    ResidueMatrix::new(4, modulus, vec![0, 0, 0, -1, 0, 0, 1, 0, 0, p, 0, 0, -p, 0, 0, 0])
}

/// `h(l, m) = diag(varpi^(l+2m), varpi^(l+m), 1, varpi^m)` with
/// `varpi = p`, for `m >= 0` and `l + m >= 0`.
pub fn h(modulus: i64, l: i64, m: i64) -> Option<ResidueMatrix> {
    if m < 0 || l + m < 0 {
        return None;
    }
    let p = prime_of(modulus);
    let pw = |k: i64| p.checked_pow(k as u32).map(|x| md(x, modulus));
    Some(ResidueMatrix::diag(modulus, &[pw(l + 2 * m)?, pw(l + m)?, 1, pw(m)?]))
}

/// `hat u = [[1,0,0,0],[u,1,0,0],[0,0,1,-u],[0,0,0,1]]`.
pub fn hat_u(modulus: i64, u: i64) -> ResidueMatrix {
    ResidueMatrix::new(4, modulus, vec![1, 0, 0, 0, u, 1, 0, 0, 0, 0, 1, -u, 0, 0, 0, 1])
}
