//! Residue-level checks of the group theory behind the towers: the case
//! split of `(a, b, c)`, coset decompositions of `GL2(F_p)`, the integration
//! formula on `GL2(o)`, congruence subgroups of `GSp4` and a few matrix
//! identities.

pub mod gl2;
pub mod gsp4;
pub mod identities;
pub mod integral;
pub mod residue;
pub mod setup;

use thiserror::Error;

use crate::case::LCase;

pub use gl2::{verify_gl2_decomposition, Part, PartitionReport, Side};
pub use gsp4::{gl2_membership, gsp4_membership, SubgroupSpec};
pub use identities::{build_split_transfer, verify_matrix_identities, IdentityArg, SplitTransfer};
pub use integral::{brute_force_integral, integration_formula, TowerProbe};
pub use residue::ResidueMatrix;
pub use setup::{classify, torus_residue, BesselSetup};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CosetError {
    #[error("p = {0} is not an odd prime")]
    UnsupportedPrime(i64),
    #[error("c = {c} is not a unit mod {p}")]
    NonUnitC { c: i64, p: i64 },
    #[error("d = b^2 - 4ac vanishes")]
    DegenerateD,
    #[error("d = {d} is divisible by {p}^2, so it does not generate the discriminant")]
    NotStandard { d: i64, p: i64 },
    #[error("part {part} does not apply to the {case} case")]
    CaseMismatch { part: Part, case: LCase },
    #[error("part iv needs m >= 1, got {0}")]
    BadLevel(u32),
    #[error("probe violates the transformation law at {0}")]
    InconsistentProbe(String),
    #[error("character not visible at residue level: {0}")]
    UnsupportedCharacter(String),
    #[error("matrix is not a symplectic similitude")]
    NotSymplectic,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("expected a {expected}x{expected} matrix")]
    WrongDimension { expected: usize },
}

/// `x mod m` in `0..m`.
pub(crate) fn md(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

/// Inverse of `x` mod `m`, if it exists.
pub(crate) fn inv_mod(x: i64, m: i64) -> Option<i64> {
    let (mut a, mut b) = (md(x, m), m);
    let (mut x0, mut x1) = (1i64, 0i64);
    while b != 0 {
        let t = a / b;
        (a, b) = (b, a - t * b);
        (x0, x1) = (x1, x0 - t * x1);
    }
    (a == 1).then(|| md(x0, m))
}

pub(crate) fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// Legendre symbol `(x / p)` for an odd prime `p`.
pub(crate) fn legendre(x: i64, p: i64) -> i64 {
    let x = md(x, p);
    if x == 0 {
        return 0;
    }
    let mut acc = 1i64;
    let (mut base, mut e) = (x, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}
