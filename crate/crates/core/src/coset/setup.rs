use std::collections::BTreeSet;

use serde::Serialize;

use super::residue::ResidueMatrix;
use super::{inv_mod, is_prime, legendre, md, CosetError};
use crate::case::LCase;

/// Integral data `(a, b, c)` at an odd prime with its case and residue roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BesselSetup {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub p: i64,
    pub d: i64,
    pub case: LCase,
    /// Roots of `c u^2 + b u + a` mod `p`, ascending.
    pub roots: Vec<i64>,
}

pub fn classify(a: i64, b: i64, c: i64, p: i64) -> Result<BesselSetup, CosetError> {
    if p == 2 || !is_prime(p) {
        return Err(CosetError::UnsupportedPrime(p));
    }
    if md(c, p) == 0 {
        return Err(CosetError::NonUnitC { c, p });
    }
    let d = b * b - 4 * a * c;
    if d == 0 {
        return Err(CosetError::DegenerateD);
    }
    let case = match legendre(d, p) {
        0 if d % (p * p) == 0 => return Err(CosetError::NotStandard { d, p }),
        0 => LCase::Ramified,
        1 => LCase::Split,
        _ => LCase::Inert,
    };
    let roots = (0..p).filter(|u| md(c * u * u + b * u + a, p) == 0).collect();
    Ok(BesselSetup { a, b, c, p, d, case, roots })
}

impl BesselSetup {
    /// `xi = [[b/2, c], [-a, -b/2]]` mod `p`.
    pub fn xi(&self) -> ResidueMatrix {
        let h = inv_mod(2, self.p).expect("p is odd");
        ResidueMatrix::m2(self.p, self.b * h, self.c, -self.a, -self.b * h)
    }

    /// `S = [[a, b/2], [b/2, c]]` mod `p`.
    pub fn s(&self) -> ResidueMatrix {
        let h = inv_mod(2, self.p).expect("p is odd");
        ResidueMatrix::m2(self.p, self.a, self.b * h, self.b * h, self.c)
    }

    /// Elements `g` of `GL2(F_p)` with `g^t S g = det(g) S` mod `p`.
    pub fn torus_by_equation(&self) -> BTreeSet<ResidueMatrix> {
        let s = self.s();
        super::residue::gl2(self.p)
            .into_iter()
            .filter(|g| g.transpose().mul(&s).mul(g) == s.scale(g.det()))
            .collect()
    }
}

/// Image mod `p` of `T(o)` (`m = 0`) or of `T(o)_m` (`m >= 1`).
///
/// For `m >= 1` conjugating `x + y xi` by `diag(varpi^m, 1)` is integral
/// only for `y` in `p^m`, and the result reduces to `[[x, u], [0, x]]`.
pub fn torus_residue(setup: &BesselSetup, m: u32) -> BTreeSet<ResidueMatrix> {
    let p = setup.p;
    let mut out = BTreeSet::new();
    if m == 0 {
        let xi = setup.xi();
        for x in 0..p {
            for y in 0..p {
                let g = ResidueMatrix::identity(2, p).scale(x);
                let g = ResidueMatrix::new(
                    2,
                    p,
                    g.entries().iter().zip(xi.scale(y).entries()).map(|(a, b)| a + b).collect(),
                );
                if g.is_invertible() {
                    out.insert(g);
                }
            }
        }
    } else {
        for x in 1..p {
            for u in 0..p {
                out.insert(ResidueMatrix::m2(p, x, u, 0, x));
            }
        }
    }
    out
}
