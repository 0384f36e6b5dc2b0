//! Exact matrix identities over the scalar field and the change of model to
//! the split standard form.

use bessel_scalar::{int, rat, sym, RatFunc, Relations, Scalar, Symbol};
use serde::Serialize;

use super::residue::ResidueMatrix;
use super::setup::BesselSetup;
use super::{inv_mod, md, CosetError};
use crate::case::LCase;

pub type SMatrix = Vec<Vec<Scalar>>;

pub fn smul(a: &SMatrix, b: &SMatrix) -> SMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(Scalar::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

pub fn stranspose(a: &SMatrix) -> SMatrix {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn from_ints(rows: &[&[i64]]) -> SMatrix {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn m2(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> SMatrix {
    vec![vec![a, b], vec![c, d]]
}

/// Both sides of `[[1,0],[z,1]] = [[1,1/z],[0,1]] diag(-1/z,-z) [[0,1],[-1,0]] [[1,1/z],[0,1]]`.
pub fn useful_identity_sides(z: &Scalar) -> Result<(SMatrix, SMatrix), CosetError> {
    let zi = z.inv().map_err(|_| CosetError::NotInvertible)?;
    let n = m2(int(1), zi.clone(), int(0), int(1));
    let d = m2(-&zi, int(0), int(0), -z);
    let s = m2(int(0), int(1), int(-1), int(0));
    let rhs = smul(&smul(&smul(&n, &d), &s), &n);
    Ok((m2(int(1), int(0), z.clone(), int(1)), rhs))
}

pub fn useful_identity_holds(z: &Scalar) -> Result<bool, CosetError> {
    let (l, r) = useful_identity_sides(z)?;
    Ok(l == r)
}

/// The same identity in `GL2(Z/p)`.
pub fn useful_identity_holds_mod(z: i64, p: i64) -> Result<bool, CosetError> {
    let zi = inv_mod(z, p).ok_or(CosetError::NotInvertible)?;
    let n = ResidueMatrix::m2(p, 1, zi, 0, 1);
    let d = ResidueMatrix::m2(p, -zi, 0, 0, -z);
    let s = ResidueMatrix::m2(p, 0, 1, -1, 0);
    Ok(n.mul(&d).mul(&s).mul(&n) == ResidueMatrix::m2(p, 1, 0, md(z, p), 1))
}

/// `eta` and `s2 s1 s2 diag(varpi, -varpi, 1, -1)` for a formal `varpi`.
pub fn eta_factorization_sides(varpi: &Scalar) -> (SMatrix, SMatrix) {
    let z = Scalar::zero();
    let o = int(1);
    let eta = vec![
        vec![z.clone(), z.clone(), z.clone(), -&o],
        vec![z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), varpi.clone(), z.clone(), z.clone()],
        vec![-varpi, z.clone(), z.clone(), z.clone()],
    ];
    let s1 = from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    let s2 = from_ints(&[&[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1]]);
    let mut dg = from_ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]);
    dg[0][0] = varpi.clone();
    dg[1][1] = -varpi;
    let rhs = smul(&smul(&smul(&s2, &s1), &s2), &dg);
    (eta, rhs)
}

pub fn eta_factorization_holds(varpi: &Scalar) -> bool {
    let (l, r) = eta_factorization_sides(varpi);
    l == r
}

/// Argument of [`verify_matrix_identities`].
#[derive(Clone, Debug)]
pub enum IdentityArg {
    /// `z` mod `p`; `varpi = p` in the factorization of `eta`.
    Residue { z: i64, p: i64 },
    /// `z` in the scalar field; `varpi` is a free indeterminate.
    Symbolic(Scalar),
}

/// The useful identity at `z` and the factorization of `eta`, both exact.
pub fn verify_matrix_identities(arg: &IdentityArg) -> Result<bool, CosetError> {
    match arg {
        IdentityArg::Residue { z, p } => {
            let u = useful_identity_holds_mod(*z, *p)?;
            Ok(u && eta_factorization_holds(&int(*p)))
        }
        IdentityArg::Symbolic(z) => {
            let u = useful_identity_holds(z)?;
            // `Y` does not otherwise occur here, so it serves as `varpi`.
            Ok(u && eta_factorization_holds(&sym(Symbol::Y)))
        }
    }
}

/// `A` with `lambda A^t S A = S'` for `S' = [[0,1/2],[1/2,0]]`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitTransfer {
    /// Entries in terms of `sqrt_d`.
    #[serde(serialize_with = "ser_matrix")]
    pub a: SMatrix,
    #[serde(serialize_with = "ser_scalar")]
    pub lambda: Scalar,
    pub verified: bool,
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_matrix<S: serde::Serializer>(m: &SMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

pub fn s_matrix(setup: &BesselSetup) -> SMatrix {
    let h = RatFunc::from_rational(rat(setup.b, 2));
    m2(int(setup.a), h.clone(), h, int(setup.c))
}

pub fn s_prime() -> SMatrix {
    let h = RatFunc::from_rational(rat(1, 2));
    m2(int(0), h.clone(), h, int(0))
}

fn relations(setup: &BesselSetup) -> Relations {
    Relations::sqrt_d(rat(setup.d, 1))
}

fn reduce(m: &SMatrix, rel: &Relations) -> Result<SMatrix, CosetError> {
    m.iter()
        .map(|r| r.iter().map(|x| x.reduce(rel).map_err(|_| CosetError::NotInvertible)).collect())
        .collect()
}

/// `lambda A^t S A`, reduced by `sqrt_d^2 = d`.
pub fn transform(setup: &BesselSetup, a: &SMatrix, lambda: &Scalar) -> Result<SMatrix, CosetError> {
    let t = smul(&smul(&stranspose(a), &s_matrix(setup)), a);
    let t: SMatrix = t.iter().map(|r| r.iter().map(|x| lambda * x).collect()).collect();
    reduce(&t, &relations(setup))
}

/// The change-of-model matrix `A = (1/sqrt d) [[1, -2c], [-(b - sqrt d)/(2c), b + sqrt d]]`.
///
/// `A^t S A` comes out as `2 S'`, so the scaling is `lambda = 1/2`.
pub fn build_split_transfer(setup: &BesselSetup) -> Result<SplitTransfer, CosetError> {
    if setup.d == 0 {
        return Err(CosetError::DegenerateD);
    }
    if setup.case != LCase::Split {
        return Err(CosetError::UnsupportedCharacter(format!("split transfer on a {} setup", setup.case)));
    }
    let sd = sym(Symbol::SqrtD);
    let b = int(setup.b);
    let c2 = int(2 * setup.c);
    let inv = sd.inv().expect("symbol is nonzero");
    let raw = m2(int(1), -&c2, -&(&(&b - &sd) / &c2), &b + &sd);
    let a: SMatrix = raw.iter().map(|r| r.iter().map(|x| &inv * x).collect()).collect();
    let a = reduce(&a, &relations(setup))?;
    let lambda = RatFunc::from_rational(rat(1, 2));
    let verified = transform(setup, &a, &lambda)? == s_prime();
    Ok(SplitTransfer { a, lambda, verified })
}

/// `A^-1 xi A`, reduced; diagonal when `A` moves `T(F)` to the diagonal torus.
pub fn conjugated_xi(setup: &BesselSetup, a: &SMatrix) -> Result<SMatrix, CosetError> {
    let rel = relations(setup);
    let det = (&(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])).reduce(&rel).map_err(|_| CosetError::NotInvertible)?;
    let di = det.inv().map_err(|_| CosetError::NotInvertible)?;
    let ainv = m2(&di * &a[1][1], -&(&di * &a[0][1]), -&(&di * &a[1][0]), &di * &a[0][0]);
    let h = RatFunc::from_rational(rat(setup.b, 2));
    let xi = m2(h.clone(), int(setup.c), int(-setup.a), -&h);
    reduce(&smul(&smul(&ainv, &xi), a), &rel)
}

/// Whether some entry involves `sqrt_d`.
pub fn mentions_sqrt_d(m: &SMatrix) -> bool {
    m.iter().flatten().any(|x| x.num().contains(Symbol::SqrtD) || x.den().contains(Symbol::SqrtD))
}
