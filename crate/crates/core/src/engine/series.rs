//! Generating series of the main tower `m -> B(h(l,m))`.

use bessel_scalar::{int, q, series_expand, sym, Scalar, ScalarError, Symbol, TruncatedSeries};

use crate::case::LCase;
use crate::catalog::BesselCharacter;

/// The constant `kappa` in the numerator of the generating series.
pub fn kappa(ch: &BesselCharacter, lambda: &Scalar, mu: &Scalar) -> Scalar {
    if ch.m0 > 0 {
        return Scalar::zero();
    }
    let q = q();
    match ch.case {
        LCase::Inert => mu / &(&q + &int(1)),
        LCase::Ramified => ch.lam_pi_l() * lambda,
        LCase::Split => {
            let s = ch.lam_10() + ch.lam_01();
            &(&(&(&q * lambda) * &s) - mu) / &(&q - &int(1))
        }
    }
}

/// `B(h(l,m0))` under the normalization `B(h(0,m0)) = 1`: `(lambda q^-3)^l`.
pub fn main_tower_start(l: u32, lambda: &Scalar) -> Result<Scalar, ScalarError> {
    let f = lambda * &q().pow(-3)?;
    f.pow(l as i32)
}

/// Coefficients of `Y^0 .. Y^order` of `sum_m B(h(l,m)) Y^m`, normalized by
/// `B(h(0,m0)) = 1`.
pub fn main_tower_series(
    l: u32,
    order: usize,
    ch: &BesselCharacter,
    lambda: &Scalar,
    mu: &Scalar,
) -> Result<TruncatedSeries, ScalarError> {
    let m0 = ch.m0 as usize;
    let q = q();
    let y = sym(Symbol::Y);
    let q4inv = q.pow(-4)?;
    let num = &int(1) - &(&(&kappa(ch, lambda, mu) * &q4inv) * &y);
    let den = &(&int(1) - &(&(mu * &q4inv) * &y)) + &(&(&(&(lambda * lambda) * &q.pow(-7)?) * &ch.lam_pi) * &(&y * &y));
    let start = main_tower_start(l, lambda)?;
    if order < m0 {
        return TruncatedSeries::zero(Symbol::Y, order);
    }
    let f = &num / &den;
    let s = series_expand(&f, Symbol::Y, order - m0)?;
    let mut coeffs = vec![Scalar::zero(); m0];
    coeffs.extend(s.coeffs().iter().map(|c| c * &start));
    TruncatedSeries::new(Symbol::Y, coeffs)
}

/// `q^4 c[m+2] - mu c[m+1] + lambda^2 q^-3 Lambda(varpi) c[m] = 0` for
/// `m0 <= m <= order - 2`.
pub fn check_two_step_recursion(series: &TruncatedSeries, lambda: &Scalar, mu: &Scalar, lam_pi: &Scalar, m0: u32) -> bool {
    let q = q();
    let q4 = q.pow(4).unwrap();
    let c2 = &(&(lambda * lambda) * &q.pow(-3).unwrap()) * lam_pi;
    let c = series.coeffs();
    let m0 = m0 as usize;
    if c.len() < 3 {
        return true;
    }
    (m0..=c.len() - 3).all(|m| (&(&(&q4 * &c[m + 2]) - &(mu * &c[m + 1])) + &(&c2 * &c[m])).is_zero())
}

/// `next = lambda q^-3 * prev` coefficientwise.
pub fn check_l_shift(prev: &TruncatedSeries, next: &TruncatedSeries, lambda: &Scalar) -> bool {
    let f = lambda * &q().pow(-3).unwrap();
    prev.coeffs().len() == next.coeffs().len()
        && prev.coeffs().iter().zip(next.coeffs()).all(|(a, b)| (&(a * &f) - b).is_zero())
}
