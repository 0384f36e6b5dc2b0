//! Truncated power series in `X` or `Y` with rational-function coefficients.

use std::fmt;

use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::symbol::Symbol;
use crate::ScalarError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    variable: Symbol,
    coeffs: Vec<RatFunc>,
}

impl TruncatedSeries {
    pub fn new(variable: Symbol, coeffs: Vec<RatFunc>) -> Result<Self, ScalarError> {
        if !matches!(variable, Symbol::X | Symbol::Y) {
            return Err(ScalarError::BadSeriesVariable(variable));
        }
        if coeffs.is_empty() {
            return Err(ScalarError::EmptySeries);
        }
        Ok(TruncatedSeries { variable, coeffs })
    }

    pub fn zero(variable: Symbol, order: usize) -> Result<Self, ScalarError> {
        Self::new(variable, vec![RatFunc::zero(); order + 1])
    }

    pub fn variable(&self) -> Symbol {
        self.variable
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &RatFunc {
        &self.coeffs[k]
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.variable, o.variable, "series in different variables");
        assert_eq!(self.coeffs.len(), o.coeffs.len(), "series of different order");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { variable: self.variable, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { variable: self.variable, coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|k| {
                let mut acc = RatFunc::zero();
                for j in 0..=k {
                    if !self.coeffs[j].is_zero() && !o.coeffs[k - j].is_zero() {
                        acc = &acc + &(&self.coeffs[j] * &o.coeffs[k - j]);
                    }
                }
                acc
            })
            .collect();
        TruncatedSeries { variable: self.variable, coeffs }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        TruncatedSeries { variable: self.variable, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `var^k`, dropping terms past the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![RatFunc::zero(); n];
        for i in 0..n.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        TruncatedSeries { variable: self.variable, coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str("]")
    }
}

/// Power-series expansion of `f` in `var` up to and including `var^order`.
pub fn series_expand(f: &RatFunc, var: Symbol, order: usize) -> Result<TruncatedSeries, ScalarError> {
    if !matches!(var, Symbol::X | Symbol::Y) {
        return Err(ScalarError::BadSeriesVariable(var));
    }
    let num = f.num().coeffs_in(var);
    let den = f.den().coeffs_in(var);
    let d0 = match den.first() {
        Some(d) if !d.is_zero() => RatFunc::from_poly(d.clone()),
        _ => return Err(ScalarError::NotExpandable),
    };
    let den: Vec<RatFunc> = den.into_iter().map(RatFunc::from_poly).collect();
    let d0_inv = d0.inv()?;
    let mut c: Vec<RatFunc> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.get(k).cloned().map(RatFunc::from_poly).unwrap_or_else(|| RatFunc::from_poly(Poly::zero()));
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            if !den[j].is_zero() && !c[k - j].is_zero() {
                acc = &acc - &(&den[j] * &c[k - j]);
            }
        }
        c.push(&acc * &d0_inv);
    }
    TruncatedSeries::new(var, c)
}
