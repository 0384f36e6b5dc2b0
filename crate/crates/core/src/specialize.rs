//! Substitution of exact rationals for symbols.

use std::collections::BTreeMap;

use bessel_scalar::{Rational, Scalar, ScalarError, Symbol};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Specialization {
    values: BTreeMap<Symbol, Rational>,
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, s: Symbol, v: Rational) -> Self {
        self.values.insert(s, v);
        self
    }

    pub fn set(&mut self, s: Symbol, v: Rational) {
        self.values.insert(s, v);
    }

    pub fn get(&self, s: Symbol) -> Option<&Rational> {
        self.values.get(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Rational)> {
        self.values.iter()
    }

    pub fn apply(&self, x: &Scalar) -> Result<Scalar, ScalarError> {
        let mut out = x.clone();
        for (s, v) in &self.values {
            out = out.eval(*s, v)?;
        }
        Ok(out)
    }

    /// The value as a rational, if every symbol in `x` is specialized.
    pub fn rational(&self, x: &Scalar) -> Result<Option<Rational>, ScalarError> {
        Ok(self.apply(x)?.as_rational())
    }
}
