//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so the map
//! order is the lexicographic monomial order with `r` most significant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::symbol::{Symbol, NSYM};
use crate::Rational;

/// Exponent vector over the symbol alphabet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; NSYM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYM])
    }

    pub fn var(s: Symbol, k: u32) -> Self {
        let mut e = [0; NSYM];
        e[s.index()] = k;
        Monomial(e)
    }

    pub fn exp(&self, s: Symbol) -> u32 {
        self.0[s.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= b;
        }
        Some(Monomial(e))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Bitmask of symbols with a positive exponent.
    pub fn support(&self) -> u16 {
        let mut m = 0u16;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in Symbol::PRINT_ORDER {
            let e = self.exp(s);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", s)?;
            } else {
                write!(f, "{}^{}", s, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial: map from monomial to nonzero rational coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Rational::from_integer(n.into()))
    }

    pub fn var(s: Symbol) -> Self {
        Poly::term(Monomial::var(s, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degree(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    /// Bitmask of symbols occurring in some term.
    pub fn support(&self) -> u16 {
        self.terms.keys().fold(0, |acc, m| acc | m.support())
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.support() & (1 << s.index()) != 0
    }

    /// Gcd of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| acc.gcd(m)),
        }
    }

    /// Coefficients with respect to `s`: `self = sum_k coeffs[k] * s^k`.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree(s) as usize + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let k = m.exp(s) as usize;
            let mut e = *m;
            e.0[s.index()] = 0;
            out[k].terms.insert(e, c.clone());
        }
        out
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(s: Symbol, coeffs: &[Poly]) -> Poly {
        let mut p = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(s, k as u32);
            for (e, v) in &c.terms {
                p.add_term(e.mul(&m), v.clone());
            }
        }
        p
    }

    /// Substitute a polynomial for a symbol.
    pub fn subs(&self, s: Symbol, value: &Poly) -> Poly {
        if !self.contains(s) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(s);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Replace `s^k` by `replacement` until every exponent of `s` is below `k`.
    pub fn reduce_power(&self, s: Symbol, k: u32, replacement: &Poly) -> Poly {
        assert!(k > 0);
        if self.degree(s) < k {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            if e < k {
                out.add_term(*m, c.clone());
                continue;
            }
            let mut base = *m;
            base.0[s.index()] = e % k;
            let t = replacement.pow(e / k).mul_monomial(&base, c);
            out = &out + &t;
        }
        out
    }

    /// Sign flip of `s` (used for conjugating by `sqrt_d -> -sqrt_d`).
    pub fn negate_var(&self, s: Symbol) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.exp(s) % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone())).unwrap();
        if d.num_terms() == 1 {
            let inv = dc.recip();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(&dm)?, c * &inv);
            }
            return Some(Poly { terms });
        }
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = rc * &inv;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Evaluate a symbol at a rational.
    pub fn eval(&self, s: Symbol, v: &Rational) -> Poly {
        self.subs(s, &Poly::constant(v.clone()))
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    /// Lcm of coefficient denominators over gcd of numerators, so that
    /// `self * scalar` has coprime integer coefficients.
    pub fn integer_normalizer(&self) -> Rational {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        if g.is_zero() {
            return Rational::one();
        }
        Rational::new(l, g.abs())
    }

    /// True if the leading coefficient is negative.
    pub fn is_negative_leading(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
