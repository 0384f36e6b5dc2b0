//! Reduced rational functions: `num / den` with `gcd(num, den) = 1` and a
//! monic denominator. Structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::gcd::gcd;
use crate::poly::{Monomial, Poly};
use crate::symbol::Symbol;
use crate::{Rational, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Build and reduce `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce_parts(num, den))
    }

    fn reduce_parts(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFunc { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::normalize(num, den)
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn var(s: Symbol) -> Self {
        Self::from_poly(Poly::var(s))
    }

    /// `s^k` for any integer `k`.
    pub fn var_pow(s: Symbol, k: i32) -> Self {
        let m = Poly::term(Monomial::var(s, k.unsigned_abs()), Rational::one());
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc { num: Poly::one(), den: m }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn support(&self) -> u16 {
        self.num.support() | self.den.support()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.support() & (1 << s.index()) != 0
    }

    /// Total number of stored terms, a size measure for pivoting.
    pub fn num_terms(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<Self, ScalarError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok(RatFunc { num: base.num.pow(k.unsigned_abs()), den: base.den.pow(k.unsigned_abs()) }
            .renormalized())
    }

    fn renormalized(self) -> Self {
        Self::normalize(self.num, self.den)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitute a rational function for a symbol.
    pub fn subs(&self, s: Symbol, v: &RatFunc) -> Result<Self, ScalarError> {
        if !self.contains(s) {
            return Ok(self.clone());
        }
        let n = subs_poly(&self.num, s, v);
        let d = subs_poly(&self.den, s, v);
        n.checked_div(&d)
    }

    /// Evaluate a symbol at a rational value.
    pub fn eval(&self, s: Symbol, v: &Rational) -> Result<Self, ScalarError> {
        if !self.contains(s) {
            return Ok(self.clone());
        }
        let c = Poly::constant(v.clone());
        RatFunc::new(self.num.subs(s, &c), self.den.subs(s, &c))
    }

    /// Apply rewrite relations to numerator and denominator, rationalizing
    /// a denominator that stays linear in a square-rewritten symbol.
    pub fn reduce(&self, rel: &Relations) -> Result<Self, ScalarError> {
        let mut n = rel.reduce_poly(&self.num);
        let mut d = rel.reduce_poly(&self.den);
        for (s, _) in &rel.squares {
            if d.contains(*s) {
                let c = d.negate_var(*s);
                n = rel.reduce_poly(&(&n * &c));
                d = rel.reduce_poly(&(&d * &c));
            }
        }
        RatFunc::new(n, d)
    }
}

fn subs_poly(p: &Poly, s: Symbol, v: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    for c in p.coeffs_in(s).iter().rev() {
        acc = &(&acc * v) + &RatFunc::from_poly(c.clone());
    }
    acc
}

/// Rewrite rules `s^2 -> replacement`, with the replacement free of `s`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Relations {
    squares: Vec<(Symbol, Poly)>,
}

impl Relations {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_square(mut self, s: Symbol, replacement: Poly) -> Self {
        assert!(!replacement.contains(s), "replacement must not contain the symbol");
        self.squares.retain(|(t, _)| *t != s);
        self.squares.push((s, replacement));
        self
    }

    /// `sqrt_d^2 = d`.
    pub fn sqrt_d(d: Rational) -> Self {
        Self::new().with_square(Symbol::SqrtD, Poly::constant(d))
    }

    /// `gamma^2 = 1`.
    pub fn gamma_unit() -> Self {
        Self::new().with_square(Symbol::Gamma, Poly::one())
    }

    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        let mut out = p.clone();
        for (s, rep) in &self.squares {
            out = out.reduce_power(*s, 2, rep);
        }
        out
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let plain_num = self.num.num_terms() == 1
            && self.num.terms().all(|(_, c)| c.is_integer());
        if !plain_num {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let (m, c) = self.den.leading().unwrap();
        let bare = self.den.num_terms() == 1
            && c.is_one()
            && m.0.iter().filter(|&&e| e > 0).count() == 1;
        if bare {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num + &o.num;
            if self.den.is_one() {
                return RatFunc { num: n, den: Poly::one() };
            }
            return RatFunc::reduce_parts(n, self.den.clone());
        }
        if self.den.is_one() {
            let n = &(&self.num * &o.den) + &o.num;
            return RatFunc { num: n, den: o.den.clone() };
        }
        if o.den.is_one() {
            let n = &self.num + &(&o.num * &self.den);
            return RatFunc { num: n, den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let n = &(&self.num * &d1) + &(&o.num * &b1);
        if n.is_zero() {
            return RatFunc::zero();
        }
        let den = &self.den * &d1;
        if g.is_one() {
            return RatFunc::normalize(n, den);
        }
        let g2 = gcd(&n, &g);
        if g2.is_one() {
            RatFunc::normalize(n, den)
        } else {
            RatFunc::normalize(n.div_exact(&g2).unwrap(), den.div_exact(&g2).unwrap())
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: &self.num * &o.num, den: Poly::one() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        RatFunc::normalize(&a * &c, &b * &d)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero, like integer division.
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, o: RatFunc) -> RatFunc {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::from_rational(c)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}
