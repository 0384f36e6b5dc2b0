//! Right kernels of sparse matrices over an exact field.
//!
//! Elimination is fraction-free: a row is updated as `p*row - a*pivot_row`
//! and then rescaled by [`Field::normalize_row`], which for rationals keeps
//! rows as primitive integer vectors and for rational functions keeps them
//! as coprime polynomials.

use std::collections::HashMap;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::gcd::gcd;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::Rational;

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics when `o` is zero.
    fn div(&self, o: &Self) -> Self;
    /// Size measure used to rank pivot candidates.
    fn size(&self) -> usize;
    /// Rescale a row by a nonzero factor to keep entries small.
    fn normalize_row(_row: &mut [(usize, Self)]) {}
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!Zero::is_zero(o), "division by zero");
        self / o
    }
    fn size(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
    fn normalize_row(row: &mut [(usize, Self)]) {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in row.iter() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        if g.is_zero() {
            return;
        }
        let f = Rational::new(l, g.abs());
        if !f.is_one() {
            for (_, c) in row.iter_mut() {
                *c = &*c * &f;
            }
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn size(&self) -> usize {
        self.num_terms()
    }
    fn normalize_row(row: &mut [(usize, Self)]) {
        if row.is_empty() {
            return;
        }
        // Clear denominators, then divide out the common numerator factor.
        let mut l = Poly::one();
        for (_, c) in row.iter() {
            if !c.den().is_one() {
                let g = gcd(&l, c.den());
                l = &l * &c.den().div_exact(&g).unwrap();
            }
        }
        let mut nums: Vec<Poly> = Vec::with_capacity(row.len());
        for (_, c) in row.iter() {
            let f = l.div_exact(c.den()).unwrap();
            nums.push(&f * c.num());
        }
        let mut order: Vec<usize> = (0..nums.len()).collect();
        order.sort_by_key(|&i| nums[i].num_terms());
        let mut g = Poly::zero();
        for &i in &order {
            g = gcd(&g, &nums[i]);
            if g.is_constant() {
                break;
            }
        }
        let g = if g.is_constant() {
            // Only rescale the rational content.
            Poly::constant(nums[order[0]].leading_coeff())
        } else {
            g
        };
        for ((_, c), n) in row.iter_mut().zip(nums) {
            *c = RatFunc::from_poly(n.div_exact(&g).unwrap());
        }
    }
}

type Row<T> = Vec<(usize, T)>;

fn row_get<T>(row: &Row<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `p*row - a*piv`, dropping zeros.
fn combine<T: Field>(row: &Row<T>, p: &T, a: &T, piv: &Row<T>) -> Row<T> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = piv.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, p.mul(&row[i - 1].1))
        } else if cj < ci {
            j += 1;
            (cj, a.mul(&piv[j - 1].1).neg())
        } else {
            i += 1;
            j += 1;
            (ci, p.mul(&row[i - 1].1).sub(&a.mul(&piv[j - 1].1)))
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Basis of the right kernel of a sparse matrix given by rows of
/// `(column, value)` pairs. An empty result means the kernel is zero.
pub fn kernel_sparse<T: Field>(rows: &[Row<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut active: Vec<Row<T>> = rows
        .iter()
        .map(|r| {
            let mut r: Row<T> = r.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
            r.sort_by_key(|(c, _)| *c);
            debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0), "duplicate column in row");
            T::normalize_row(&mut r);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let mut done: Vec<(usize, Row<T>)> = Vec::new();
    while !active.is_empty() {
        let mut colcount: HashMap<usize, usize> = HashMap::new();
        for r in &active {
            for (c, _) in r {
                *colcount.entry(*c).or_default() += 1;
            }
        }
        let mut best: Option<((usize, usize, usize), usize, usize)> = None;
        for (ri, r) in active.iter().enumerate() {
            for (c, v) in r {
                let key = (r.len(), colcount[c], v.size());
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, ri, *c));
                }
            }
        }
        let (_, ri, col) = best.unwrap();
        let prow = active.swap_remove(ri);
        let p = row_get(&prow, col).unwrap().clone();
        let eliminate = |r: &mut Row<T>| {
            if let Some(a) = row_get(r, col).cloned() {
                let mut n = combine(r, &p, &a, &prow);
                T::normalize_row(&mut n);
                *r = n;
            }
        };
        active.iter_mut().for_each(eliminate);
        active.retain(|r| !r.is_empty());
        done.iter_mut().for_each(|(_, r)| eliminate(r));
        done.push((col, prow));
    }
    let pivot_cols: std::collections::HashSet<usize> = done.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[f] = T::one();
        for (pc, r) in &done {
            if let Some(a) = row_get(r, f) {
                let p = row_get(r, *pc).unwrap();
                v[*pc] = a.div(p).neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// Basis of the right kernel of a dense matrix.
pub fn kernel<T: Field>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let rows: Vec<Row<T>> = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
        })
        .collect();
    kernel_sparse(&rows, ncols)
}

/// `m * v` for a sparse matrix.
pub fn apply_sparse<T: Field>(rows: &[Row<T>], v: &[T]) -> Vec<T> {
    rows.iter()
        .map(|r| r.iter().fold(T::zero(), |acc, (c, a)| acc.add(&a.mul(&v[*c]))))
        .collect()
}
