//! Multivariate polynomial gcd over the rationals.
//!
//! Variables present in only one argument are eliminated by taking the gcd
//! with all coefficients in that variable. Otherwise the gcd is interpolated
//! from images at integer points, one variable at a time, with
//! leading-coefficient scaling, and checked by exact division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::poly::{Monomial, Poly};
use crate::symbol::Symbol;
use crate::Rational;

/// Monic gcd. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a1 = strip(a, &ma);
    let b1 = strip(b, &mb);
    let g = gcd_core(&a1, &b1);
    let one = num_traits::One::one();
    g.mul_monomial(&mg, &one).monic()
}

fn strip(p: &Poly, m: &crate::poly::Monomial) -> Poly {
    if m.is_one() {
        p.clone()
    } else {
        p.div_exact(&Poly::term(*m, num_traits::One::one())).expect("monomial content divides")
    }
}

fn lowest_symbol(mask: u16) -> Symbol {
    Symbol::ALL[mask.trailing_zeros() as usize]
}

fn gcd_core(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        // Monomial content was stripped, so a single term is a constant up to units.
        return Poly::one();
    }
    let sa = a.support();
    let sb = b.support();
    if sa != sb {
        let diff = sa ^ sb;
        let v = lowest_symbol(diff);
        let (x, y) = if sa & (1 << v.index()) != 0 { (a, b) } else { (b, a) };
        let mut cs: Vec<Poly> = x.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
        cs.sort_by_key(|c| c.num_terms());
        let mut g = y.clone();
        for c in &cs {
            g = gcd(&g, c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        return g;
    }
    // Degree of the gcd in each variable is bounded by the degree of the gcd
    // of univariate images. A zero bound means the gcd only involves the
    // contents with respect to that variable.
    let mut vars: Vec<Symbol> = Symbol::ALL.iter().copied().filter(|s| sa & (1 << s.index()) != 0).collect();
    vars.sort_by_key(|s| a.degree(*s).max(b.degree(*s)));
    let mut bounds = Vec::with_capacity(vars.len());
    for &v in &vars {
        let bound = image_degree(a, b, v);
        if bound == Some(0) {
            let ca = content(&a.coeffs_in(v));
            let cb = content(&b.coeffs_in(v));
            return gcd(&ca, &cb);
        }
        bounds.push(bound);
    }
    // Interpolate in the low-degree variables; the highest-degree one is
    // left for the univariate images.
    let mut ivars = vars.clone();
    ivars.reverse();
    let v = vars[0];
    let pa = a.coeffs_in(v);
    let pb = b.coeffs_in(v);
    let (pa, pb) = if pa.len() < pb.len() { (pb, pa) } else { (pa, pb) };
    if bounds[0] == Some(pb.len() as u32 - 1) {
        // The smaller primitive part is the only candidate of full degree.
        let cb = content(&pb);
        let cand = Poly::from_coeffs_in(v, &div_all(&pb, &cb));
        let other = Poly::from_coeffs_in(v, &pa);
        if other.div_exact(&cand).is_some() {
            let c = gcd(&content(&pa), &cb);
            return (&c * &cand).monic();
        }
    }
    interpolate(a, b, &ivars).monic()
}

/// Lexicographic key of a monomial over `vars`.
fn key(m: &Monomial, vars: &[Symbol]) -> Vec<u32> {
    vars.iter().map(|s| m.exp(*s)).collect()
}

/// `p` at `w = t`.
fn eval_at(p: &Poly, w: Symbol, t: &Rational) -> Poly {
    Poly::from_terms(p.terms().map(|(m, c)| {
        let mut e = *m;
        e.0[w.index()] = 0;
        (e, c * Pow::pow(t, m.exp(w)))
    }))
}

/// Coefficients of `p` over the monomials in `rest`, each a polynomial in `w`,
/// in increasing lexicographic order.
fn w_coeffs(p: &Poly, rest: &[Symbol], w: Symbol) -> Vec<Poly> {
    let mut groups: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        groups.entry(key(m, rest)).or_default().add_term(Monomial::var(w, m.exp(w)), c.clone());
    }
    groups.into_values().collect()
}

/// Gcd of `a` and `b`, whose variables are among `vars`, with leading
/// coefficient 1 in the lexicographic order of `vars`. Dense evaluation and
/// interpolation in the last variable, checked by division.
fn interpolate(a: &Poly, b: &Poly, vars: &[Symbol]) -> Poly {
    if a.is_zero() || b.is_zero() {
        return lex_monic(if a.is_zero() { b } else { a }, vars);
    }
    if a.is_constant() || b.is_constant() || vars.is_empty() {
        return Poly::one();
    }
    let w = *vars.last().unwrap();
    if vars.len() == 1 {
        let g = univariate_gcd(dense(a, w), dense(b, w));
        let g = Poly::from_coeffs_in(w, &g.into_iter().map(Poly::constant).collect::<Vec<_>>());
        return lex_monic(&g, vars);
    }
    let rest = &vars[..vars.len() - 1];
    let w_content = |p: &Poly| {
        w_coeffs(p, rest, w).iter().fold(Poly::zero(), |g, c| if g.is_one() { g } else { interpolate(&g, c, &[w]) })
    };
    let (ca, cb) = (w_content(a), w_content(b));
    let c = interpolate(&ca, &cb, &[w]);
    let a1 = a.div_exact(&ca).expect("content divides");
    let b1 = b.div_exact(&cb).expect("content divides");
    let lca = w_coeffs(&a1, rest, w).pop().unwrap();
    let lcb = w_coeffs(&b1, rest, w).pop().unwrap();
    let glc = interpolate(&lca, &lcb, &[w]);
    let bound = (a1.degree(w).min(b1.degree(w)) + glc.degree(w)) as usize;

    let mut h = Poly::zero();
    let mut lead: Option<Vec<u32>> = None;
    let mut nodes: Vec<Rational> = Vec::new();
    let mut basis = Poly::one();
    let mut t = 0i64;
    loop {
        t += 1;
        let tr = Rational::from_integer(BigInt::from(t));
        let g_t = eval_at(&glc, w, &tr).as_constant().expect("univariate in w");
        if g_t.is_zero()
            || eval_at(&lca, w, &tr).is_zero()
            || eval_at(&lcb, w, &tr).is_zero()
        {
            continue;
        }
        let img = interpolate(&eval_at(&a1, w, &tr), &eval_at(&b1, w, &tr), rest);
        if img.is_one() {
            return lex_monic(&c, vars);
        }
        let lm = img.terms().map(|(m, _)| key(m, rest)).max().unwrap();
        let img = img.scale(&g_t);
        let stable;
        match lead.as_ref().map(|l| lm.cmp(l)) {
            Some(std::cmp::Ordering::Greater) => continue,
            Some(std::cmp::Ordering::Equal) => {
                let diff = &img - &eval_at(&h, w, &tr);
                stable = diff.is_zero();
                if !stable {
                    let nt = eval_at(&basis, w, &tr).as_constant().expect("univariate in w");
                    h = &h + &(&basis * &diff).scale(&nt.recip());
                }
            }
            _ => {
                stable = false;
                h = img;
                lead = Some(lm);
                nodes.clear();
                basis = Poly::one();
            }
        }
        basis = &basis * &(&Poly::var(w) - &Poly::constant(tr.clone()));
        nodes.push(tr);
        // The bound is often far above the true degree, so also try as soon
        // as a new point leaves the interpolant unchanged.
        if nodes.len() > bound || stable {
            let cand = h.div_exact(&w_content(&h)).expect("content divides");
            if a1.div_exact(&cand).is_some() && b1.div_exact(&cand).is_some() {
                return lex_monic(&(&c * &cand), vars);
            }
        }
    }
}

/// Coefficients of a polynomial in `w` only.
fn dense(p: &Poly, w: Symbol) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree(w) as usize + 1];
    for (m, c) in p.terms() {
        out[m.exp(w) as usize] += c;
    }
    out
}

fn lex_monic(p: &Poly, vars: &[Symbol]) -> Poly {
    match p.terms().max_by_key(|(m, _)| key(m, vars)) {
        Some((_, c)) => p.scale(&c.recip()),
        None => Poly::zero(),
    }
}

fn content(cs: &[Poly]) -> Poly {
    let mut sorted: Vec<&Poly> = cs.iter().filter(|c| !c.is_zero()).collect();
    sorted.sort_by_key(|c| c.num_terms());
    let mut g = Poly::zero();
    for c in sorted {
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn div_all(cs: &[Poly], d: &Poly) -> Vec<Poly> {
    if d.is_one() {
        return cs.to_vec();
    }
    cs.iter().map(|c| c.div_exact(d).expect("content divides")).collect()
}

/// Evaluation points for the variables other than the main one.
const POINTS: [i64; crate::symbol::NSYM] = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Degree of `gcd(a(pt), b(pt))` in `v`, where `pt` fixes all other
/// variables. `None` if the evaluation point kills a leading coefficient.
fn image_degree(a: &Poly, b: &Poly, v: Symbol) -> Option<u32> {
    let ia = eval_univariate(a, v);
    let ib = eval_univariate(b, v);
    if ia.len() != a.degree(v) as usize + 1 || ib.len() != b.degree(v) as usize + 1 {
        return None;
    }
    Some(univariate_gcd(ia, ib).len() as u32 - 1)
}

fn eval_univariate(p: &Poly, v: Symbol) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = c.clone();
        for s in Symbol::ALL {
            let e = m.exp(s);
            if s != v && e > 0 {
                val *= Rational::from_integer(BigInt::from(POINTS[s.index()]).pow(e));
            }
        }
        out[m.exp(v) as usize] += val;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Euclid over the rationals; inputs nonzero, result nonempty.
fn univariate_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = b.last().unwrap().recip();
        for c in b.iter_mut() {
            *c *= &inv;
        }
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let f = a.last().unwrap() / &lb;
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[j + shift] -= &f * bj;
            }
            a.pop();
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}
