use bessel_scalar::{parse_scalar, series_expand, RatFunc, ScalarError, Symbol, TruncatedSeries};

fn s(x: &str) -> RatFunc {
    parse_scalar(x).unwrap()
}

fn coeffs(t: &TruncatedSeries) -> Vec<RatFunc> {
    t.coeffs().to_vec()
}

/// Independent expansion: write den = d0*(1 - t) and sum the geometric
/// series in t by repeated truncated multiplication.
fn naive_expand(f: &RatFunc, var: Symbol, order: usize) -> TruncatedSeries {
    let to_series = |p: &bessel_scalar::Poly| {
        let mut c = vec![RatFunc::zero(); order + 1];
        for (k, a) in p.coeffs_in(var).into_iter().enumerate() {
            if k <= order {
                c[k] = RatFunc::from_poly(a);
            }
        }
        TruncatedSeries::new(var, c).unwrap()
    };
    let num = to_series(f.num());
    let den = to_series(f.den());
    let d0 = den.coeff(0).clone();
    let one = TruncatedSeries::new(var, {
        let mut c = vec![RatFunc::zero(); order + 1];
        c[0] = RatFunc::one();
        c
    })
    .unwrap();
    let t = one.sub(&den.scale(&d0.inv().unwrap()));
    let mut inv = one.clone();
    let mut power = one.clone();
    for _ in 0..order {
        power = power.mul(&t);
        inv = inv.add(&power);
    }
    num.mul(&inv).scale(&d0.inv().unwrap())
}

#[test]
fn geometric() {
    let t = series_expand(&s("1/(1 - Y)"), Symbol::Y, 3).unwrap();
    assert_eq!(coeffs(&t), vec![s("1"); 4]);
    let t = series_expand(&s("1/(1 - Y)^2"), Symbol::Y, 2).unwrap();
    assert_eq!(coeffs(&t), vec![s("1"), s("2"), s("3")]);
}

#[test]
fn generating_function_shape() {
    // mu and lambda are generic stand-ins built from the symbol alphabet.
    let mu = "(alpha^2*gamma^2*(alpha + alpha^-1)*r^3)";
    let la = "(alpha*gamma*r^2)";
    let f = s(&format!("1/(1 - {mu}*r^-8*Y + {la}^2*r^-14*lam_pi*Y^2)"));
    let t = series_expand(&f, Symbol::Y, 2).unwrap();
    let expected = vec![
        s("1"),
        s(&format!("{mu}*r^-8")),
        s(&format!("{mu}^2*r^-16 - {la}^2*r^-14*lam_pi")),
    ];
    assert_eq!(coeffs(&t), expected);
    assert_eq!(t, naive_expand(&f, Symbol::Y, 2));
}

#[test]
fn agrees_with_naive_division() {
    for text in [
        "(1 - gamma*Y)/(1 - alpha*r*Y + r^3*Y^2)",
        "(r + Y^3)/(2 + alpha*Y)",
        "1/((1 - gamma*r^-1*X)^2)",
        "(X^2 - lam_pi)/(r - X*lam_10 - X^3*lam_01)",
    ] {
        let f = s(text);
        let var = if text.contains('X') { Symbol::X } else { Symbol::Y };
        assert_eq!(series_expand(&f, var, 6).unwrap(), naive_expand(&f, var, 6), "{text}");
    }
}

#[test]
fn not_expandable() {
    assert_eq!(series_expand(&s("1/Y"), Symbol::Y, 3), Err(ScalarError::NotExpandable));
    assert_eq!(series_expand(&s("1/(Y - Y^2)"), Symbol::Y, 3), Err(ScalarError::NotExpandable));
    assert_eq!(series_expand(&s("1/Y"), Symbol::R, 3), Err(ScalarError::BadSeriesVariable(Symbol::R)));
}

#[test]
fn shift_and_order() {
    let t = series_expand(&s("1/(1 - Y)"), Symbol::Y, 4).unwrap();
    assert_eq!(t.order(), 4);
    let u = t.shift(2);
    assert_eq!(coeffs(&u), vec![s("0"), s("0"), s("1"), s("1"), s("1")]);
}
