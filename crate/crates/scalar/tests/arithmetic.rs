use bessel_scalar::{
    gcd, parse_scalar, poly_arith, q, rat, sym, Poly, PolyOp, RatFunc, Relations, ScalarError, Symbol,
};

fn s(x: &str) -> RatFunc {
    parse_scalar(x).unwrap()
}

fn p(x: &str) -> Poly {
    let f = s(x);
    assert!(f.den().is_one(), "{x} is not a polynomial");
    f.num().clone()
}

#[test]
fn additive_inverse() {
    let rel = Relations::new();
    let r2 = p("r^2");
    let neg = poly_arith(PolyOp::Neg, &r2, &Poly::zero(), &rel);
    assert!(poly_arith(PolyOp::Add, &r2, &neg, &rel).is_zero());
}

#[test]
fn sqrt_d_rewrite() {
    let rel = Relations::sqrt_d(rat(-4, 1));
    let sd = Poly::var(Symbol::SqrtD);
    assert_eq!(poly_arith(PolyOp::Mul, &sd, &sd, &rel), Poly::from_int(-4));
    let cube = poly_arith(PolyOp::Mul, &(&sd * &sd), &sd, &rel);
    assert_eq!(cube, p("-4*sqrt_d"));
}

#[test]
fn difference_of_squares() {
    let rel = Relations::new();
    assert_eq!(poly_arith(PolyOp::Mul, &p("r + 1"), &p("r - 1"), &rel), p("r^2 - 1"));
}

#[test]
fn cancellation() {
    let qq = q();
    let one = RatFunc::one();
    assert_eq!(&(&(&qq * &qq) - &one) / &(&qq - &one), s("r^2 + 1"));

    let mu = s("alpha^2*gamma^2*(alpha + alpha^-1)*r^3");
    let y = sym(Symbol::Y);
    assert_eq!(&(&mu * &y) / &mu, y);

    let x = sym(Symbol::X);
    let r4x = &s("r^4") * &x;
    let a = &one - &r4x;
    let b = &one + &r4x;
    let c = &one - &(&r4x * &r4x);
    assert_eq!(&(&a * &b) / &c, one);
}

#[test]
fn division_by_zero() {
    assert_eq!(RatFunc::new(Poly::one(), Poly::zero()), Err(ScalarError::DivisionByZero));
    let zero_den = &p("r") - &p("r");
    assert_eq!(RatFunc::new(Poly::one(), zero_den), Err(ScalarError::DivisionByZero));
    assert_eq!(RatFunc::zero().inv(), Err(ScalarError::DivisionByZero));
}

#[test]
fn denominator_is_monic_and_reduced() {
    let f = RatFunc::new(p("6*r^2 - 6"), p("4*r + 4")).unwrap();
    assert_eq!(f, s("3/2*r - 3/2"));
    let g = RatFunc::new(p("r"), p("2*alpha*r + 4*r^2")).unwrap();
    assert_eq!(g.den().leading_coeff(), rat(1, 1));
    assert_eq!(g.to_string(), "(1/4)/(r + 1/2*alpha)");
    assert_eq!(s(&g.to_string()), g);
    assert!(gcd(g.num(), g.den()).is_one());
}

#[test]
fn multivariate_gcd() {
    let a = p("(alpha*r - gamma)*(r^2 + alpha)*(X - 1)");
    let b = p("(alpha*r - gamma)*(r^2 - alpha)*(X - 1)^2");
    assert_eq!(gcd(&a, &b), p("(alpha*r - gamma)*(X - 1)").monic());
    let c = p("(gamma*Y + r)^3*(alpha - 1)");
    let d = p("(gamma*Y + r)^2*(alpha + 1)");
    assert_eq!(gcd(&c, &d), p("(gamma*Y + r)^2").monic());
    assert!(gcd(&p("alpha + 1"), &p("r - 1")).is_one());
}

#[test]
fn canonical_text_round_trip() {
    let f = s("(3*r^2 - 1)/(r + 1)");
    assert_eq!(f.to_string(), "(3*r^2 - 1)/(r + 1)");
    for text in [
        "alpha*gamma*r^2",
        "-alpha*gamma",
        "(alpha^4*gamma^2*r^3 + alpha^2*gamma^2*r^3)/alpha",
        "-3/2*r^5 + 7",
        "1/(1 - 2*gamma*r^-1*X + X^2*r^-2)",
        "lam_piL*lam_pi - lam_10*lam_01 + sqrt_d*Y",
    ] {
        let f = s(text);
        assert_eq!(s(&f.to_string()), f, "round trip of {text}");
    }
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_scalar("r +"), Err(ScalarError::Parse(_))));
    assert!(matches!(parse_scalar("beta"), Err(ScalarError::Parse(_))));
    assert!(matches!(parse_scalar("(r"), Err(ScalarError::Parse(_))));
    assert_eq!(parse_scalar("r/(r - r)"), Err(ScalarError::DivisionByZero));
}

#[test]
fn rationalize_sqrt_d_denominator() {
    let rel = Relations::sqrt_d(rat(5, 1));
    let f = s("1/(1 + sqrt_d)").reduce(&rel).unwrap();
    assert_eq!(f, s("(sqrt_d - 1)/4"));
    let g = s("gamma^3/(2 - gamma)").reduce(&Relations::gamma_unit()).unwrap();
    assert_eq!(g, s("(2*gamma + 1)/3"));
    // 1 - gamma is a zero divisor once gamma^2 = 1.
    assert_eq!(s("1/(1 - gamma)").reduce(&Relations::gamma_unit()), Err(ScalarError::DivisionByZero));
}

#[test]
fn substitution() {
    let f = s("(alpha*r + 1)/(r^2 - alpha)");
    let g = f.eval(Symbol::R, &rat(3, 1)).unwrap().eval(Symbol::Alpha, &rat(2, 1)).unwrap();
    assert_eq!(g.as_rational(), Some(rat(1, 1)));
    let h = f.subs(Symbol::Alpha, &s("r^-1")).unwrap();
    assert_eq!(h, s("2/(r^2 - r^-1)"));
}
