use bessel_scalar::{apply_sparse, kernel, kernel_sparse, parse_scalar, rat, RatFunc, Rational};

fn s(x: &str) -> RatFunc {
    parse_scalar(x).unwrap()
}

fn r(n: i64) -> Rational {
    rat(n, 1)
}

#[test]
fn identity_has_trivial_kernel() {
    let m = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
    assert!(kernel(&m).is_empty());
}

#[test]
fn rank_one() {
    let m = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
    let k = kernel(&m);
    assert_eq!(k.len(), 1);
    assert_eq!(&k[0][0] + &k[0][1], r(0));
}

#[test]
fn single_symbolic_relation() {
    let m = vec![vec![s("r^2"), s("r^4")]];
    let k = kernel(&m);
    assert_eq!(k.len(), 1);
    // Proportional to (q, -1).
    let ratio = &k[0][0] / &k[0][1];
    assert_eq!(ratio, s("-r^2"));
}

#[test]
fn symbolic_matrix_kernel_is_annihilated() {
    let m = vec![
        vec![s("r"), s("alpha"), s("1"), s("0")],
        vec![s("gamma"), s("0"), s("r^2 - 1"), s("alpha*gamma")],
        vec![s("r + gamma"), s("alpha"), s("r^2"), s("alpha*gamma")],
    ];
    let k = kernel(&m);
    assert_eq!(k.len(), 2);
    let rows: Vec<Vec<(usize, RatFunc)>> = m
        .iter()
        .map(|row| row.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    for v in &k {
        assert!(apply_sparse(&rows, v).iter().all(|x| x.is_zero()));
    }
}

#[test]
fn sparse_rational_chain() {
    // x_{i+1} = 3 x_i for i < 9, ten unknowns: one-dimensional kernel.
    let rows: Vec<Vec<(usize, Rational)>> =
        (0..9).map(|i| vec![(i, r(3)), (i + 1, r(-1))]).collect();
    let k = kernel_sparse(&rows, 10);
    assert_eq!(k.len(), 1);
    let v = &k[0];
    for i in 0..9 {
        assert_eq!(&v[i + 1], &(&v[i] * r(3)));
    }
    assert!(apply_sparse(&rows, v).iter().all(|x| *x == r(0)));
}
