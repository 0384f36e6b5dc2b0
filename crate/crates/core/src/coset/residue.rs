use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::md;

/// Square matrix with entries reduced mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueMatrix {
    n: usize,
    modulus: i64,
    entries: Vec<i64>,
}

impl ResidueMatrix {
    /// Row-major entries, reduced on construction.
    pub fn new(n: usize, modulus: i64, entries: Vec<i64>) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        ResidueMatrix { n, modulus, entries: entries.into_iter().map(|x| md(x, modulus)).collect() }
    }

    pub fn m2(modulus: i64, a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(2, modulus, vec![a, b, c, d])
    }

    pub fn identity(n: usize, modulus: i64) -> Self {
        Self::new(n, modulus, (0..n * n).map(|k| i64::from(k % (n + 1) == 0)).collect())
    }

    pub fn diag(modulus: i64, d: &[i64]) -> Self {
        let n = d.len();
        let mut e = vec![0; n * n];
        for (i, x) in d.iter().enumerate() {
            e[i * n + i] = *x;
        }
        Self::new(n, modulus, e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, o: &ResidueMatrix) -> ResidueMatrix {
        assert_eq!((self.n, self.modulus), (o.n, o.modulus), "shape or modulus mismatch");
        let n = self.n;
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] = (e[i * n + j] + a * o.entries[k * n + j]) % self.modulus;
                }
            }
        }
        ResidueMatrix { n, modulus: self.modulus, entries: e }
    }

    pub fn transpose(&self) -> ResidueMatrix {
        let n = self.n;
        let e = (0..n * n).map(|k| self.entries[(k % n) * n + k / n]).collect();
        ResidueMatrix { n, modulus: self.modulus, entries: e }
    }

    pub fn scale(&self, c: i64) -> ResidueMatrix {
        Self::new(self.n, self.modulus, self.entries.iter().map(|x| x * md(c, self.modulus)).collect())
    }

    /// Determinant mod the modulus, by cofactor expansion.
    pub fn det(&self) -> i64 {
        fn go(e: &[i64], n: usize, m: i64) -> i64 {
            if n == 1 {
                return e[0];
            }
            let mut acc = 0;
            for j in 0..n {
                let minor: Vec<i64> =
                    (1..n).flat_map(|i| (0..n).filter(move |&k| k != j).map(move |k| e[i * n + k])).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                acc = md(acc + s * e[j] * go(&minor, n - 1, m), m);
            }
            acc
        }
        go(&self.entries, self.n, self.modulus)
    }

    pub fn is_invertible(&self) -> bool {
        super::inv_mod(self.det(), self.modulus).is_some()
    }

    /// Inverse of a 2x2 matrix.
    pub fn inverse2(&self) -> Option<ResidueMatrix> {
        assert_eq!(self.n, 2);
        let di = super::inv_mod(self.det(), self.modulus)?;
        let [a, b, c, d] = [self.entries[0], self.entries[1], self.entries[2], self.entries[3]];
        Some(Self::new(2, self.modulus, vec![d * di, -b * di, -c * di, a * di]))
    }

    /// The same matrix read mod a divisor of the modulus.
    pub fn reduce(&self, modulus: i64) -> ResidueMatrix {
        assert!(self.modulus % modulus == 0, "{modulus} does not divide {}", self.modulus);
        Self::new(self.n, modulus, self.entries.clone())
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}] mod {}", rows.join(","), self.modulus)
    }
}

/// Serialized as the list of rows.
impl Serialize for ResidueMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for r in self.rows() {
            seq.serialize_element(&r)?;
        }
        seq.end()
    }
}

/// All of `GL2(Z/p)`.
pub fn gl2(p: i64) -> Vec<ResidueMatrix> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if md(a * d - b * c, p) != 0 {
                        out.push(ResidueMatrix::m2(p, a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

/// `[[0,1],[1,0]]`.
pub fn w(p: i64) -> ResidueMatrix {
    ResidueMatrix::m2(p, 0, 1, 1, 0)
}

/// `[[1,0],[u,1]]`.
pub fn lower(p: i64, u: i64) -> ResidueMatrix {
    ResidueMatrix::m2(p, 1, 0, u, 1)
}
