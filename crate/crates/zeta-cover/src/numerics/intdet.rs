//! Exact determinants of integer matrices via Bareiss elimination.
//!
//! Bareiss's fraction-free scheme keeps every intermediate value an exact
//! integer: the update `a[i][j] ← (a[i][j]·a[k][k] − a[i][k]·a[k][j]) / prev`
//! divides exactly by the previous pivot.  With `BigInt` entries there is no
//! overflow, so `det` of a reduced graph Laplacian — hence the spanning-tree
//! count — is exact at any size we can afford to store.

use num_bigint::BigInt;

use crate::{Error, Result};

fn zero() -> BigInt {
    BigInt::from(0)
}

fn one() -> BigInt {
    BigInt::from(1)
}

/// Dense square matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            data: vec![zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = IntegerMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has length {}, expected {dim}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.dim + j] += v;
    }

    /// The matrix with row and column `k` deleted.
    pub fn minor(&self, k: usize) -> IntegerMatrix {
        let n = self.dim;
        let mut out = IntegerMatrix::zeros(n - 1);
        let mut oi = 0;
        for i in 0..n {
            if i == k {
                continue;
            }
            let mut oj = 0;
            for j in 0..n {
                if j == k {
                    continue;
                }
                out.set(oi, oj, self.get(i, j).clone());
                oj += 1;
            }
            oi += 1;
        }
        out
    }
}

/// Exact determinant by fraction-free Gaussian elimination with row
/// pivoting.  The empty matrix has determinant 1.
pub fn integer_determinant(m: &IntegerMatrix) -> BigInt {
    let n = m.dim;
    if n == 0 {
        return one();
    }
    let mut a = m.data.clone();
    let mut sign = 1i8;
    let mut prev = one();
    let z = zero();
    for k in 0..n - 1 {
        if a[k * n + k] == z {
            match (k + 1..n).find(|&r| a[r * n + k] != z) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
            a[i * n + k] = zero();
        }
        prev = a[k * n + k].clone();
    }
    let det = a[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
