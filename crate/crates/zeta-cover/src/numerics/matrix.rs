//! Dense complex Hermitian matrix storage.

use num_complex::Complex64;

use crate::{Error, Result};

/// Relative tolerance for conjugate-symmetry validation.
const HERMITIAN_TOL: f64 = 1e-14;

/// A dense `dim × dim` complex matrix intended to be Hermitian.
///
/// Builders (Laplacian assembly, tests) write entries directly with
/// [`add`](Self::add)/[`set`](Self::set); consumers that require exact
/// conjugate symmetry call [`validate_hermitian`](Self::validate_hermitian),
/// which checks every pair against `1e-14 · max|entry|`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// The zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Build from explicit rows, validating shape and Hermitian symmetry.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = HermitianMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has length {}, expected {dim}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m.validate_hermitian()?;
        Ok(m)
    }

    /// Build a real symmetric matrix from `f64` rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        HermitianMatrix::from_rows(&complex)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    /// Add `v` to entry `(i, j)` only; the caller keeps symmetry.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] += v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A − A†‖_max ≤ 1e-14 · max|entry|`, with real diagonal.
    pub fn validate_hermitian(&self) -> Result<()> {
        let scale = self.max_abs();
        let tol = HERMITIAN_TOL * scale;
        for i in 0..self.dim {
            if self.get(i, i).im.abs() > tol {
                return Err(Error::NonHermitian);
            }
            for j in (i + 1)..self.dim {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return Err(Error::NonHermitian);
                }
            }
        }
        Ok(())
    }

    /// Flat row-major view of the entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }
}
