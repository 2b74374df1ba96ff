//! Dense numerical kernel: Hermitian eigenvalues, exact integer
//! determinants, adaptive quadrature, and log–log power fits.
//!
//! Sizes here are small (graph Laplacians and their covers, a few hundred
//! rows at most), so the solvers favor robustness and reproducibility over
//! asymptotic speed: cyclic Jacobi instead of tridiagonalization, Bareiss
//! elimination over big integers instead of floating LU, Gauss–Legendre
//! panels instead of sparse-aware schemes.

mod eigen;
mod fit;
mod intdet;
mod matrix;
mod quadrature;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, EigenDecomposition, Spectrum, DEFAULT_ZERO_TOL_REL};
pub use fit::{fit_power_exponent, PowerFit};
pub use intdet::{integer_determinant, IntegerMatrix};
pub use matrix::HermitianMatrix;
pub use quadrature::{integrate_adaptive, QuadResult, SingularEnds};
