//! Unitary monodromy matrices and their eigenvalue angles.
//!
//! A rank-`n` monodromy assigns the generator of the deck group a unitary
//! `U ∈ U(n)`; the bundle Laplacian twists edge transport by `e^{iθρ}U^ρ`.
//! Every eigenvalue of `U` lies on the unit circle, `e^{iφ_j}`, and the
//! bottom band of the bundle Laplacian vanishes exactly at the angles
//! `θ ≡ −φ_j (mod 2π)` — one zero per eigenvalue when the `φ_j` are
//! distinct.
//!
//! Angles are extracted without a general normal-matrix solver: `U` is
//! normal, so its Hermitian and skew parts `C = (U + U†)/2`,
//! `S = (U − U†)/2i` commute and share an eigenbasis.  We diagonalize `C`
//! (its eigenvalues are `cos φ_j`), then within each near-degenerate
//! cosine cluster diagonalize the compression of `S` (eigenvalues
//! `sin φ_j`), and read off `φ_j = atan2(sin, cos)`.  The cluster step
//! matters: `φ` and `−φ` share a cosine but are different angles.
//!
//! The text format is either a diagonal shorthand or an explicit matrix:
//!
//! ```text
//! # diagonal: one phase (radians) per fiber dimension
//! diag 0.0 1.5707963267948966
//! ```
//!
//! ```text
//! # explicit: rank, then rank rows of comma-joined re,im entries
//! n 2
//! 0.0,0.0  1.0,0.0
//! 1.0,0.0  0.0,0.0
//! ```

use num_complex::Complex64;

use crate::numerics::{hermitian_eigen, HermitianMatrix};
use crate::{Error, Result};

const UNITARY_TOL: f64 = 1e-8;
/// Two cosines within this distance are treated as one eigenspace of `C`.
const CLUSTER_TOL: f64 = 1e-6;
/// Minimal circular separation for the angles to count as simple.
const SIMPLE_GAP: f64 = 1e-8;

/// A unitary matrix acting on the cover's fiber ℂ^n.
#[derive(Clone, Debug)]
pub struct Monodromy {
    rank: usize,
    /// Row-major entries.
    data: Vec<Complex64>,
}

impl Monodromy {
    /// The identity monodromy (trivial bundle) of the given rank.
    pub fn identity(rank: usize) -> Self {
        assert!(rank > 0, "monodromy rank must be positive");
        let mut data = vec![Complex64::new(0.0, 0.0); rank * rank];
        for i in 0..rank {
            data[i * rank + i] = Complex64::new(1.0, 0.0);
        }
        Monodromy { rank, data }
    }

    /// Diagonal monodromy `diag(e^{iφ_1}, …, e^{iφ_n})`.
    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidParameter("monodromy needs at least one phase".into()));
        }
        let rank = phases.len();
        let mut m = Monodromy::identity(rank);
        for (i, &phi) in phases.iter().enumerate() {
            m.data[i * rank + i] = Complex64::from_polar(1.0, phi);
        }
        Ok(m)
    }

    /// Build from explicit rows, validating squareness and unitarity.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidParameter("monodromy needs at least one row".into()));
        }
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidParameter("monodromy rows must form a square matrix".into()));
        }
        let data: Vec<Complex64> = rows.iter().flatten().copied().collect();
        let m = Monodromy { rank, data };
        m.check_unitary()?;
        Ok(m)
    }

    /// Parse the text format (see module docs).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, head) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 0, msg: "empty monodromy description".into() })?;
        let mut tok = head.split_whitespace();
        let m = match tok.next() {
            Some("diag") => {
                let phases = tok
                    .map(|s| {
                        s.parse::<f64>().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("bad phase `{s}`"),
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                if phases.is_empty() {
                    return Err(Error::Parse { line: line_no, msg: "diag needs phases".into() });
                }
                Monodromy::from_phases(&phases)?
            }
            Some("n") => {
                let rank: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .filter(|&r| r > 0)
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "expected `n <rank>` with rank ≥ 1".into(),
                    })?;
                if tok.next().is_some() {
                    return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() });
                }
                let mut rows = Vec::with_capacity(rank);
                for _ in 0..rank {
                    let (row_no, row) = lines.next().ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: format!("expected {rank} matrix rows"),
                    })?;
                    let entries = row
                        .split_whitespace()
                        .map(|s| parse_complex(s, row_no))
                        .collect::<Result<Vec<_>>>()?;
                    if entries.len() != rank {
                        return Err(Error::Parse {
                            line: row_no,
                            msg: format!("expected {rank} entries, found {}", entries.len()),
                        });
                    }
                    rows.push(entries);
                }
                Monodromy::from_rows(&rows)?
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `diag` or `n`, found `{other}`"),
                })
            }
            None => unreachable!("blank lines are filtered"),
        };
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "unexpected trailing content".into() });
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.rank + col]
    }

    /// `U^ρ`, with negative powers via the adjoint.
    pub fn power(&self, rho: i64) -> Monodromy {
        let base = if rho >= 0 { self.clone() } else { self.adjoint() };
        let mut acc = Monodromy::identity(self.rank);
        for _ in 0..rho.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    fn adjoint(&self) -> Monodromy {
        let n = self.rank;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                data[r * n + c] = self.data[c * n + r].conj();
            }
        }
        Monodromy { rank: n, data }
    }

    fn multiply(&self, other: &Monodromy) -> Monodromy {
        let n = self.rank;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.data[r * n + k] * other.data[k * n + c];
                }
                data[r * n + c] = acc;
            }
        }
        Monodromy { rank: n, data }
    }

    fn check_unitary(&self) -> Result<()> {
        let n = self.rank;
        let gram = self.adjoint().multiply(self);
        for r in 0..n {
            for c in 0..n {
                let expect = if r == c { 1.0 } else { 0.0 };
                if (gram.data[r * n + c] - expect).norm() > UNITARY_TOL {
                    return Err(Error::NonUnitary);
                }
            }
        }
        Ok(())
    }

    /// Eigenvalue angles `φ_j ∈ [0, 2π)` with multiplicity, ascending.
    pub fn angles(&self) -> Result<Vec<f64>> {
        let n = self.rank;
        let mut cos_part = HermitianMatrix::zeros(n);
        let mut sin_part = HermitianMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let u = self.data[r * n + c];
                let ut = self.data[c * n + r].conj();
                cos_part.set(r, c, 0.5 * (u + ut));
                sin_part.set(r, c, (u - ut) / Complex64::new(0.0, 2.0));
            }
        }
        let eig = hermitian_eigen(&cos_part)?;

        let mut angles = Vec::with_capacity(n);
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && eig.values[end] - eig.values[end - 1] < CLUSTER_TOL {
                end += 1;
            }
            let cluster: Vec<usize> = (start..end).collect();
            let cos_mean =
                cluster.iter().map(|&k| eig.values[k]).sum::<f64>() / cluster.len() as f64;
            // Compress the skew part onto the cluster's eigenspace and
            // diagonalize it there; its eigenvalues are the sines.
            let m = cluster.len();
            let mut compressed = HermitianMatrix::zeros(m);
            for (a, &ka) in cluster.iter().enumerate() {
                for (b, &kb) in cluster.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for x in 0..n {
                        for y in 0..n {
                            acc += eig.vector_entry(ka, x).conj()
                                * sin_part.get(x, y)
                                * eig.vector_entry(kb, y);
                        }
                    }
                    compressed.set(a, b, acc);
                }
            }
            symmetrize(&mut compressed);
            let sines = hermitian_eigen(&compressed)?;
            for j in 0..m {
                angles
                    .push(f64::atan2(sines.values[j], cos_mean).rem_euclid(std::f64::consts::TAU));
            }
            start = end;
        }
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(angles)
    }

    /// Like [`angles`](Self::angles), but insists the angles are pairwise
    /// distinct on the circle (gap `> 1e-8`), as zero-locus predictions
    /// require; errors with [`Error::NonSimpleMonodromy`] otherwise.
    pub fn simple_angles(&self) -> Result<Vec<f64>> {
        let angles = self.angles()?;
        for i in 1..angles.len() {
            if angles[i] - angles[i - 1] <= SIMPLE_GAP {
                return Err(Error::NonSimpleMonodromy);
            }
        }
        if angles.len() > 1 {
            let wrap = angles[0] + std::f64::consts::TAU - angles[angles.len() - 1];
            if wrap <= SIMPLE_GAP {
                return Err(Error::NonSimpleMonodromy);
            }
        }
        Ok(angles)
    }
}

/// Force exact conjugate symmetry after a numerically-computed compression.
fn symmetrize(h: &mut HermitianMatrix) {
    let n = h.dim();
    for r in 0..n {
        let d = h.get(r, r);
        h.set(r, r, Complex64::new(d.re, 0.0));
        for c in r + 1..n {
            let avg = 0.5 * (h.get(r, c) + h.get(c, r).conj());
            h.set(r, c, avg);
            h.set(c, r, avg.conj());
        }
    }
}

fn parse_complex(token: &str, line: usize) -> Result<Complex64> {
    let bad = || Error::Parse { line, msg: format!("expected `re,im`, found `{token}`") };
    let (re, im) = token.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(
        re.parse().map_err(|_| bad())?,
        im.parse().map_err(|_| bad())?,
    ))
}
