//! Exhaustive spanning-tree counts and the matrix-tree cross-check.
//!
//! `det′(Δ_X) = |X| · K(X)` ties the floating-point spectral pipeline to
//! an integer that can be counted by hand: the number of spanning trees.
//! This module counts trees by brute force (every edge subset of size
//! `|V|−1`, tested for acyclicity), then confronts three other routes with
//! that ground truth:
//!
//! * the Laplacian cofactor over exact integers (matrix-tree),
//! * the all-minors sum `Σ_v det(Δ minus row/column v) = |V|·K`,
//! * `exp(log det′)` from the dense eigensolver.
//!
//! Any disagreement means a bug in the corresponding route — there is no
//! tolerance to hide behind on the integer side.

use num_bigint::BigInt;

use crate::graph::VoltageGraph;
use crate::numerics::{
    hermitian_eigenvalues, integer_determinant, HermitianMatrix, IntegerMatrix,
    DEFAULT_ZERO_TOL_REL,
};
use crate::zeta::log_det_prime;
use crate::{Error, Result};

/// Most edges the exhaustive count will enumerate (2²⁴ subsets).
pub const ENUMERATION_LIMIT: usize = 24;

/// Relative agreement demanded of the floating-point route.
const FLOAT_TOL: f64 = 1e-7;

/// Count spanning trees by enumerating all edge subsets of size `|V|−1`.
///
/// Loops and parallel edges are fine: a subset containing a loop closes a
/// cycle and is rejected, and parallel edges count as distinct trees.
/// Graphs with more than [`ENUMERATION_LIMIT`] edges are refused with
/// [`Error::TooLarge`].
pub fn brute_force_spanning_trees(
    vertex_count: usize,
    edges: &[(usize, usize)],
) -> Result<u64> {
    for &(u, v) in edges {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) outside 0..{vertex_count}"
            )));
        }
    }
    if edges.len() > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { limit: ENUMERATION_LIMIT, actual: edges.len() });
    }
    if vertex_count <= 1 {
        return Ok(vertex_count as u64);
    }
    let need = vertex_count - 1;
    if edges.len() < need {
        return Ok(0);
    }

    let mut count = 0u64;
    for mask in 0u32..(1u32 << edges.len()) {
        if mask.count_ones() as usize == need && is_forest(vertex_count, edges, mask) {
            count += 1;
        }
    }
    Ok(count)
}

/// `|V|−1` acyclic edges on `|V|` vertices are automatically spanning, so
/// a union-find cycle test is the whole tree test.
fn is_forest(vertex_count: usize, edges: &[(usize, usize)], mask: u32) -> bool {
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        if mask & (1u32 << i) == 0 {
            continue;
        }
        let ru = root(&mut parent, u);
        let rv = root(&mut parent, v);
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// Check `det′(Δ) = |V| · K` along every route the crate knows.
///
/// Returns `true` only if (1) the integer cofactor count equals the brute
/// force count exactly, (2) the all-minors sum equals `|V|·K` exactly, and
/// (3) `exp(log det′)` from the eigensolver agrees with `|V|·K` to `1e−7`
/// relative.  A disconnected graph returns `false`: its `det′` is a
/// product over components, not `|V|·K = 0`.
pub fn verify_matrix_tree(vertex_count: usize, edges: &[(usize, usize)]) -> Result<bool> {
    if vertex_count == 0 {
        return Err(Error::InvalidParameter("graph must have at least one vertex".into()));
    }
    let brute = brute_force_spanning_trees(vertex_count, edges)?;
    if vertex_count == 1 {
        // det′ of the 1×1 zero Laplacian is the empty product 1 = 1·K.
        return Ok(brute == 1);
    }

    // Route 1: single cofactor over exact integers.
    let cofactor = crate::graph::trees::count(vertex_count, edges.iter().copied());
    if cofactor != BigInt::from(brute) {
        return Ok(false);
    }

    // Route 2: all |V| cofactors sum to |V|·K, exactly.
    let mut lap_int = IntegerMatrix::zeros(vertex_count);
    let mut lap_float = HermitianMatrix::zeros(vertex_count);
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        lap_int.add(u, u, 1);
        lap_int.add(v, v, 1);
        lap_int.add(u, v, -1);
        lap_int.add(v, u, -1);
        lap_float.add(u, u, 1.0.into());
        lap_float.add(v, v, 1.0.into());
        lap_float.add(u, v, (-1.0).into());
        lap_float.add(v, u, (-1.0).into());
    }
    let mut minors = BigInt::from(0);
    for v in 0..vertex_count {
        minors += integer_determinant(&lap_int.minor(v));
    }
    if minors != BigInt::from(vertex_count as u64) * BigInt::from(brute) {
        return Ok(false);
    }

    // Route 3: the spectral side.  `target = 0` (disconnected) can only
    // pass if det′ were exactly 0, which it never is.
    let spectrum = hermitian_eigenvalues(&lap_float, DEFAULT_ZERO_TOL_REL)?;
    let det_prime = match log_det_prime(&spectrum) {
        Ok(ldp) => ldp.exp(),
        Err(Error::AllZero) => return Ok(false),
        Err(e) => return Err(e),
    };
    let target = vertex_count as f64 * brute as f64;
    Ok((det_prime - target).abs() <= FLOAT_TOL * target)
}

/// Convenience: run [`verify_matrix_tree`] on the underlying multigraph of
/// a voltage graph (voltages play no role in tree counting).
pub fn verify_matrix_tree_voltage(g: &VoltageGraph) -> Result<bool> {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
    verify_matrix_tree(g.vertex_count(), &edges)
}
