//! Exact spanning-tree counts via the matrix-tree theorem.
//!
//! The number of spanning trees of a connected multigraph equals any
//! cofactor of its combinatorial Laplacian `L = D − A`.  Loops contribute
//! nothing (they add 2 to the degree and 2 to the adjacency diagonal) and
//! are dropped up front; parallel edges accumulate.  The cofactor is
//! evaluated with the fraction-free integer determinant, so counts are
//! exact at any size the dense elimination can reach.

use num_bigint::BigInt;

use crate::numerics::{integer_determinant, IntegerMatrix};

/// Spanning trees of the multigraph on `0..vertex_count` with the given
/// undirected edges.  Returns 0 for disconnected graphs, 1 for the
/// one-vertex graph.
pub(crate) fn count(
    vertex_count: usize,
    edges: impl Iterator<Item = (usize, usize)>,
) -> BigInt {
    if vertex_count <= 1 {
        return BigInt::from(vertex_count);
    }
    let mut lap = IntegerMatrix::zeros(vertex_count);
    for (u, v) in edges {
        if u == v {
            continue;
        }
        lap.add(u, u, 1);
        lap.add(v, v, 1);
        lap.add(u, v, -1);
        lap.add(v, u, -1);
    }
    integer_determinant(&lap.minor(0))
}
