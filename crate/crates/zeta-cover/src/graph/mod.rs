//! Voltage graphs, their cyclic covers, and twist/monodromy data.
//!
//! A voltage graph is a finite connected multigraph (loops and parallel
//! edges allowed) with an integer *voltage* `ρ` on every oriented edge.
//! Reversing an edge negates its voltage.  Summing voltages along cycles
//! gives a homomorphism `H₁(G) → ℤ`; the assignment is *surjective* when
//! the net voltages of a cycle basis have gcd 1.  In that case the
//! `N`-sheeted cyclic cover — vertices `(x, k)` with `x` a base vertex and
//! `k ∈ ℤ/Nℤ`, edges `(x, k) — (y, k + ρ)` for every base edge `x →ρ y` —
//! is connected for every `N`, and the infinite ℤ-cover is a connected
//! infinite graph on which deck translation acts freely.
//!
//! The text format for graphs is line-based:
//!
//! ```text
//! # comment
//! v 3          # vertex count (vertices are 0..count)
//! e 0 1 0      # edge 0—1 with voltage 0
//! e 1 2 1      # edge 1—2 with voltage 1
//! e 2 0 0
//! ```

mod heat;
mod laplacian;
mod monodromy;
pub(crate) mod trees;

pub use heat::infinite_cover_heat_kernel;
pub use monodromy::Monodromy;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::{Error, Result};

/// An angle `θ ∈ [0, 2π)` twisting the cover's fiber character.
///
/// Construction reduces mod `2π`, so `TwistAngle::new(-0.1)` and
/// `TwistAngle::new(2π - 0.1)` are the same angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistAngle(f64);

impl TwistAngle {
    /// Reduce `radians` into `[0, 2π)`.
    pub fn new(radians: f64) -> Self {
        TwistAngle(radians.rem_euclid(std::f64::consts::TAU))
    }

    /// The `p`-th of `n` equally spaced angles, `2πp/n`.
    ///
    /// These are the characters of ℤ/nℤ; the spectrum of the `n`-cover
    /// Laplacian is the union of the twisted spectra over `p = 0..n`.
    pub fn sector(p: usize, n: usize) -> Self {
        assert!(n > 0, "sector angle needs n > 0");
        TwistAngle::new(std::f64::consts::TAU * p as f64 / n as f64)
    }

    /// The angle in radians, in `[0, 2π)`.
    pub fn radians(self) -> f64 {
        self.0
    }
}

/// A finite multigraph with integer edge voltages.
///
/// Stored as a vertex count plus a list of oriented edges `(u, v, ρ)`.
/// Connectivity and the cycle-voltage gcd are computed once at
/// construction (by a BFS assigning each vertex a potential `ψ` along a
/// spanning tree; every edge then closes a cycle of net voltage
/// `ψ(u) + ρ − ψ(v)`, zero exactly for tree edges).
#[derive(Clone, Debug)]
pub struct VoltageGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, i64)>,
    connected: bool,
    cycle_gcd: u64,
}

impl VoltageGraph {
    /// Build a voltage graph from a vertex count and oriented edge list.
    ///
    /// Requires `vertex_count ≥ 1` and all endpoints in range.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, i64)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        for &(u, v, _) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{vertex_count}"
                )));
            }
        }
        let (connected, cycle_gcd) = survey(vertex_count, &edges);
        Ok(VoltageGraph { vertex_count, edges, connected, cycle_gcd })
    }

    /// Parse the line-based text format (see module docs).
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("v") => {
                    if vertex_count.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "duplicate vertex-count line".into(),
                        });
                    }
                    let n = tok
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse {
                            line: line_no,
                            msg: "expected `v <count>`".into(),
                        })?;
                    vertex_count = Some(n);
                }
                Some("e") => {
                    let n = vertex_count.ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "edge before vertex-count line".into(),
                    })?;
                    let mut field = |what: &str| -> Result<i64> {
                        tok.next()
                            .and_then(|s| s.parse::<i64>().ok())
                            .ok_or_else(|| Error::Parse {
                                line: line_no,
                                msg: format!("expected `e <u> <v> <voltage>`, bad {what}"),
                            })
                    };
                    let u = field("source")?;
                    let v = field("target")?;
                    let rho = field("voltage")?;
                    let in_range = |x: i64| x >= 0 && (x as usize) < n;
                    if !in_range(u) || !in_range(v) {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("vertex out of range 0..{n}"),
                        });
                    }
                    edges.push((u as usize, v as usize, rho));
                }
                Some(other) => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unknown directive `{other}`"),
                    });
                }
                None => unreachable!("blank lines are skipped"),
            }
            if tok.next().is_some() {
                return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() });
            }
        }
        let vertex_count =
            vertex_count.ok_or_else(|| Error::Parse { line: 0, msg: "missing `v` line".into() })?;
        VoltageGraph::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Oriented edges `(u, v, voltage)`.
    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Gcd of net cycle voltages (0 when every cycle has net voltage 0).
    ///
    /// Meaningful for connected graphs; the voltage assignment is
    /// surjective onto ℤ exactly when this is 1.
    pub fn cycle_gcd(&self) -> u64 {
        self.cycle_gcd
    }

    /// The `sheets`-fold cyclic cover.
    ///
    /// Every base edge lifts to `sheets` edges `(u, k) — (v, k + ρ mod N)`;
    /// all copies are kept, so parallel lifts and lifted loops stay in the
    /// cover as genuine multi-edges.  Errors if the base is disconnected or
    /// the voltages are not surjective (either would disconnect covers).
    pub fn cyclic_cover(&self, sheets: usize) -> Result<CoverGraph> {
        if sheets == 0 {
            return Err(Error::InvalidParameter("cover needs at least one sheet".into()));
        }
        if !self.connected {
            return Err(Error::Disconnected);
        }
        if self.cycle_gcd != 1 {
            return Err(Error::NonSurjective { gcd: self.cycle_gcd });
        }
        let n = self.vertex_count;
        let mut edges = Vec::with_capacity(self.edges.len() * sheets);
        for &(u, v, rho) in &self.edges {
            for k in 0..sheets {
                let shifted = (k as i64 + rho).rem_euclid(sheets as i64) as usize;
                edges.push((k * n + u, shifted * n + v));
            }
        }
        Ok(CoverGraph { base: self.clone(), sheets, edges })
    }

    /// Exact spanning-tree count of the underlying multigraph (voltages
    /// ignored, loops ignored), via the matrix-tree theorem over ℤ.
    pub fn spanning_tree_count(&self) -> BigInt {
        trees::count(self.vertex_count, self.edges.iter().map(|&(u, v, _)| (u, v)))
    }
}

/// A finite cyclic cover of a [`VoltageGraph`].
///
/// Vertex `(x, k)` (base vertex `x`, sheet `k`) has index `k·|V| + x`.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    base: VoltageGraph,
    sheets: usize,
    edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    pub fn base(&self) -> &VoltageGraph {
        &self.base
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn vertex_count(&self) -> usize {
        self.sheets * self.base.vertex_count()
    }

    /// Undirected edges of the cover, as index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of base vertex `x` on sheet `k`.
    pub fn vertex_index(&self, x: usize, k: usize) -> usize {
        debug_assert!(x < self.base.vertex_count() && k < self.sheets);
        k * self.base.vertex_count() + x
    }

    /// The deck transformation shifting every sheet by `shift`, as a
    /// permutation of vertex indices (`perm[i]` is where `i` goes).
    pub fn deck_permutation(&self, shift: usize) -> Vec<usize> {
        let n = self.base.vertex_count();
        (0..self.vertex_count())
            .map(|i| {
                let (k, x) = (i / n, i % n);
                ((k + shift) % self.sheets) * n + x
            })
            .collect()
    }

    /// Exact spanning-tree count via the matrix-tree theorem over ℤ.
    pub fn spanning_tree_count(&self) -> BigInt {
        trees::count(self.vertex_count(), self.edges.iter().copied())
    }
}

/// BFS sweep: returns `(connected, gcd of net cycle voltages)`.
fn survey(vertex_count: usize, edges: &[(usize, usize, i64)]) -> (bool, u64) {
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); vertex_count];
    for &(u, v, rho) in edges {
        adj[u].push((v, rho));
        adj[v].push((u, -rho));
    }
    let mut psi = vec![0i128; vertex_count];
    let mut seen = vec![false; vertex_count];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1usize;
    while let Some(u) = queue.pop_front() {
        for &(v, rho) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                psi[v] = psi[u] + rho as i128;
                queue.push_back(v);
            }
        }
    }
    let mut gcd: u128 = 0;
    for &(u, v, rho) in edges {
        let cycle = (psi[u] + rho as i128 - psi[v]).unsigned_abs();
        gcd = gcd.gcd(&cycle);
    }
    (reached == vertex_count, u64::try_from(gcd).unwrap_or(u64::MAX))
}
