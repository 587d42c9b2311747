//! Plumbing graphs: weighted trees and their intersection forms.
//!
//! A plumbing graph is a connected acyclic graph (a tree) whose vertices
//! carry integer Euler numbers. Its intersection matrix `I` has the Euler
//! numbers on the diagonal and `I(v, w) = 1` exactly when `{v, w}` is an
//! edge. Everything downstream assumes `I` negative definite, which is
//! checked exactly — no floating point is involved anywhere.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// A negative-definite-candidate plumbing tree.
///
/// Vertices keep their external ids (arbitrary distinct nonnegative
/// integers from the input file); internally they are indexed `0..n` in
/// increasing id order, and every cycle/matrix in the crate is indexed the
/// same way. Construction validates tree-ness but not definiteness, so that
/// [`PlumbingGraph::is_negative_definite`] remains an honest query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    ids: Vec<i64>,
    euler: Vec<i64>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    /// Builds a graph from `(id, euler)` pairs and id pairs for edges.
    ///
    /// Rejects duplicate ids, unknown ids in edges, self-loops, multi-edges,
    /// and any topology that is not a single tree.
    pub fn new(vertices: &[(i64, i64)], edge_ids: &[(i64, i64)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("graph has no vertices"));
        }
        let mut sorted: Vec<(i64, i64)> = vertices.to_vec();
        sorted.sort_by_key(|&(id, _)| id);
        for pair in sorted.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::input(format!("duplicate vertex id {}", pair[0].0)));
            }
        }
        let ids: Vec<i64> = sorted.iter().map(|&(id, _)| id).collect();
        let euler: Vec<i64> = sorted.iter().map(|&(_, e)| e).collect();
        let index: BTreeMap<i64, usize> =
            ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_ids.len());
        for &(a, b) in edge_ids {
            let (&u, &v) = match (index.get(&a), index.get(&b)) {
                (Some(u), Some(v)) => (u, v),
                _ => {
                    let missing = if index.contains_key(&a) { b } else { a };
                    return Err(Error::input(format!("edge references unknown vertex id {missing}")));
                }
            };
            if u == v {
                return Err(Error::input(format!("self-loop at vertex id {a}")));
            }
            let key = (u.min(v), u.max(v));
            if edges.contains(&key) {
                return Err(Error::input(format!("duplicate edge between ids {a} and {b}")));
            }
            edges.push(key);
            adj[u].push(v);
            adj[v].push(u);
        }
        if edges.len() + 1 != n {
            return Err(Error::input(format!(
                "not a tree: {n} vertices need {} edges, found {}",
                n - 1,
                edges.len()
            )));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        edges.sort_unstable();

        let graph = PlumbingGraph { ids, euler, adj, edges };
        // Edge count is already right, so connectivity alone settles tree-ness.
        if graph.component_of(0).len() != n {
            return Err(Error::input("not a tree: graph is disconnected"));
        }
        Ok(graph)
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    /// True when the graph has no vertices (never holds for constructed
    /// graphs; kept to make `len` clippy-clean to call).
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// External ids in internal index order (ascending).
    pub fn ids(&self) -> &[i64] {
        &self.ids
    }

    /// External id of internal vertex `v`.
    pub fn id(&self, v: usize) -> i64 {
        self.ids[v]
    }

    /// Internal index of external id, if present.
    pub fn index_of(&self, id: i64) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    /// Euler number (self-intersection) of vertex `v`.
    pub fn euler(&self, v: usize) -> i64 {
        self.euler[v]
    }

    /// Valency of vertex `v` in the tree.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edges as internal index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Intersection number `I(v, w)`: the Euler number on the diagonal, 1
    /// across an edge, 0 otherwise.
    pub fn intersection(&self, v: usize, w: usize) -> i64 {
        if v == w {
            self.euler[v]
        } else if self.adj[v].binary_search(&w).is_ok() {
            1
        } else {
            0
        }
    }

    /// True when every vertex has Euler number at most `-2`, i.e. the graph
    /// is a minimal (and automatically good) resolution graph.
    pub fn is_minimal(&self) -> bool {
        self.euler.iter().all(|&e| e <= -2)
    }

    /// Exact Sylvester test: the form is negative definite iff
    /// `(-1)^k det(I_k) > 0` for every leading principal minor `I_k`.
    pub fn is_negative_definite(&self) -> bool {
        self.negative_definite_check().is_ok()
    }

    /// As [`is_negative_definite`](Self::is_negative_definite), but on
    /// failure reports the 1-based index of the first offending leading
    /// principal minor.
    pub fn negative_definite_check(&self) -> std::result::Result<(), usize> {
        let n = self.len();
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|v| (0..n).map(|w| big_rat(self.intersection(v, w))).collect())
            .collect();
        // Symmetric Gaussian elimination; for a negative definite matrix
        // every pivot is strictly negative and no row exchange is needed. A
        // nonnegative pivot at step k means the sign of det(I_{k+1}) is off.
        for k in 0..n {
            if !m[k][k].is_negative() {
                return Err(k + 1);
            }
            for i in (k + 1)..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = &m[i][k] / &m[k][k];
                for j in k..n {
                    let delta = &factor * &m[k][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        Ok(())
    }

    /// Determinant of `-I` as an exact integer; for a negative definite
    /// form this is the order of the discriminant group `L'/L`.
    pub fn det_minus_intersection(&self) -> BigInt {
        // Fraction-free Bareiss elimination over the integers.
        let n = self.len();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|v| (0..n).map(|w| BigInt::from(-self.intersection(v, w))).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let swap = ((k + 1)..n).find(|&i| !m[i][k].is_zero());
                match swap {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// Vertices reachable from `start`, as a sorted index list.
    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.len()).filter(|&v| seen[v]).collect()
    }

    /// Connected components of the full subgraph induced by `subset`
    /// (internal indices); each component is sorted, components are ordered
    /// by smallest member.
    pub fn components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.len()];
        for &v in subset {
            inside[v] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut components = Vec::new();
        let mut members: Vec<usize> = subset.to_vec();
        members.sort_unstable();
        for &root in &members {
            if seen[root] {
                continue;
            }
            let mut component = Vec::new();
            let mut stack = vec![root];
            seen[root] = true;
            while let Some(v) = stack.pop() {
                component.push(v);
                for &w in &self.adj[v] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Full subgraph induced by `subset` (internal indices). External ids
    /// are preserved, so cycles can be transported back by id. Errors when
    /// the subset is empty or not connected in the tree.
    pub fn subgraph(&self, subset: &[usize]) -> Result<PlumbingGraph> {
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let vertices: Vec<(i64, i64)> =
            sorted.iter().map(|&v| (self.ids[v], self.euler[v])).collect();
        let mut edge_ids = Vec::new();
        for &(u, v) in &self.edges {
            if sorted.binary_search(&u).is_ok() && sorted.binary_search(&v).is_ok() {
                edge_ids.push((self.ids[u], self.ids[v]));
            }
        }
        PlumbingGraph::new(&vertices, &edge_ids).map_err(|e| match e {
            Error::Input(msg) => Error::Input(format!("subgraph: {msg}")),
            other => other,
        })
    }
}

pub(crate) fn big_rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}
