//! Immutable simple undirected graphs over bitset adjacency, their basic
//! statistics, named families and the graph6 text format.

mod families;
pub mod graph6;
mod independent;
mod vertex_set;

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::Rational;

pub use families::{
    blow_up, complete, complete_bipartite, complete_multipartite, cycle, grotzsch, path, petersen,
    turan,
};
pub use independent::{independence_number, max_independent_set};
pub use vertex_set::VertexSet;

/// Largest vertex count handled by the exact (single-word bitset) paths.
pub const EXACT_MAX_N: usize = 64;
/// Largest vertex count accepted anywhere, for the heuristics.
pub const SPILL_MAX_N: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("bad sizes: {0}")]
    BadSizes(String),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Each vertex owns `words` consecutive `u64`s of neighbor bits. For `n <= 64`
/// that is one word per vertex, which is what the exact solvers work on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > SPILL_MAX_N {
            return Err(GraphError::TooLarge {
                n,
                limit: SPILL_MAX_N,
            });
        }
        let words = n.div_ceil(64).max(1);
        Ok(Self {
            n,
            words,
            adj: vec![0; n * words],
            edge_count: 0,
        })
    }

    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        g.edge_count = g.count_edges();
        Ok(g)
    }

    /// Builds a graph on at most 64 vertices from per-vertex neighbor masks.
    pub fn from_masks(masks: &[u64]) -> Result<Self, GraphError> {
        let n = masks.len();
        if n > EXACT_MAX_N {
            return Err(GraphError::TooLarge {
                n,
                limit: EXACT_MAX_N,
            });
        }
        let full = low_bits(n);
        for (v, &m) in masks.iter().enumerate() {
            if m >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            if m & !full != 0 {
                let vertex = (m & !full).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            let mut rest = m;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if masks[u] >> v & 1 == 0 {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        let mut g = Self {
            n,
            words: 1,
            adj: masks.to_vec(),
            edge_count: 0,
        };
        if n == 0 {
            g.adj.clear();
        }
        g.edge_count = g.count_edges();
        Ok(g)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1u64 << (u % 64);
    }

    fn count_edges(&self) -> usize {
        self.adj
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Whether the graph fits the single-word exact representation.
    pub fn is_exact_sized(&self) -> bool {
        self.n <= EXACT_MAX_N
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Raw neighbor words of `v`.
    #[inline]
    pub fn neighbor_words(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Neighbor mask of `v`; only meaningful when `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= EXACT_MAX_N);
        self.adj[v * self.words]
    }

    /// All neighbor masks; only meaningful when `n <= 64`.
    pub fn masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= EXACT_MAX_N);
        (0..self.n).map(|v| self.mask(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.neighbor_words(v))
    }

    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbor_words(v)
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| {
                let mut rest = w;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        None
                    } else {
                        let b = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        Some(i * 64 + b)
                    }
                })
            })
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbor_words(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbor_iter(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, edges).expect("a permutation preserves validity")
    }

    /// Subgraph induced on `set`, relabeled to `0..|set|` in ascending order.
    pub fn induced(&self, set: &VertexSet) -> Graph {
        let verts = set.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(verts.len(), edges).expect("induced subgraph is valid")
    }

    /// Appends one vertex adjacent to `neighbors` (all below the current `n`).
    pub fn with_vertex(&self, neighbors: &VertexSet) -> Result<Graph, GraphError> {
        let n = self.n + 1;
        let mut edges: Vec<_> = self.edges().collect();
        for u in neighbors.iter() {
            if u >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            edges.push((u, self.n));
        }
        Graph::new(n, edges)
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(s: &str) -> Result<Graph, graph6::Graph6Error> {
        graph6::decode(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, g6={})", self.n, self.to_graph6())
    }
}

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Number of edges with both endpoints in `a`.
pub fn edges_within(g: &Graph, a: &VertexSet) -> usize {
    a.iter()
        .map(|v| {
            g.neighbor_words(v)
                .iter()
                .enumerate()
                .map(|(i, &w)| (w & a.word(i)).count_ones() as usize)
                .sum::<usize>()
        })
        .sum::<usize>()
        / 2
}

/// Number of edges with one endpoint in `a` and the other in `b`.
pub fn edges_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize, GraphError> {
    if !a.is_disjoint(b) {
        return Err(GraphError::OverlappingSets);
    }
    Ok(a.iter()
        .map(|v| {
            g.neighbor_words(v)
                .iter()
                .enumerate()
                .map(|(i, &w)| (w & b.word(i)).count_ones() as usize)
                .sum::<usize>()
        })
        .sum())
}

/// True iff `g` has no clique on `r_plus_1` vertices.
pub fn is_clique_free(g: &Graph, r_plus_1: usize) -> bool {
    if r_plus_1 == 0 {
        return false;
    }
    if r_plus_1 == 1 {
        return g.n() == 0;
    }
    if g.n() <= EXACT_MAX_N {
        let masks = g.masks();
        !has_clique_mask(&masks, low_bits(g.n()), r_plus_1)
    } else {
        !has_clique_general(g, &g.vertices(), r_plus_1)
    }
}

/// Whether the vertices in `cand` contain a clique of size `size`.
pub(crate) fn has_clique_mask(masks: &[u64], cand: u64, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < size {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // only extend with higher-numbered vertices: each clique is seen once
        if has_clique_mask(masks, masks[v] & rest, size - 1) {
            return true;
        }
    }
    false
}

fn has_clique_general(g: &Graph, cand: &VertexSet, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if cand.len() < size {
        return false;
    }
    let verts = cand.to_vec();
    for (i, &v) in verts.iter().enumerate() {
        let higher: VertexSet = verts[i + 1..].iter().copied().collect();
        let next = higher.intersection(&g.neighbors(v));
        if has_clique_general(g, &next, size - 1) {
            return true;
        }
    }
    false
}

/// Exact value of the sum over vertices of `(deg(v) - n/3)^2`.
pub fn degree_variance_lhs(g: &Graph) -> Rational {
    let n = g.n() as i128;
    let sum: i128 = g
        .degrees()
        .into_iter()
        .map(|d| {
            let t = 3 * d as i128 - n;
            t * t
        })
        .sum();
    Ratio::new(sum, 9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn edges_within_examples() {
        let k22 = complete_bipartite(2, 2).unwrap();
        assert_eq!(edges_within(&k22, &set(&[0, 1])), 0);
        assert_eq!(edges_within(&k22, &set(&[0, 1, 2, 3])), 4);
        let c5 = cycle(5).unwrap();
        for s in 0..5 {
            let a = set(&[s, (s + 1) % 5, (s + 2) % 5]);
            assert_eq!(edges_within(&c5, &a), 2);
        }
    }

    #[test]
    fn edges_between_examples() {
        let star = complete_bipartite(3, 1).unwrap();
        assert_eq!(edges_between(&star, &set(&[0, 1, 2]), &set(&[3])), Ok(3));
        let c5 = cycle(5).unwrap();
        assert_eq!(edges_between(&c5, &set(&[0, 1, 2]), &set(&[3, 4])), Ok(2));
        let empty = Graph::empty(5).unwrap();
        assert_eq!(edges_between(&empty, &set(&[0, 1]), &set(&[2])), Ok(0));
        assert_eq!(
            edges_between(&c5, &set(&[0, 1]), &set(&[1, 2])),
            Err(GraphError::OverlappingSets)
        );
    }

    #[test]
    fn clique_free_examples() {
        assert!(is_clique_free(&cycle(5).unwrap(), 3));
        assert!(is_clique_free(&turan(6, 3).unwrap(), 4));
        assert!(!is_clique_free(&complete(4).unwrap(), 4));
        assert!(!is_clique_free(&turan(6, 3).unwrap(), 3));
    }

    #[test]
    fn clique_free_spill_path_agrees() {
        let g = blow_up(&cycle(5).unwrap(), &[14, 14, 14, 14, 14]).unwrap();
        assert_eq!(g.n(), 70);
        assert!(is_clique_free(&g, 3));
        let h = blow_up(&complete(3).unwrap(), &[30, 30, 10]).unwrap();
        assert!(!is_clique_free(&h, 3));
        assert!(is_clique_free(&h, 4));
    }

    #[test]
    fn degree_variance_examples() {
        assert_eq!(
            degree_variance_lhs(&complete_bipartite(3, 1).unwrap()),
            Ratio::new(28, 9)
        );
        assert_eq!(degree_variance_lhs(&cycle(6).unwrap()), Ratio::from(0));
        // 6-regular on 9 vertices: each term is (6 - 3)^2
        let k333 = turan(9, 3).unwrap();
        assert_eq!(degree_variance_lhs(&k333), Ratio::from(81));
        // C_6 blown up by 2 is 4-regular on 12 vertices, n/3 = 4
        let reg = blow_up(&cycle(6).unwrap(), &[2; 6]).unwrap();
        assert_eq!(degree_variance_lhs(&reg), Ratio::from(0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert_eq!(
            Graph::from_masks(&[0b10, 0]),
            Err(GraphError::Asymmetric(0, 1))
        );
    }

    #[test]
    fn induced_and_permute() {
        let c5 = cycle(5).unwrap();
        let p = c5.induced(&set(&[0, 1, 2]));
        assert_eq!(p.edge_count(), 2);
        let q = c5.permute(&[4, 3, 2, 1, 0]);
        assert_eq!(q.edge_count(), 5);
        assert!(q.has_edge(4, 3));
        let extended = c5.with_vertex(&set(&[0, 2])).unwrap();
        assert_eq!(extended.n(), 6);
        assert_eq!(extended.degree(5), 2);
    }
}
