//! Simple undirected graphs on up to 64 vertices.
//!
//! Each vertex stores its neighborhood as one `u64` bitset, so every
//! graph this library handles fits a fixed small footprint and all
//! degree/neighborhood queries are popcounts and masks.

use std::fmt;

use thiserror::Error;

/// Hard cap on the vertex count: adjacency rows are single machine words.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be between 1 and {MAX_VERTICES}, got {0}")]
    BadOrder(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
}

/// Index of the unordered pair `(i, j)`, `i < j`, in column-major order:
/// (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), (0,4), ...
///
/// This is the bit order shared by the graph6 codec, the labeled
/// enumeration masks, and the random sampler's coin flips.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// A simple undirected graph: no loops, no multi-edges, vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices, `1 <= n <= 64`.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::BadOrder(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph on `n <= 11` vertices whose edges are the set bits of `mask`,
    /// bit `t` meaning the `t`-th pair in [`pair_index`] order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        debug_assert!(n * (n - 1) / 2 <= 64);
        let mut t = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> t & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                t += 1;
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_edge_mask`]; requires `n <= 11` so the
    /// pair indices fit 64 bits.
    pub fn edge_mask(&self) -> u64 {
        debug_assert!(self.n * (self.n - 1) / 2 <= 64);
        let mut mask = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    mask |= 1 << pair_index(i, j);
                }
            }
        }
        mask
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: self.n });
            }
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighborhood of `u` as a bitset.
    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// All vertices as a bitset (low `n` bits set).
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    /// Edges as `(i, j)` with `i < j`, in [`pair_index`] order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |j| (0..j).filter(move |&i| self.has_edge(i, j)).map(move |i| (i, j)))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for v in 0..n {
            g.adj[v] = g.vertex_mask() & !(1 << v);
        }
        Ok(g)
    }

    /// Complete bipartite graph with parts `{0..a}` and `{a..a+b}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::path(n)?;
        if n >= 3 {
            g.add_edge(n - 1, 0)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes.
    pub fn petersen() -> Self {
        let mut g = Graph::new(10).unwrap();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, 5 + i).unwrap();
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Degree statistics of a graph, all in exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub edge_count: usize,
    /// Sum of squared degrees over all vertices.
    pub sum_squares: u64,
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let min_degree = *degrees.iter().min().expect("graphs have at least one vertex");
    let max_degree = *degrees.iter().max().unwrap();
    let total: usize = degrees.iter().sum();
    debug_assert!(total.is_multiple_of(2));
    let sum_squares = degrees.iter().map(|&d| (d * d) as u64).sum();
    DegreeProfile { degrees, min_degree, max_degree, edge_count: total / 2, sum_squares }
}

/// A proper 2-coloring of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: u64,
    pub side_b: u64,
    /// True iff every cross pair is an edge.
    pub complete: bool,
}

impl Bipartition {
    pub fn side_sizes(&self) -> (usize, usize) {
        (self.side_a.count_ones() as usize, self.side_b.count_ones() as usize)
    }
}

/// Deterministic BFS 2-coloring, rooted at the lowest-index vertex of each
/// component (the root goes to side A). Returns `None` on an odd cycle.
pub fn bipartition(g: &Graph) -> Option<Bipartition> {
    let n = g.n();
    let mut side_a = 0u64;
    let mut side_b = 0u64;
    let mut seen = 0u64;
    for root in 0..n {
        if seen >> root & 1 == 1 {
            continue;
        }
        seen |= 1 << root;
        side_a |= 1 << root;
        let mut frontier = 1u64 << root;
        let mut frontier_in_a = true;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= g.neighbors(v);
            }
            next &= !seen;
            seen |= next;
            if frontier_in_a {
                side_b |= next;
            } else {
                side_a |= next;
            }
            frontier = next;
            frontier_in_a = !frontier_in_a;
        }
    }
    // Reject if any edge lands inside a side.
    for v in 0..n {
        let same = if side_a >> v & 1 == 1 { side_a } else { side_b };
        if g.neighbors(v) & same != 0 {
            return None;
        }
    }
    let complete = {
        let a = side_a.count_ones() as usize;
        let b = side_b.count_ones() as usize;
        g.edge_count() == a * b
    };
    Some(Bipartition { side_a, side_b, complete })
}

/// Recognizes connected complete bipartite graphs, returning the part
/// sizes `(a, b)` with `a <= b`.
pub fn recognize_complete_bipartite(g: &Graph) -> Option<(usize, usize)> {
    if !g.is_connected() {
        return None;
    }
    let bip = bipartition(g)?;
    if !bip.complete {
        return None;
    }
    let (a, b) = bip.side_sizes();
    Some((a.min(b), a.max(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(Graph::new(0), Err(GraphError::BadOrder(0)));
        assert_eq!(Graph::new(65), Err(GraphError::BadOrder(65)));
        assert!(Graph::new(64).is_ok());
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        let mut g = Graph::new(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 })
        );
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::from_edges(4, &[(0, 2), (3, 1)]).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn degree_profile_triangle() {
        let p = degree_profile(&Graph::complete(3).unwrap());
        assert_eq!(p.degrees, vec![2, 2, 2]);
        assert_eq!((p.min_degree, p.max_degree), (2, 2));
        assert_eq!(p.edge_count, 3);
        assert_eq!(p.sum_squares, 12);
    }

    #[test]
    fn degree_profile_path() {
        let p = degree_profile(&Graph::path(3).unwrap());
        assert_eq!(p.degrees, vec![1, 2, 1]);
        assert_eq!((p.min_degree, p.max_degree), (1, 2));
        assert_eq!(p.edge_count, 2);
        assert_eq!(p.sum_squares, 6);
    }

    #[test]
    fn degree_profile_k23() {
        let p = degree_profile(&Graph::complete_bipartite(2, 3).unwrap());
        assert_eq!((p.min_degree, p.max_degree), (2, 3));
        assert_eq!(p.edge_count, 6);
        assert_eq!(p.sum_squares, 30);
    }

    #[test]
    fn bipartition_c4() {
        let bip = bipartition(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(bip.side_sizes(), (2, 2));
        assert!(bip.complete);
    }

    #[test]
    fn bipartition_rejects_odd_cycle() {
        assert_eq!(bipartition(&Graph::complete(3).unwrap()), None);
    }

    #[test]
    fn bipartition_p3() {
        let bip = bipartition(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(bip.side_a, 0b101);
        assert_eq!(bip.side_b, 0b010);
        assert!(bip.complete);
    }

    #[test]
    fn complete_bipartite_recognition() {
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        assert_eq!(recognize_complete_bipartite(&k23), Some((2, 3)));
        assert_eq!(recognize_complete_bipartite(&Graph::cycle(5).unwrap()), None);
        // Two disjoint edges: bipartite and "cross-complete" per component,
        // but disconnected.
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(recognize_complete_bipartite(&two_edges), None);
    }

    #[test]
    fn edge_mask_round_trip() {
        for mask in 0..64u64 {
            let g = Graph::from_edge_mask(4, mask).unwrap();
            assert_eq!(g.edge_mask(), mask);
        }
    }

    #[test]
    fn connectivity_check() {
        assert!(Graph::path(5).unwrap().is_connected());
        assert!(!Graph::from_edges(3, &[(0, 1)]).unwrap().is_connected());
        assert!(Graph::new(1).unwrap().is_connected());
    }

    #[test]
    fn petersen_shape() {
        let g = Graph::petersen();
        let p = degree_profile(&g);
        assert_eq!(g.n(), 10);
        assert_eq!(p.edge_count, 15);
        assert_eq!((p.min_degree, p.max_degree), (3, 3));
    }
}
