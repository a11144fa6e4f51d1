//! The graph value type and the structural queries everything else is built
//! from: vertex deletion, degrees, components, cutnodes, blocks, Eulerian
//! test.
//!
//! A [`Graph`] is a finite simple undirected graph on vertices `0..n`,
//! immutable after construction. Adjacency is held as one neighbor bitmask
//! per vertex, which caps graphs at 64 vertices — far beyond the desk scale
//! the rest of the crate operates at.

use std::fmt;

use crate::error::Error;

/// Hard capacity of the adjacency representation.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph on vertices `0..n`, immutable after
/// construction. No self-loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Iterates the set bit positions of a mask in ascending order.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub(crate) u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Removes bit `i` from `mask`, shifting all higher bits down by one.
pub(crate) fn drop_bit(mask: u64, i: usize) -> u64 {
    let low = mask & ((1u64 << i) - 1);
    let high = if i + 1 < 64 { mask >> (i + 1) } else { 0 };
    low | (high << i)
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed edges
    /// collapse; `(a, b)` and `(b, a)` denote the same edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::EdgeOutOfRange { a, b, n });
            }
            if a == b {
                return Err(Error::SelfLoop { v: a });
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { n, adj })
    }

    /// The graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Self, Error> {
        Self::from_edges(n, &[])
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self, Error> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Self::from_edges(n, &edges)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, Error> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::EdgeOutOfRange { a: n - 1, b: 0, n });
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Whether vertices `a` and `b` are adjacent. `has_edge(v, v)` is always
    /// false. Panics if an index is out of range.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        assert!(a < self.n && b < self.n, "vertex out of range");
        self.adj[a] & (1 << b) != 0
    }

    /// Number of neighbors of `v`. Panics if `v` is out of range.
    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n, "vertex out of range");
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Neighbors of `v` in ascending order. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        assert!(v < self.n, "vertex out of range");
        Bits(self.adj[v])
    }

    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// All edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| Bits(self.adj[a] >> a >> 1).map(move |k| (a, a + 1 + k)))
    }

    /// Deletes vertex `i` and its incident edges; vertices above `i` shift
    /// down by one.
    pub fn delete_vertex(&self, i: usize) -> Result<Self, Error> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { v: i, n: self.n });
        }
        if self.n == 1 {
            return Err(Error::DeleteFromSingleton);
        }
        let mut adj = Vec::with_capacity(self.n - 1);
        for (v, &mask) in self.adj.iter().enumerate() {
            if v != i {
                adj.push(drop_bit(mask, i));
            }
        }
        Ok(Graph { n: self.n - 1, adj })
    }

    /// Applies a vertex relabeling: vertex `v` of `self` becomes
    /// `perm[v]` in the result.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, Error> {
        if perm.len() != self.n {
            return Err(Error::PermutationLengthMismatch { len: perm.len(), n: self.n });
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & (1 << p) != 0 {
                return Err(Error::NotAPermutation { value: p });
            }
            seen |= 1 << p;
        }
        let mut adj = vec![0u64; self.n];
        for (a, b) in self.edges() {
            adj[perm[a]] |= 1 << perm[b];
            adj[perm[b]] |= 1 << perm[a];
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = 0u64;
        let mut parts = 0;
        for v in 0..self.n {
            if seen & (1 << v) != 0 {
                continue;
            }
            parts += 1;
            let mut frontier = 1u64 << v;
            while frontier != 0 {
                seen |= frontier;
                let mut next = 0;
                for u in Bits(frontier) {
                    next |= self.adj[u];
                }
                frontier = next & !seen;
            }
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Whether removing `v` increases the number of components. Note that a
    /// drop in component count (an isolated vertex) does not qualify.
    /// Panics if `v` is out of range or the graph has fewer than 2 vertices.
    pub fn is_cutnode(&self, v: usize) -> bool {
        assert!(self.n >= 2, "cutnode test needs at least 2 vertices");
        let deleted = self.delete_vertex(v).expect("vertex in range");
        deleted.component_count() > self.component_count()
    }

    /// Connected, and every vertex has even degree.
    pub fn is_eulerian(&self) -> bool {
        self.is_connected() && (0..self.n).all(|v| self.degree(v).is_multiple_of(2))
    }

    /// The blocks (maximal nonseparable subgraphs) as sorted vertex lists.
    /// Every edge lies in exactly one block; isolated vertices lie in none.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut st = BlockState {
            graph: self,
            disc: vec![usize::MAX; self.n],
            low: vec![0; self.n],
            timer: 0,
            edge_stack: Vec::new(),
            out: Vec::new(),
        };
        for v in 0..self.n {
            if st.disc[v] == usize::MAX {
                st.dfs(v, usize::MAX);
            }
        }
        let mut blocks = st.out;
        blocks.sort();
        blocks
    }

    /// The number of blocks containing `v` when `v` is a cutnode, and 1
    /// otherwise (including isolated vertices). Panics as `is_cutnode` does.
    pub fn block_count_at(&self, v: usize) -> usize {
        if !self.is_cutnode(v) {
            return 1;
        }
        self.blocks().iter().filter(|b| b.contains(&v)).count()
    }

    /// Packs the upper-triangle adjacency bits (row-major over pairs
    /// `(i, j)`, `i < j`) into a `u64`, first pair at the most significant
    /// used position, so numeric order equals lexicographic bit order.
    /// Panics for `n > 11`, where the triangle no longer fits.
    pub fn triangle_code(&self) -> u64 {
        let m = self.n * (self.n - 1) / 2;
        assert!(m <= 64, "triangle code fits 64 bits only for n <= 11");
        let mut code = 0u64;
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i] & (1 << j) != 0 {
                    code |= 1 << (m - 1 - k);
                }
                k += 1;
            }
        }
        code
    }

    /// Inverse of [`Graph::triangle_code`]: the labeled graph on `n`
    /// vertices whose packed upper-triangle bits equal `code`.
    pub fn from_triangle_code(n: usize, code: u64) -> Self {
        assert!(n >= 1 && n * (n - 1) / 2 <= 64);
        let m = n * (n - 1) / 2;
        let mut adj = vec![0u64; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if code & (1 << (m - 1 - k)) != 0 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Graph { n, adj }
    }
}

struct BlockState<'a> {
    graph: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    edge_stack: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl BlockState<'_> {
    // Hopcroft-Tarjan biconnected components; depth is bounded by
    // MAX_VERTICES so recursion is safe.
    fn dfs(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        self.timer += 1;
        for v in Bits(self.graph.adj[u]) {
            if self.disc[v] == usize::MAX {
                self.edge_stack.push((u, v));
                self.dfs(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    let mut members = 0u64;
                    while let Some(&(a, b)) = self.edge_stack.last() {
                        self.edge_stack.pop();
                        members |= (1 << a) | (1 << b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    self.out.push(Bits(members).collect());
                }
            } else if v != parent && self.disc[v] < self.disc[u] {
                self.edge_stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn builds_triangle() {
        let g = k3();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
    }

    #[test]
    fn duplicate_and_reversed_edges_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_self_loop() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop { v: 0 }));
    }

    #[test]
    fn rejects_out_of_range_edge() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::EdgeOutOfRange { a: 0, b: 2, n: 2 })
        );
    }

    #[test]
    fn rejects_zero_vertices() {
        assert_eq!(Graph::from_edges(0, &[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn delete_vertex_examples() {
        // K3 minus a vertex is a single edge.
        let g = k3().delete_vertex(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));

        // Deleting the middle of a path leaves two isolated vertices.
        let p3 = Graph::path(3).unwrap();
        let mid = p3.delete_vertex(1).unwrap();
        assert_eq!((mid.vertex_count(), mid.edge_count()), (2, 0));

        let end = p3.delete_vertex(0).unwrap();
        assert_eq!((end.vertex_count(), end.edge_count()), (2, 1));
    }

    #[test]
    fn delete_vertex_shifts_indices() {
        // 0-1, 2-3: deleting 1 leaves 0 isolated and the edge on (1, 2).
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let d = g.delete_vertex(1).unwrap();
        assert!(d.has_edge(1, 2));
        assert_eq!(d.degree(0), 0);
    }

    #[test]
    fn delete_vertex_errors() {
        let g = Graph::edgeless(1).unwrap();
        assert_eq!(g.delete_vertex(0), Err(Error::DeleteFromSingleton));
        assert_eq!(k3().delete_vertex(3), Err(Error::VertexOutOfRange { v: 3, n: 3 }));
    }

    #[test]
    fn degrees() {
        assert_eq!(k3().degree(0), 2);
        let p3 = Graph::path(3).unwrap();
        assert_eq!((p3.degree(0), p3.degree(1)), (1, 2));
        assert_eq!(Graph::edgeless(4).unwrap().degree(2), 0);
    }

    #[test]
    #[should_panic(expected = "vertex out of range")]
    fn degree_panics_out_of_range() {
        k3().degree(3);
    }

    #[test]
    fn edge_count_matches_deleted_plus_degree() {
        // |E(G)| = |E(G - v)| + deg(v), spot-checked on K3 at vertex 0.
        let g = k3();
        let e0 = g.delete_vertex(0).unwrap().edge_count();
        assert_eq!(e0, 1);
        assert_eq!(e0 + g.degree(0), g.edge_count());
        assert_eq!(Graph::path(4).unwrap().edge_count(), 3);
    }

    #[test]
    fn component_counts() {
        assert_eq!(k3().component_count(), 1);
        assert_eq!(Graph::edgeless(2).unwrap().component_count(), 2);
        assert_eq!(Graph::from_edges(3, &[(0, 1)]).unwrap().component_count(), 2);
    }

    #[test]
    fn cutnodes() {
        let p3 = Graph::path(3).unwrap();
        assert!(p3.is_cutnode(1));
        assert!(!p3.is_cutnode(0));
        assert!(!k3().is_cutnode(0));
        // Removing an isolated vertex drops the component count; not a cutnode.
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(!g.is_cutnode(2));
    }

    #[test]
    fn eulerian() {
        assert!(k3().is_eulerian());
        assert!(!Graph::path(3).unwrap().is_eulerian());
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!two_triangles.is_eulerian());
    }

    #[test]
    fn blocks_of_path() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.blocks(), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(p3.block_count_at(1), 2);
        assert_eq!(p3.block_count_at(0), 1);
    }

    #[test]
    fn blocks_of_triangle() {
        assert_eq!(k3().blocks(), vec![vec![0, 1, 2]]);
        assert_eq!(k3().block_count_at(0), 1);
    }

    #[test]
    fn blocks_of_bowtie() {
        // Two triangles sharing vertex 0.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(g.block_count_at(0), 2);
        assert_eq!(g.blocks().len(), 2);
    }

    #[test]
    fn isolated_vertex_has_block_count_one() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(g.block_count_at(2), 1);
        assert!(g.blocks().iter().all(|b| !b.contains(&2)));
    }

    #[test]
    fn relabel_roundtrip() {
        let g = Graph::path(4).unwrap();
        let perm = [3, 1, 0, 2];
        let h = g.relabel(&perm).unwrap();
        assert_eq!(h.edge_count(), g.edge_count());
        assert!(h.has_edge(3, 1) && h.has_edge(1, 0) && h.has_edge(0, 2));
        let inverse = [2, 1, 3, 0];
        assert_eq!(h.relabel(&inverse).unwrap(), g);
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let g = Graph::path(3).unwrap();
        assert_eq!(
            g.relabel(&[0, 1]),
            Err(Error::PermutationLengthMismatch { len: 2, n: 3 })
        );
        assert_eq!(g.relabel(&[0, 0, 1]), Err(Error::NotAPermutation { value: 0 }));
    }

    #[test]
    fn triangle_code_roundtrip() {
        for n in 1..=6usize {
            let m = n * (n - 1) / 2;
            for code in 0..(1u64 << m) {
                let g = Graph::from_triangle_code(n, code);
                assert_eq!(g.triangle_code(), code);
            }
        }
        assert_eq!(k3().triangle_code(), 0b111);
    }
}
