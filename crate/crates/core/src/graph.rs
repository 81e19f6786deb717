//! Simple undirected graphs stored as packed adjacency bit rows.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;

const WORD_BITS: usize = 64;

/// Eccentricity-style distance that may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diameter {
    Finite(usize),
    /// The graph is disconnected.
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Diameter::Finite(_))
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("inf"),
        }
    }
}

/// Position of the unordered pair `{i, j}` (with `i < j`) in the upper-triangle
/// ordering `(0,1), (0,2), (1,2), (0,3), ...`, which is also graph6 bit order.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Number of unordered vertex pairs on `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Each vertex owns a row of `ceil(n / 64)` words; bit `j` of row `i` is set
/// iff `ij` is an edge. Rows are kept symmetric with a clear diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD_BITS);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            m: 0,
        }
    }

    /// Builds a graph from a list of vertex pairs. Duplicate and reversed
    /// pairs collapse into one edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::Loop(i));
            }
            g.insert(i, j);
        }
        Ok(g)
    }

    /// Decodes an upper-triangle bitmask (bit `pair_index(i, j)` set iff `ij`
    /// is an edge). Only defined while the pair count fits in 64 bits.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let pairs = pair_count(n);
        if pairs > 64 {
            return Err(GraphError::Capacity { n, max: 11 });
        }
        if pairs < 64 && mask >> pairs != 0 {
            return Err(GraphError::InvalidParameter(alloc::format!(
                "mask {mask:#x} has bits beyond the {pairs} pairs of a graph on {n} vertices"
            )));
        }
        let mut g = Graph::empty(n);
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = pair_from_index(k);
            g.insert(i, j);
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_mask`]; `None` for graphs with more than 11 vertices.
    pub fn to_mask(&self) -> Option<u64> {
        if pair_count(self.n) > 64 {
            return None;
        }
        Some(
            self.edges()
                .fold(0u64, |acc, (i, j)| acc | 1u64 << pair_index(i, j)),
        )
    }

    pub(crate) fn insert(&mut self, i: usize, j: usize) {
        if self.has_edge(i, j) {
            return;
        }
        self.rows[i * self.words + j / WORD_BITS] |= 1 << (j % WORD_BITS);
        self.rows[j * self.words + i / WORD_BITS] |= 1 << (i % WORD_BITS);
        self.m += 1;
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Panics if either vertex is out of range.
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "vertex out of range");
        self.rows[i * self.words + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Maximum degree Δ.
    pub fn max_degree(&self) -> Result<usize, GraphError> {
        (0..self.n)
            .map(|v| self.degree(v))
            .max()
            .ok_or(GraphError::Degenerate)
    }

    /// Minimum degree δ.
    pub fn min_degree(&self) -> Result<usize, GraphError> {
        (0..self.n)
            .map(|v| self.degree(v))
            .min()
            .ok_or(GraphError::Degenerate)
    }

    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        let row = self.row(v);
        Neighbors {
            row,
            word: 0,
            bits: row.first().copied().unwrap_or(0),
        }
    }

    /// Edges as `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Number of isolated (degree zero) vertices.
    pub fn isolated_count(&self) -> usize {
        (0..self.n)
            .filter(|&v| self.row(v).iter().all(|&w| w == 0))
            .count()
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected-component label of every vertex, labels assigned in order of
    /// the smallest vertex in each component.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// True iff there is exactly one component. The graph on no vertices is
    /// not connected.
    pub fn is_connected(&self) -> bool {
        self.component_labels().1 == 1
    }

    /// Largest shortest-path distance over all vertex pairs.
    pub fn diameter(&self) -> Result<Diameter, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Degenerate);
        }
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Ok(Diameter::Infinite),
                }
            }
        }
        Ok(Diameter::Finite(best))
    }

    /// Number of triangles `t`.
    pub fn triangle_count(&self) -> usize {
        let mut closed = 0usize;
        for (i, j) in self.edges() {
            closed += self
                .row(i)
                .iter()
                .zip(self.row(j))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>();
        }
        // every triangle is seen once from each of its three edges
        closed / 3
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for (i, j) in self.edges() {
            a[i * self.n + j] = 1.0;
            a[j * self.n + i] = 1.0;
        }
        a
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n;
        let mut g = Graph::empty(self.n + other.n);
        for (i, j) in self.edges() {
            g.insert(i, j);
        }
        for (i, j) in other.edges() {
            g.insert(i + offset, j + offset);
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter(alloc::format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        for &p in perm {
            if p >= self.n || core::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidParameter(alloc::format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        Graph::new(self.n, self.edges().map(|(i, j)| (perm[i], perm[j])))
    }

    /// Subgraph induced by the vertices of positive degree, relabeled in order.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        let mut index = vec![usize::MAX; self.n];
        for (k, &v) in keep.iter().enumerate() {
            index[v] = k;
        }
        let mut g = Graph::empty(keep.len());
        for (i, j) in self.edges() {
            g.insert(index[i], index[j]);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(k: usize) -> (usize, usize) {
    // largest j with j(j-1)/2 <= k
    let mut j = ((libm::sqrt(8.0 * k as f64 + 1.0) + 1.0) / 2.0) as usize;
    while j * (j - 1) / 2 > k {
        j -= 1;
    }
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    (k - j * (j - 1) / 2, j)
}

/// Iterator over the neighbors of a vertex in increasing order.
pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * WORD_BITS + b);
            }
            self.word += 1;
            self.bits = *self.row.get(self.word)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_path() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn build_edgeless() {
        let g = Graph::new(4, []).unwrap();
        assert_eq!(g.m(), 0);
        assert_eq!(g, Graph::empty(4));
    }

    #[test]
    fn build_dedups_reversed_pairs() {
        let g = Graph::new(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(1)));
    }

    #[test]
    fn degrees() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree_sequence(), vec![3, 1, 1, 1]);
        assert_eq!(star.max_degree(), Ok(3));
        assert_eq!(star.min_degree(), Ok(1));
        assert_eq!(Graph::empty(3).max_degree(), Ok(0));
        assert_eq!(Graph::empty(0).max_degree(), Err(GraphError::Degenerate));
        assert_eq!(Graph::empty(0).min_degree(), Err(GraphError::Degenerate));
    }

    #[test]
    fn diameters() {
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.diameter(), Ok(Diameter::Finite(3)));
        let split = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(split.diameter(), Ok(Diameter::Infinite));
        assert_eq!(Graph::empty(1).diameter(), Ok(Diameter::Finite(0)));
        assert_eq!(Graph::empty(0).diameter(), Err(GraphError::Degenerate));
    }

    #[test]
    fn triangles() {
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.triangle_count(), 4);
        let k3 = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3.triangle_count(), 1);
    }

    #[test]
    fn wide_rows() {
        // crosses a word boundary
        let g = Graph::new(130, [(0, 129), (63, 64), (64, 129)]).unwrap();
        assert_eq!(g.neighbors(129).collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(g.degree(64), 2);
        assert_eq!(g.edges().count(), 3);
    }

    #[test]
    fn pair_index_round_trip() {
        for j in 1..40 {
            for i in 0..j {
                assert_eq!(pair_from_index(pair_index(i, j)), (i, j));
            }
        }
    }

    #[test]
    fn mask_round_trip() {
        for mask in 0..64u64 {
            let g = Graph::from_mask(4, mask).unwrap();
            assert_eq!(g.to_mask(), Some(mask));
        }
        assert!(Graph::from_mask(3, 8).is_err());
    }

    #[test]
    fn union_and_isolated() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let g = k2.disjoint_union(&Graph::empty(2)).disjoint_union(&k2);
        assert_eq!((g.n(), g.m()), (6, 2));
        assert!(g.has_edge(4, 5));
        assert_eq!(g.isolated_count(), 2);
        let core = g.without_isolated();
        assert_eq!((core.n(), core.m()), (4, 2));
        assert_eq!(g.component_labels().1, 4);
    }
}
