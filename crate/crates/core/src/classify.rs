//! Structural classification of graphs: connectivity, bipartiteness and the
//! named families that appear in the equality cases of the bound catalog.
//!
//! Every tag here is decided combinatorially, never from the spectrum.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Two color classes of a proper 2-coloring. `left` always holds vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    /// True iff every edge of `g` crosses the partition.
    pub fn separates(&self, g: &Graph) -> bool {
        let mut side = vec![None; g.n()];
        for &v in &self.left {
            side[v] = Some(false);
        }
        for &v in &self.right {
            side[v] = Some(true);
        }
        side.iter().all(Option::is_some) && g.edges().all(|(i, j)| side[i] != side[j])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub connected: bool,
    /// `Some` iff the graph is 2-colorable.
    pub bipartition: Option<Bipartition>,
    /// Connected with exactly one cycle (`m == n`).
    pub unicyclic: bool,
    /// Common degree when all degrees agree.
    pub regular: Option<usize>,
    /// No edges.
    pub empty: bool,
    pub complete: bool,
    pub isolated: usize,
    /// `(p, q)` with `p <= q` when the graph is `K_{p,q}`.
    pub complete_bipartite: Option<(usize, usize)>,
    /// `(p, q)` when the graph minus its isolated vertices is `K_{p,q}`.
    pub complete_bipartite_core: Option<(usize, usize)>,
    /// `K_{1, n-1}` for `n >= 2`.
    pub star: bool,
    /// `P_n`, including `P_1 = K_1`.
    pub path: bool,
    /// `C_n` for `n >= 3`.
    pub cycle: bool,
    /// `(count, order)` when the graph is `count` disjoint copies of `K_order`.
    pub union_of_completes: Option<(usize, usize)>,
}

impl Classification {
    pub fn bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}

/// BFS 2-coloring; `None` when an odd cycle exists.
pub fn bipartition(g: &Graph) -> Option<Bipartition> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        stack.push(s);
        while let Some(u) = stack.pop() {
            let cu = color[u]?;
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (v, c) in color.into_iter().enumerate() {
        if c == Some(true) {
            right.push(v);
        } else {
            left.push(v);
        }
    }
    Some(Bipartition { left, right })
}

fn complete_bipartite_shape(g: &Graph) -> Option<(usize, usize)> {
    if !g.is_connected() {
        return None;
    }
    let parts = bipartition(g)?;
    let (p, q) = (parts.left.len(), parts.right.len());
    (p >= 1 && q >= 1 && g.m() == p * q).then_some((p.min(q), p.max(q)))
}

pub fn classify(g: &Graph) -> Classification {
    let n = g.n();
    let m = g.m();
    let degrees = g.degree_sequence();
    let (labels, components) = g.component_labels();
    let connected = components == 1;
    let bipartition = bipartition(g);
    let regular = degrees
        .first()
        .copied()
        .filter(|&d| degrees.iter().all(|&x| x == d));
    let max_degree = degrees.iter().copied().max().unwrap_or(0);

    let complete_bipartite = complete_bipartite_shape(g);
    let complete_bipartite_core = if m == 0 {
        None
    } else {
        complete_bipartite_shape(&g.without_isolated())
    };

    let mut sizes = vec![0usize; components];
    let mut edges = vec![0usize; components];
    for &l in &labels {
        sizes[l] += 1;
    }
    for (i, _) in g.edges() {
        edges[labels[i]] += 1;
    }
    let union_of_completes = sizes
        .first()
        .copied()
        .filter(|&k| sizes.iter().all(|&s| s == k) && edges.iter().all(|&e| e == k * (k - 1) / 2))
        .map(|k| (components, k));

    Classification {
        n,
        m,
        components,
        connected,
        unicyclic: connected && m == n,
        regular,
        empty: m == 0,
        complete: n >= 1 && m == n * (n - 1) / 2,
        isolated: g.isolated_count(),
        star: matches!(complete_bipartite, Some((1, _))),
        path: connected && m + 1 == n && max_degree <= 2,
        cycle: connected && n >= 3 && regular == Some(2),
        bipartition,
        complete_bipartite,
        complete_bipartite_core,
        union_of_completes,
    }
}
