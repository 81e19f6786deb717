//! Degree-based indices and the invariant bundle consumed by the bounds.

use crate::classify::{classify, Classification};
use crate::error::GraphError;
use crate::graph::{Diameter, Graph};

/// General Randić index `Σ_{ij ∈ E} (d(i) d(j))^α`. Zero on edgeless graphs.
pub fn general_randic(g: &Graph, alpha: f64) -> f64 {
    g.edges()
        .map(|(i, j)| libm::pow((g.degree(i) * g.degree(j)) as f64, alpha))
        .fold(0.0, |acc, x| acc + x)
}

/// Randić (connectivity) index, `α = -1/2`.
pub fn randic(g: &Graph) -> f64 {
    general_randic(g, -0.5)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSet {
    pub n: usize,
    pub m: usize,
    /// Δ
    pub max_degree: usize,
    /// δ
    pub min_degree: usize,
    pub diameter: Diameter,
    pub triangles: usize,
    /// `R = R_{-1/2}`
    pub randic: f64,
    /// `R_{1/2}`
    pub randic_half: f64,
    pub classification: Classification,
}

/// Computes every invariant of `g` once. Rejects the graph on no vertices.
pub fn invariant_set(g: &Graph) -> Result<InvariantSet, GraphError> {
    Ok(InvariantSet {
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree()?,
        min_degree: g.min_degree()?,
        diameter: g.diameter()?,
        triangles: g.triangle_count(),
        randic: randic(g),
        randic_half: general_randic(g, 0.5),
        classification: classify(g),
    })
}
