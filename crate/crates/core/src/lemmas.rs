//! Classical lower bounds on the spectral radius `λ_1`, checked numerically.
//! The Estrada bounds are built on top of these.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::graph::Diameter;
use crate::invariants::InvariantSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    /// `λ_1 >= 2m/n`, connected.
    AverageDegree,
    /// `λ_1 >= m/R`, connected.
    EdgesOverRandic,
    /// `λ_1 >= sqrt(Δ)`, non-empty.
    SqrtMaxDegree,
    /// `λ_1 >= R_{1/2}/m`, non-empty.
    HalfRandicOverEdges,
    /// `λ_1 >= (n-1)^(1/D)`, connected.
    Diameter,
    /// `λ_1 >= 2(m-δ)/(n-1)`.
    MinDegree,
    /// `λ_1 >= 2`, connected unicyclic; equality iff a cycle.
    Unicyclic,
    /// `λ_1 >= 2cos(π/(n+1))`, connected; equality iff a path.
    Path,
}

impl LemmaId {
    pub const ALL: [LemmaId; 8] = [
        LemmaId::AverageDegree,
        LemmaId::EdgesOverRandic,
        LemmaId::SqrtMaxDegree,
        LemmaId::HalfRandicOverEdges,
        LemmaId::Diameter,
        LemmaId::MinDegree,
        LemmaId::Unicyclic,
        LemmaId::Path,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::AverageDegree => "average_degree",
            LemmaId::EdgesOverRandic => "edges_over_randic",
            LemmaId::SqrtMaxDegree => "sqrt_max_degree",
            LemmaId::HalfRandicOverEdges => "half_randic_over_edges",
            LemmaId::Diameter => "diameter",
            LemmaId::MinDegree => "min_degree",
            LemmaId::Unicyclic => "unicyclic",
            LemmaId::Path => "path",
        }
    }

    /// Lower bound on `λ_1`, `None` when the hypotheses fail.
    pub fn bound(self, inv: &InvariantSet) -> Option<f64> {
        let c = &inv.classification;
        let n = inv.n as f64;
        let m = inv.m as f64;
        match self {
            LemmaId::AverageDegree => c.connected.then(|| 2.0 * m / n),
            LemmaId::EdgesOverRandic => (c.connected && inv.m >= 1).then(|| m / inv.randic),
            LemmaId::SqrtMaxDegree => (inv.m >= 1).then(|| libm::sqrt(inv.max_degree as f64)),
            LemmaId::HalfRandicOverEdges => (inv.m >= 1).then(|| inv.randic_half / m),
            LemmaId::Diameter => match inv.diameter {
                Diameter::Finite(d) if d >= 1 => Some(libm::pow(n - 1.0, 1.0 / d as f64)),
                _ => None,
            },
            LemmaId::MinDegree => {
                (inv.n >= 2).then(|| 2.0 * (m - inv.min_degree as f64) / (n - 1.0))
            }
            LemmaId::Unicyclic => c.unicyclic.then_some(2.0),
            LemmaId::Path => c.connected.then(|| 2.0 * libm::cos(PI / (n + 1.0))),
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaCheck {
    pub id: LemmaId,
    pub bound: Option<f64>,
    /// `λ_1 - bound`.
    pub slack: Option<f64>,
    pub equality: bool,
}

impl LemmaCheck {
    pub fn violated(&self, tol: f64) -> bool {
        self.slack.is_some_and(|s| s < -tol)
    }
}

/// Evaluates every lemma against the spectral radius `lambda1`.
pub fn check_lemmas(inv: &InvariantSet, lambda1: f64, tol: f64) -> Vec<LemmaCheck> {
    LemmaId::ALL
        .into_iter()
        .map(|id| {
            let bound = id.bound(inv);
            let slack = bound.map(|b| lambda1 - b);
            LemmaCheck {
                id,
                bound,
                slack,
                equality: slack.is_some_and(|s| libm::fabs(s) < tol),
            }
        })
        .collect()
}
