//! Named graph families and seeded random models.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::Graph;

/// Stable names of the generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Complete,
    Empty,
    CompleteBipartite,
    Star,
    Path,
    Cycle,
    DisjointUnion,
    RegularCirculant,
    ErRandom,
    BipartiteRandom,
}

impl FamilyId {
    pub const ALL: [FamilyId; 10] = [
        FamilyId::Complete,
        FamilyId::Empty,
        FamilyId::CompleteBipartite,
        FamilyId::Star,
        FamilyId::Path,
        FamilyId::Cycle,
        FamilyId::DisjointUnion,
        FamilyId::RegularCirculant,
        FamilyId::ErRandom,
        FamilyId::BipartiteRandom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Complete => "complete",
            FamilyId::Empty => "empty",
            FamilyId::CompleteBipartite => "complete_bipartite",
            FamilyId::Star => "star",
            FamilyId::Path => "path",
            FamilyId::Cycle => "cycle",
            FamilyId::DisjointUnion => "disjoint_union",
            FamilyId::RegularCirculant => "regular_circulant",
            FamilyId::ErRandom => "er_random",
            FamilyId::BipartiteRandom => "bipartite_random",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| GraphError::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// A fully parameterized family member.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Complete {
        n: usize,
    },
    Empty {
        n: usize,
    },
    CompleteBipartite {
        p: usize,
        q: usize,
    },
    Star {
        n: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    DisjointUnion(Vec<Family>),
    RegularCirculant {
        n: usize,
        r: usize,
    },
    ErRandom {
        n: usize,
        p: f64,
        seed: u64,
    },
    BipartiteRandom {
        p: usize,
        q: usize,
        prob: f64,
        seed: u64,
    },
}

impl Family {
    pub fn id(&self) -> FamilyId {
        match self {
            Family::Complete { .. } => FamilyId::Complete,
            Family::Empty { .. } => FamilyId::Empty,
            Family::CompleteBipartite { .. } => FamilyId::CompleteBipartite,
            Family::Star { .. } => FamilyId::Star,
            Family::Path { .. } => FamilyId::Path,
            Family::Cycle { .. } => FamilyId::Cycle,
            Family::DisjointUnion(_) => FamilyId::DisjointUnion,
            Family::RegularCirculant { .. } => FamilyId::RegularCirculant,
            Family::ErRandom { .. } => FamilyId::ErRandom,
            Family::BipartiteRandom { .. } => FamilyId::BipartiteRandom,
        }
    }

    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            Family::Complete { n } => Ok(complete(n)),
            Family::Empty { n } => Ok(Graph::empty(n)),
            Family::CompleteBipartite { p, q } => {
                if p == 0 || q == 0 {
                    return Err(invalid(format!("K_{{{p},{q}}} needs both sides non-empty")));
                }
                Ok(complete_bipartite(p, q))
            }
            Family::Star { n } => star(n),
            Family::Path { n } => {
                if n == 0 {
                    return Err(invalid("path needs at least one vertex".into()));
                }
                Ok(path(n))
            }
            Family::Cycle { n } => cycle(n),
            Family::DisjointUnion(ref parts) => parts.iter().try_fold(Graph::empty(0), |acc, f| {
                Ok(acc.disjoint_union(&f.generate()?))
            }),
            Family::RegularCirculant { n, r } => regular_circulant(n, r),
            Family::ErRandom { n, p, seed } => erdos_renyi(n, p, seed),
            Family::BipartiteRandom { p, q, prob, seed } => bipartite_random(p, q, prob, seed),
        }
    }
}

fn invalid(msg: alloc::string::String) -> GraphError {
    GraphError::InvalidParameter(msg)
}

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            g.insert(i, j);
        }
    }
    g
}

/// `K_{p,q}` with parts `0..p` and `p..p+q`.
pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    let mut g = Graph::empty(p + q);
    for i in 0..p {
        for j in p..p + q {
            g.insert(i, j);
        }
    }
    g
}

/// `S_n = K_{1,n-1}` centred at vertex 0.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(invalid(format!("star needs n >= 2, got {n}")));
    }
    Ok(complete_bipartite(1, n - 1))
}

/// `P_n` on `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.insert(i - 1, i);
    }
    g
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = path(n);
    g.insert(0, n - 1);
    Ok(g)
}

/// `r`-regular circulant on `n` vertices: offsets `1..=r/2`, plus the
/// antipodal offset `n/2` when `r` is odd.
pub fn regular_circulant(n: usize, r: usize) -> Result<Graph, GraphError> {
    if r >= n.max(1) || !(n * r).is_multiple_of(2) {
        return Err(invalid(format!("no {r}-regular graph on {n} vertices")));
    }
    let mut g = Graph::empty(n);
    for v in 0..n {
        for d in 1..=r / 2 {
            g.insert(v, (v + d) % n);
        }
        if r % 2 == 1 {
            g.insert(v, (v + n / 2) % n);
        }
    }
    Ok(g)
}

fn check_probability(p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("edge probability {p} outside [0, 1]")))
    }
}

/// `G(n, p)`: every pair independently, visited in upper-triangle order.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.random::<f64>() < p {
                g.insert(i, j);
            }
        }
    }
    Ok(g)
}

/// Random subgraph of `K_{p,q}` keeping each cross pair with probability `prob`.
pub fn bipartite_random(p: usize, q: usize, prob: f64, seed: u64) -> Result<Graph, GraphError> {
    check_probability(prob)?;
    if p == 0 || q == 0 {
        return Err(invalid(format!(
            "bipartite model needs both sides non-empty, got ({p}, {q})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(p + q);
    for i in 0..p {
        for j in p..p + q {
            if rng.random::<f64>() < prob {
                g.insert(i, j);
            }
        }
    }
    Ok(g)
}
