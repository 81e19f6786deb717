//! Catalog of Estrada-index lower bounds.
//!
//! Every bound has the form `EE(G) >= F(x)` where `x` is a lower bound on the
//! spectral radius built from structural invariants, and `F` is one of two
//! increasing framework functions:
//!
//! * general graphs: `φ(x) = e^x + (n - 1) - x`;
//! * bipartite graphs: `Φ(x) = 2 cosh x + (n - 2)`.
//!
//! `G1..G7` use `φ`, `B1..B7` use `Φ` and are only applied to bipartite graphs,
//! where `λ_n = -λ_1` makes `Φ` valid.

use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use alloc::format;
use alloc::string::String;

use crate::classify::Classification;
use crate::error::{DomainError, Error, GraphError};
use crate::families::regular_circulant;
use crate::graph::{Diameter, Graph};
use crate::invariants::{invariant_set, InvariantSet};
use crate::spectral::spectrum;

/// Absolute tolerance on gaps used for equality detection and violations.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// `φ(x) = e^x + (n - 1) - x` on `x >= 0`, `n >= 1`.
pub fn phi(x: f64, n: usize) -> Result<f64, DomainError> {
    check_argument(x)?;
    if n < 1 {
        return Err(DomainError::TooFewVertices { n, min: 1 });
    }
    Ok(libm::exp(x) + (n as f64 - 1.0) - x)
}

/// `Φ(x) = 2 cosh x + (n - 2)` on `x >= 0`, `n >= 2`.
pub fn phi_bipartite(x: f64, n: usize) -> Result<f64, DomainError> {
    check_argument(x)?;
    if n < 2 {
        return Err(DomainError::TooFewVertices { n, min: 2 });
    }
    Ok(2.0 * libm::cosh(x) + (n as f64 - 2.0))
}

fn check_argument(x: f64) -> Result<(), DomainError> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(DomainError::NegativeArgument(x))
    }
}

/// `(x - 1) - ln x`, non-negative on `x > 0` and zero only at `x = 1`.
pub fn linear_log_gap(x: f64) -> f64 {
    (x - 1.0) - libm::log(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Framework {
    /// `φ`
    General,
    /// `Φ`
    Bipartite,
    /// Constant argument folded into a closed form (`e^2 + (n - 3)`).
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundSpec {
    pub id: BoundId,
    pub name: &'static str,
    pub framework: Framework,
    /// The bound is stated as a strict inequality.
    pub strict: bool,
}

const CATALOG: [BoundSpec; 14] = [
    spec(BoundId::G1, "phi(m/R)", Framework::General, true),
    spec(BoundId::G2, "phi(sqrt(Delta))", Framework::General, true),
    spec(BoundId::G3, "phi(R_half/m)", Framework::General, true),
    spec(BoundId::G4, "phi((n-1)^(1/D))", Framework::General, true),
    spec(
        BoundId::G5,
        "phi(2(m-delta)/(n-1))",
        Framework::General,
        false,
    ),
    spec(BoundId::G6, "e^2+(n-3)", Framework::Affine, true),
    spec(BoundId::G7, "phi(2cos(pi/(n+1)))", Framework::General, true),
    spec(BoundId::B1, "Phi(m/R)", Framework::Bipartite, false),
    spec(BoundId::B2, "Phi(sqrt(Delta))", Framework::Bipartite, false),
    spec(BoundId::B3, "Phi(R_half/m)", Framework::Bipartite, false),
    spec(BoundId::B4, "Phi((n-1)^(1/D))", Framework::Bipartite, false),
    spec(
        BoundId::B5,
        "Phi(2(m-delta)/(n-1))",
        Framework::Bipartite,
        false,
    ),
    spec(BoundId::B6, "Phi(2)", Framework::Bipartite, false),
    spec(
        BoundId::B7,
        "Phi(2cos(pi/(n+1)))",
        Framework::Bipartite,
        false,
    ),
];

const fn spec(id: BoundId, name: &'static str, framework: Framework, strict: bool) -> BoundSpec {
    BoundSpec {
        id,
        name,
        framework,
        strict,
    }
}

impl BoundId {
    pub const ALL: [BoundId; 14] = [
        BoundId::G1,
        BoundId::G2,
        BoundId::G3,
        BoundId::G4,
        BoundId::G5,
        BoundId::G6,
        BoundId::G7,
        BoundId::B1,
        BoundId::B2,
        BoundId::B3,
        BoundId::B4,
        BoundId::B5,
        BoundId::B6,
        BoundId::B7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::G1 => "G1",
            BoundId::G2 => "G2",
            BoundId::G3 => "G3",
            BoundId::G4 => "G4",
            BoundId::G5 => "G5",
            BoundId::G6 => "G6",
            BoundId::G7 => "G7",
            BoundId::B1 => "B1",
            BoundId::B2 => "B2",
            BoundId::B3 => "B3",
            BoundId::B4 => "B4",
            BoundId::B5 => "B5",
            BoundId::B6 => "B6",
            BoundId::B7 => "B7",
        }
    }

    pub fn spec(self) -> &'static BoundSpec {
        &CATALOG[self as usize]
    }

    pub fn is_bipartite(self) -> bool {
        self.spec().framework == Framework::Bipartite
    }

    /// The conditions other than bipartiteness.
    fn structurally_applicable(self, c: &Classification) -> bool {
        let base = match self {
            BoundId::G1 | BoundId::B1 => c.connected && c.m >= 1,
            BoundId::G2 | BoundId::B2 | BoundId::G3 | BoundId::B3 => c.m >= 1,
            BoundId::G4 | BoundId::B4 => c.connected && c.n >= 2,
            BoundId::G5 | BoundId::B5 => c.n >= 2,
            BoundId::G6 | BoundId::B6 => c.unicyclic,
            BoundId::G7 | BoundId::B7 => c.connected,
        };
        base && (!self.is_bipartite() || c.n >= 2)
    }

    pub fn applicable(self, c: &Classification) -> bool {
        self.structurally_applicable(c) && (!self.is_bipartite() || c.bipartite())
    }

    /// The spectral-radius lower bound fed to the framework; `None` when the
    /// invariants it needs are undefined.
    pub fn argument(self, inv: &InvariantSet) -> Option<f64> {
        if !self.structurally_applicable(&inv.classification) {
            return None;
        }
        let n = inv.n as f64;
        let m = inv.m as f64;
        let x = match self {
            BoundId::G1 | BoundId::B1 => m / inv.randic,
            BoundId::G2 | BoundId::B2 => libm::sqrt(inv.max_degree as f64),
            BoundId::G3 | BoundId::B3 => inv.randic_half / m,
            BoundId::G4 | BoundId::B4 => match inv.diameter {
                Diameter::Finite(d) if d >= 1 => libm::pow(n - 1.0, 1.0 / d as f64),
                _ => return None,
            },
            BoundId::G5 | BoundId::B5 => 2.0 * (m - inv.min_degree as f64) / (n - 1.0),
            BoundId::G6 | BoundId::B6 => 2.0,
            BoundId::G7 | BoundId::B7 => 2.0 * libm::cos(PI / (n + 1.0)),
        };
        Some(x)
    }

    /// Bound value ignoring the bipartite gate (so `B*` can be probed on
    /// arbitrary graphs).
    pub fn unrestricted_value(self, inv: &InvariantSet) -> Option<f64> {
        let x = self.argument(inv)?;
        let value = match self.spec().framework {
            Framework::General => phi(x, inv.n),
            Framework::Bipartite => phi_bipartite(x, inv.n),
            Framework::Affine => Ok(libm::exp(2.0) + (inv.n as f64 - 3.0)),
        };
        value.ok()
    }

    pub fn value(self, inv: &InvariantSet) -> Option<f64> {
        if self.applicable(&inv.classification) {
            self.unrestricted_value(inv)
        } else {
            None
        }
    }

    /// Structural membership in the family attaining equality.
    ///
    /// For the `φ` bounds equality forces `λ_2 = … = λ_n = 0`, i.e. the
    /// edgeless graph, so their class is the edgeless graphs the bound applies
    /// to (only `K_1` for the connected-only bounds).
    pub fn equality_class(self, c: &Classification) -> bool {
        if !self.applicable(c) {
            return false;
        }
        match self {
            BoundId::G1
            | BoundId::G2
            | BoundId::G3
            | BoundId::G4
            | BoundId::G5
            | BoundId::G6
            | BoundId::G7 => c.empty,
            BoundId::B1 => c.complete_bipartite.is_some(),
            BoundId::B2 => matches!(c.complete_bipartite_core, Some((1, _))),
            BoundId::B3 => c.complete_bipartite_core.is_some(),
            BoundId::B4 => c.star,
            BoundId::B5 => {
                c.empty
                    || (c.isolated == 1
                        && matches!(c.complete_bipartite_core, Some((p, q)) if p == q))
            }
            BoundId::B6 => c.cycle && c.n == 4,
            BoundId::B7 => c.path && (c.n == 2 || c.n == 3),
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| GraphError::InvalidParameter(format!("unknown bound id `{s}`")))
    }
}

/// One bound evaluated on one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub id: BoundId,
    pub applicable: bool,
    pub bound_value: Option<f64>,
    pub ee_value: f64,
    /// `ee - bound`, present iff applicable.
    pub gap: Option<f64>,
    pub equality_detected: bool,
    pub equality_class_match: bool,
}

impl BoundResult {
    /// Applicable and `gap < -tol`.
    pub fn violated(&self, tol: f64) -> bool {
        self.gap.is_some_and(|g| g < -tol)
    }

    pub fn held(&self, tol: f64) -> bool {
        self.gap.is_some_and(|g| g >= -tol)
    }

    pub fn held_strictly(&self, tol: f64) -> bool {
        self.gap.is_some_and(|g| g > tol)
    }
}

/// Evaluates bound `id` against the Estrada index `ee` of the graph described
/// by `inv`.
pub fn evaluate_bound(id: BoundId, inv: &InvariantSet, ee: f64, tol: f64) -> BoundResult {
    let bound_value = id.value(inv);
    let gap = bound_value.map(|b| ee - b);
    BoundResult {
        id,
        applicable: bound_value.is_some(),
        bound_value,
        ee_value: ee,
        gap,
        equality_detected: gap.is_some_and(|g| libm::fabs(g) < tol),
        equality_class_match: id.equality_class(&inv.classification),
    }
}

/// Structural membership of `g` in the equality family of bound `id`.
pub fn equality_class_check(id: BoundId, g: &Graph) -> bool {
    id.equality_class(&crate::classify::classify(g))
}

/// Outcome of testing the conjectured equality family `G ∪ K_1`, `G`
/// `r`-regular, for the minimum-degree spectral radius bound.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPlusIsolated {
    pub r: usize,
    pub n: usize,
    pub lambda1: f64,
    /// `2(m - δ)/(n' - 1)` for the union on `n' = n + 1` vertices.
    pub predicted: f64,
    pub holds: bool,
}

/// Builds the circulant `r`-regular graph on `n` vertices, adds an isolated
/// vertex and compares `λ_1` with `2(m - δ)/(n' - 1)`.
pub fn regular_plus_isolated_check(
    r: usize,
    n: usize,
    tol: f64,
) -> Result<RegularPlusIsolated, Error> {
    let base = regular_circulant(n, r)?;
    let g = base.disjoint_union(&Graph::empty(1));
    let inv = invariant_set(&g)?;
    let predicted = 2.0 * (inv.m as f64 - inv.min_degree as f64) / (inv.n as f64 - 1.0);
    let lambda1 = spectrum(&g)?.largest();
    Ok(RegularPlusIsolated {
        r,
        n,
        lambda1,
        predicted,
        holds: libm::fabs(lambda1 - predicted) < tol,
    })
}

/// Human-readable catalog line, e.g. `B6 Phi(2)`.
pub fn describe(id: BoundId) -> String {
    format!("{} {}", id, id.spec().name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, cycle, path, star};
    use crate::spectral::estrada_index;

    fn ee(g: &Graph) -> f64 {
        estrada_index(&spectrum(g).unwrap())
    }

    fn eval(id: BoundId, g: &Graph) -> BoundResult {
        evaluate_bound(id, &invariant_set(g).unwrap(), ee(g), DEFAULT_TOLERANCE)
    }

    #[test]
    fn catalog_is_indexed_by_id() {
        for id in BoundId::ALL {
            assert_eq!(id.spec().id, id);
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
        }
        assert!("G8".parse::<BoundId>().is_err());
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0, 7).unwrap(), 7.0);
        assert!((phi(2.0, 5).unwrap() - (libm::exp(2.0) + 2.0)).abs() < 1e-14);
        // e^1 + 0 - 1
        assert!((phi(1.0, 1).unwrap() - (core::f64::consts::E - 1.0)).abs() < 1e-15);
        assert_eq!(phi(-0.1, 3), Err(DomainError::NegativeArgument(-0.1)));
        assert!(phi(f64::NAN, 3).is_err());
        assert_eq!(
            phi(1.0, 0),
            Err(DomainError::TooFewVertices { n: 0, min: 1 })
        );
    }

    #[test]
    fn phi_bipartite_values() {
        assert_eq!(phi_bipartite(0.0, 6).unwrap(), 6.0);
        assert!((phi_bipartite(2.0, 4).unwrap() - 9.524391382).abs() < 1e-9);
        assert!(phi_bipartite(1.0, 1).is_err());
        for p in 1..5 {
            for q in 1..5 {
                let g = complete_bipartite(p, q);
                let x = libm::sqrt((p * q) as f64);
                assert!((phi_bipartite(x, p + q).unwrap() - ee(&g)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn g2_on_star4() {
        let r = eval(BoundId::G2, &star(4).unwrap());
        let s3 = libm::sqrt(3.0);
        assert!((r.ee_value - (2.0 * libm::cosh(s3) + 2.0)).abs() < 1e-9);
        let expected = libm::exp(s3) + 3.0 - s3;
        assert!((r.bound_value.unwrap() - expected).abs() < 1e-12);
        assert!((expected - 6.920_183).abs() < 1e-6);
        assert!(r.held_strictly(DEFAULT_TOLERANCE));
    }

    #[test]
    fn g5_on_edgeless() {
        let r = eval(BoundId::G5, &Graph::empty(5));
        assert_eq!(r.bound_value, Some(5.0));
        assert!(r.equality_detected && r.equality_class_match);
    }

    #[test]
    fn b5_on_k33_plus_isolated() {
        let g = complete_bipartite(3, 3).disjoint_union(&Graph::empty(1));
        let inv = invariant_set(&g).unwrap();
        assert_eq!(BoundId::B5.argument(&inv), Some(3.0));
        let r = eval(BoundId::B5, &g);
        assert!((r.bound_value.unwrap() - (2.0 * libm::cosh(3.0) + 5.0)).abs() < 1e-12);
        assert!(r.equality_detected && r.equality_class_match);
    }

    #[test]
    fn inapplicable_bounds_carry_no_numbers() {
        let r = eval(BoundId::B1, &crate::families::complete(4));
        assert!(!r.applicable && r.bound_value.is_none() && r.gap.is_none());
        assert!(!r.violated(DEFAULT_TOLERANCE) && !r.held(DEFAULT_TOLERANCE));
        assert!(!eval(BoundId::G4, &Graph::empty(3)).applicable);
        assert!(!eval(BoundId::G6, &path(4)).applicable);
    }

    #[test]
    fn equality_class_examples() {
        assert!(equality_class_check(BoundId::B4, &star(7).unwrap()));
        assert!(!equality_class_check(BoundId::B6, &cycle(6).unwrap()));
        assert!(equality_class_check(BoundId::B6, &cycle(4).unwrap()));
        let g = star(5).unwrap().disjoint_union(&Graph::empty(2));
        assert_eq!(invariant_set(&g).unwrap().max_degree, 4);
        assert!(equality_class_check(BoundId::B2, &g));
        assert!(!equality_class_check(BoundId::B4, &g));
        assert!(equality_class_check(BoundId::B3, &complete_bipartite(2, 3)));
        assert!(equality_class_check(
            BoundId::B3,
            &complete_bipartite(2, 3).disjoint_union(&Graph::empty(2))
        ));
        assert!(equality_class_check(BoundId::G5, &Graph::empty(4)));
        assert!(!equality_class_check(BoundId::G5, &Graph::empty(1)));
    }

    #[test]
    fn regular_plus_isolated() {
        for (r, n) in [(2, 5), (3, 4), (2, 4)] {
            let v = regular_plus_isolated_check(r, n, DEFAULT_TOLERANCE).unwrap();
            assert!(v.holds, "{v:?}");
            assert!((v.lambda1 - r as f64).abs() < 1e-8);
        }
        assert!(regular_plus_isolated_check(3, 5, DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn linear_log_gap_is_zero_only_at_one() {
        assert_eq!(linear_log_gap(1.0), 0.0);
        assert!(linear_log_gap(0.5) > 0.0 && linear_log_gap(3.0) > 0.0);
    }
}
