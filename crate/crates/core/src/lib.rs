//! Estrada index, adjacency spectra and structural lower bounds for simple
//! undirected graphs.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, reports and the
//! command-line front end live in the `estrada` crate.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod invariants;
pub mod lemmas;
pub mod spectral;

pub use bounds::{
    equality_class_check, evaluate_bound, phi, phi_bipartite, regular_plus_isolated_check, BoundId,
    BoundResult, BoundSpec, Framework, RegularPlusIsolated, DEFAULT_TOLERANCE,
};
pub use classify::{classify, Bipartition, Classification};
pub use enumerate::{enumerate_graphs, LabeledGraphs, MAX_ENUMERATION_ORDER};
pub use error::{DomainError, Error, GraphError, SpectralError};
pub use families::{Family, FamilyId};
pub use graph::{Diameter, Graph};
pub use invariants::{general_randic, invariant_set, InvariantSet};
pub use lemmas::{check_lemmas, LemmaCheck, LemmaId};
pub use spectral::{
    eigen_symmetric, estrada_index, estrada_index_series, graph_energy, spectral_moment, spectrum,
    Spectrum,
};
