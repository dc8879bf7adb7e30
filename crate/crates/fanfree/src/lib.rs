//! Spectral extremal graph toolkit.
//!
//! Computes spectral radii and Perron vectors of small simple graphs,
//! detects forbidden fan-type subgraphs (fans H_t, C6^△, F3), runs the
//! neighborhood-decomposition identities and η-functional ceilings that
//! drive the fan-free extremal argument, enumerates all graphs of a given
//! size up to isomorphism, and searches for spectral-radius maximizers
//! among H-free graphs — including the extremal graph K₃ ∨ (m−3)/3·K₁.
//!
//! All graph values are immutable; every operation is a pure function and
//! safe to call from parallel workers.

pub mod bitset;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod freeness;
pub mod graph;
pub mod graph6;
pub mod proofcheck;
pub mod search;
pub mod spectral;

pub use bitset::VertexSet;
pub use canon::{are_isomorphic, canonical_form, canonical_label};
pub use enumerate::{enumerate_for_each, enumerate_graphs, extremal_scan, ScanReport};
pub use error::{Error, Result};
pub use freeness::{
    c6_triangle_witness, f3_witness, fan_witness, has_path_subgraph, subgraph_contains,
    validate_witness, Forbidden, Witness,
};
pub use graph::{
    build_extremal, build_family, join, kelmans_shift, union, FamilySpec, Graph,
};
pub use graph6::{graph6_decode, graph6_encode};
pub use proofcheck::{
    claim_ceilings, decompose, eb_bound_check, eigen_identities, eta, Decomposition, EtaReport,
};
pub use search::{is_local_max, local_search, LocalMaxCertificate, SearchConfig, SearchReport};
pub use spectral::{
    closed_form_bound, quotient_matrix, quotient_rho, rayleigh_quotient, spectral_radius,
    PerronData, QuotientMatrix,
};
