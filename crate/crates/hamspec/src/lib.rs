//! Spectral certificates of Hamiltonicity and traceability.
//!
//! The library evaluates sufficient conditions on the extreme eigenvalues
//! of the matrix family `M(G; a, b) = a*D(G) + b*A(G)` and checks them,
//! together with the supporting degree and connectivity facts, against
//! exact combinatorial oracles on exhaustive corpora of small graphs.

pub mod certify;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod oracles;
pub mod rng;
pub mod spectral;
pub mod sweep;

pub use certify::{certify, certify_all, corollary_bounds, Outcome, Part, TheoremId, Verdict};
pub use graph::{Graph, GraphError};
pub use graph6::{encode_graph6, parse_graph6, parse_graph6_file, Graph6Error};
pub use oracles::{invariant_bundle, InvariantBundle};
pub use spectral::{parse_rational, SpectralParams};
pub use sweep::{sweep, Source, SweepReport, SweepSpec};
