//! Polyhedral graphs: embeddings, validation, rigid-vertex statistics,
//! reducibility, and an isomorphism-free census of all combinatorial types
//! up to a vertex bound.

pub mod census;
pub mod embedding;
pub mod enumeration;
pub mod generators;
pub mod reduction;
pub mod rigidity;
pub mod validity;

pub use embedding::{canonical_code, CanonicalCode, Embedding, Face};
pub use validity::{validate_polyhedral, PolyhedralGraph};

/// Exact angle sum in multiples of pi.
pub type AngleSum = num_rational::Ratio<i64>;
