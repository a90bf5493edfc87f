//! A finite-model engine for soft sets and soft topological spaces.
//!
//! A soft set over a finite universe `U` and parameter set `E` assigns a
//! subset of `U` to every parameter; the engine stores it as an `E x U` bit
//! table whose flat bit string is the canonical key. On top of that sit the
//! full soft-set algebra, soft points, soft cartesian products, soft
//! mappings with images and inverse images, soft topologies with closure
//! and subspaces, continuity in three equivalent formulations, product
//! topologies with slabs and projections, and embedding machinery up to a
//! verifier for the embedding lemma: a family of continuous mappings that
//! separates soft points and separates soft points from soft closed sets
//! forces its diagonal to be an embedding.
//!
//! Every construction has an independent brute-force counterpart in
//! [`oracle`], and [`checks`] packages the differential comparisons that
//! the fuzz harness and the acceptance suite sweep over seeded corpora.
//!
//! All values are immutable after construction and safe to share across
//! threads; witnesses and iteration follow canonical key order, so equal
//! inputs always produce byte-identical reports.

pub mod checks;
pub mod context;
pub mod continuity;
pub mod embedding;
pub mod error;
pub mod mapping;
pub mod oracle;
pub mod product;
pub mod product_topology;
pub mod soft_set;
pub mod topology;

pub use context::{same_context, Context, Ctx};
pub use continuity::{
    initial_topology, is_continuous, is_continuous_at, restrict, ContinuityMethod,
    ContinuityReport, ContinuityWitness,
};
pub use embedding::{
    diagonal_mapping, is_closed_mapping, is_embedding, is_homeomorphism, separation_report,
    verify_embedding_lemma, EmbeddingCertificate, EmbeddingRoute, LemmaReport, SeparationReport,
};
pub use error::{Error, Result};
pub use mapping::{compose, SoftMapping};
pub use oracle::{closure_via_adherence, enumerate_all_soft_sets, OracleConfig, Sampler};
pub use product::{ProductContext, DEFAULT_CELL_BUDGET};
pub use product_topology::{
    closure_of_product_check, n_slab, n_slab_product_form, product_topology, projection_mapping,
    slab, ProductOfSpaces,
};
pub use soft_set::{SoftPoint, SoftSet};
pub use topology::{
    verify_axioms, AxiomVerdict, GenerationOutcome, SoftSpace, SoftTopology, Subspace,
    DEFAULT_SIZE_CAP,
};
