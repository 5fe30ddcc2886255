//! Semantic similarity over IS-A taxonomies.
//!
//! Word frequencies from a corpus are propagated up a taxonomy of concepts
//! to estimate concept probabilities; two concepts are then as similar as
//! the information content of the most informative concept subsuming both.
//! Path-based baselines (edge counting and a normalized log path length)
//! and a probability-based variant share the same query surface, and the
//! [`evaluation`] module scores any of them against human ratings.

pub mod error;
pub mod evaluation;
pub mod fixtures;
pub mod probability;
pub mod similarity;
pub mod taxonomy;

pub use error::{Error, EvalError, ModelError, Result, SimilarityError, TaxonomyError};
pub use evaluation::{evaluate, flip_check, pearson, spearman, Benchmark, EvalReport};
pub use probability::{FrequencyTable, LogBase, ProbabilityModel};
pub use similarity::{AlphaWeights, Measure, Scorer, SimScore};
pub use taxonomy::{ConceptId, DepthInfo, Taxonomy, TaxonomyBuilder};
