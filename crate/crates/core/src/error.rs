use thiserror::Error;

/// Failures while reading or validating a taxonomy.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaxonomyError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("taxonomy has no concepts")]
    Empty,

    #[error("duplicate concept id `{0}`")]
    DuplicateConcept(String),

    #[error("unknown concept `{id}` referenced at line {line}")]
    DanglingReference { id: String, line: usize },

    #[error("IS-A cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    #[error("unknown concept `{0}`")]
    UnknownConcept(String),
}

/// Failures while reading counts or building a probability model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: negative count {value} for `{word}`")]
    NegativeCount { line: usize, word: String, value: i64 },

    #[error("log base must be a finite number greater than 1, got {0}")]
    InvalidLogBase(f64),

    #[error("no counted word attaches to the taxonomy (N = 0)")]
    NoMass,

    #[error("count overflow while propagating `{0}`")]
    Overflow(String),
}

/// Failures of a similarity query.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimilarityError {
    #[error("word `{0}` is not in the taxonomy")]
    UnknownWord(String),

    #[error("unknown concept `{0}`")]
    UnknownConcept(String),

    #[error("every common subsumer of `{0}` and `{1}` has zero frequency")]
    NoFiniteSubsumer(String, String),

    #[error("path-based measures need a taxonomy of depth at least 1")]
    FlatTaxonomy,

    #[error("LCH floor must be a positive finite number, got {0}")]
    InvalidFloor(f64),

    #[error("alpha weights must be finite and non-negative (`{0}`)")]
    InvalidWeight(String),

    #[error("alpha weights sum to {0}, expected 1")]
    WeightSum(f64),

    #[error("alpha domain does not match the common subsumers: {0}")]
    WeightDomain(String),

    #[error("measure `{0}` is only defined between concepts")]
    ConceptOnly(&'static str),
}

/// Failures of correlation and benchmark evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("zero variance in {0}")]
    ZeroVariance(&'static str),

    #[error("benchmark line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error(transparent)]
    Similarity(#[from] SimilarityError),
}

/// Any error the library can produce.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
