use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a partition: {0}")]
    InvalidPartition(String),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("theta is undefined: all weights touching the last point are zero")]
    ThetaUndefined,

    #[error("indices must be distinct and within 1..={n}: {indices:?}")]
    BadIndices { indices: Vec<usize>, n: usize },

    #[error("element is not star-invariant (w_g != w_{{g^-1}})")]
    NotSymmetric,

    #[error("element is not positive symmetric")]
    NotPositiveSymmetric,

    #[error("matrix is not symmetric (max deviation {0:e})")]
    AsymmetricMatrix(f64),

    #[error("regular representation is capped at n <= {cap}, got n = {n}")]
    RegularTooLarge { n: usize, cap: usize },

    #[error("vector is not a unit vector (norm {0})")]
    NonUnitVector(f64),

    #[error("generating set is empty")]
    EmptyGenerators,

    #[error("representation has no vectors outside its invariant subspace")]
    NoNontrivialVectors,

    #[error("vector is not a spectral gap minimizer (Rayleigh quotient {rayleigh}, gap {gap})")]
    NotGapMinimizer { rayleigh: f64, gap: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
