use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("subspace containment fails: generator {index} of the smaller space escapes the larger one")]
    NotContained { index: usize },

    #[error("vectors are linearly dependent (vector {index})")]
    Dependent { index: usize },

    #[error("map does not descend to the quotient: image of {what} {index} leaves the target {target}")]
    NotWellDefined {
        what: &'static str,
        index: usize,
        target: &'static str,
    },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("d(d({generator})) != 0")]
    DiffSquare { generator: String },

    #[error("differential of {generator} is not a degree-2 expression in the generators ({detail})")]
    DiffDegree { generator: String, detail: String },

    #[error("omega is not closed: d(omega) != 0")]
    OmegaNotClosed,

    #[error("omega must be a homogeneous element of degree 2")]
    OmegaDegree,

    #[error("product is not associative on ({0}, {1}, {2})")]
    Associativity(String, String, String),

    #[error("product is not graded-commutative on ({0}, {1})")]
    Commutativity(String, String),

    #[error("product {0}*{1} is not homogeneous of degree |{0}|+|{1}|")]
    ProductDegree(String, String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unknown label '{0}'")]
    UnknownLabel(String),

    #[error("elements belong to different models")]
    ModelMismatch,

    #[error("cone boundary squares to a nonzero map in degree {degree} (witness column {witness})")]
    ConeBoundary { degree: usize, witness: usize },

    #[error("operator bundle requires p = 1, got p = {0}")]
    WrongFiltration(usize),

    #[error("operator bundle requires an even top degree, got {0}")]
    OddDimension(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("unknown catalog model '{0}'")]
    UnknownCatalog(String),

    #[error("model file: {0}")]
    ModelFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
