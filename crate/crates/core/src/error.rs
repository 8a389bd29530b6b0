use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge endpoint {endpoint} out of range for {n} vertices")]
    EndpointOutOfRange { endpoint: usize, n: usize },

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid size for `{family}`: {reason}")]
    InvalidSize { family: String, reason: String },

    #[error("edge-list parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),

    #[error("matrix has a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("lambda = {lambda} lies within {distance:e} of an eigenvalue (pole)")]
    Pole { lambda: f64, distance: f64 },

    #[error("graph is not regular")]
    NotRegular,

    #[error("edge count {m} does not equal n*r/2 for n = {n}, r = {r}")]
    EdgeCountMismatch { n: usize, m: usize, r: usize },

    #[error("invalid regular spectrum: {0}")]
    InvalidRegularSpec(String),

    #[error("composite `{kind}` requires {requirement}")]
    InvalidOperand { kind: String, requirement: String },

    #[error("unknown corona kind `{0}`")]
    UnknownKind(String),

    #[error("no closed form for corona kind `{0}`")]
    NoClosedForm(String),

    #[error("polynomial degree {0} unsupported (expected 1..=4)")]
    UnsupportedDegree(usize),

    #[error("polynomial has a complex root {re} + {im}i")]
    ComplexRoot { re: f64, im: f64 },

    #[error("prediction count mismatch in family `{family}`: assembled {assembled}, expected {expected}")]
    CountMismatch {
        family: String,
        assembled: usize,
        expected: usize,
    },

    #[error("seed graphs are not A-cospectral regular graphs: {0}")]
    SeedsNotCospectral(String),

    #[error("unknown catalog key `{0}`")]
    UnknownCatalogKey(String),

    #[error("catalog entry `{0}` failed verification")]
    CorruptCatalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
