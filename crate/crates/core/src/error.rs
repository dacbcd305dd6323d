use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop ({0},{0}) is not allowed")]
    SelfLoop(usize),
    #[error("vertex index {index} out of range for graph with {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("operation requires an undirected graph")]
    DirectedInput,
    #[error("operation requires a directed graph")]
    UndirectedInput,
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("input is not a tree ({0})")]
    NotATree(String),
    #[error("oracle scale exceeded: n = {n} is over the limit {limit}")]
    OracleScaleExceeded { n: usize, limit: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("non-finite value {value} at {context}")]
    NonFinite { value: f64, context: String },
    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("spectral function is non-finite on eigenvalue {eigenvalue}")]
    SpectralFnNonFinite { eigenvalue: f64 },
    #[error("negative squared distance {value:.3e} below tolerance at pair ({u},{v})")]
    NegativeSquaredDistance { value: f64, u: usize, v: usize },
    #[error("token overflow: {value} does not fit the token range at quant step {quant_step}")]
    TokenOverflow { value: f64, quant_step: f64 },
    #[error("quantization step must be positive, got {0}")]
    BadQuantStep(f64),
    #[error("channel count mismatch between encodings: {a} vs {b}")]
    ChannelMismatch { a: usize, b: usize },
    #[error("quantization steps differ between encodings: {a} vs {b}")]
    QuantStepMismatch { a: f64, b: f64 },
    #[error("pair refinement supports at most {cap} vertices, got {n}")]
    PairCapExceeded { n: usize, cap: usize },
    #[error("dimension mismatch in transformer: {0}")]
    GtDimension(String),
    #[error("softmax row {row} does not sum to 1 (got {sum})")]
    SoftmaxRowSum { row: usize, sum: f64 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
