use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prefix violation: {0} is an initial factor of {1}")]
    PrefixViolation(String, String),
    #[error("not bijective: {0}")]
    NotBijective(String),
    #[error("code is not maximal: {0}")]
    NotMaximal(String),
    #[error("depth {depth} is below the required minimum {required}")]
    DepthTooSmall { depth: usize, required: usize },
    #[error("empty input where a nonempty string is required")]
    EmptyInput,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed transposition encoding `{0}`")]
    MalformedEncoding(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("code is empty or maximal")]
    EmptyOrMaximalCode,
    #[error("{0} is a prefix of {1}: no separating element exists")]
    PrefixHolds(String, String),
    #[error("width mismatch: expected {expected}, got {got}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("table is not a function: {0}")]
    NotAFunction(String),
    #[error("table is not injective: {0}")]
    NotInjective(String),
    #[error("table flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("oracle depth {0} exceeds the cap {1}")]
    DepthCap(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
