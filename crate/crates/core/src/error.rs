use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field characteristic {0} is not a prime")]
    NotPrime(u32),

    #[error("malformed matrix at column {col}: {detail}")]
    MalformedMatrix { col: usize, detail: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Input document failed validation; `location` is a JSON-path-like pointer.
    #[error("invalid input at {location}: {message}")]
    Validation { location: String, message: String },

    #[error("complex has no simplices")]
    EmptySpace,

    #[error("levels must be sorted and distinct (offending index {0})")]
    UnsortedLevels(usize),

    #[error("{0} is not a sliced level of this space")]
    NotALevel(f64),

    #[error("cocycle condition violated on 2-simplex {0:?}")]
    Cocycle(Vec<u64>),

    #[error("cover window too small: {0}")]
    Window(String),

    #[error("quotient barcode did not stabilize ({0}); retry with more periods")]
    Stabilization(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            location: location.into(),
            message: message.into(),
        }
    }
}
