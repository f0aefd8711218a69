use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose: {left} does not match {right}")]
    Composition { left: String, right: String },
    #[error("element {element} is not a member of {set}")]
    NotMember { element: String, set: String },
    #[error("element {element} has the wrong shape for {context}")]
    Shape { element: String, context: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("conversion error: {0}")]
    Conversion(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("candidate budget exceeded: {raw} raw candidates, budget {budget}")]
    Budget { raw: String, budget: u64 },
    #[error("component outside the enumerated sizes: {0}")]
    OutOfRange(String),
    #[error("interpretation error: {0}")]
    Interpretation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
