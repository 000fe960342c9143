use thiserror::Error;

/// Errors raised by group construction, character theory, cohomology and the
/// counting formulas.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("invalid parameters for {name}: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("table does not define a group: {0}")]
    InvalidGroup(String),

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("action is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("computation budget exceeded: {0}")]
    Budget(String),

    #[error("character error: {0}")]
    Character(String),

    #[error("cocycle identity fails at ({x}, {y}, {z})")]
    CocycleIdentity { x: usize, y: usize, z: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn params(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParams {
            name: name.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by exceeding a size or memory budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
