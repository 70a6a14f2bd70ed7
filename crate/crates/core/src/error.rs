use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("element not in group: {0}")]
    NotInGroup(String),
    #[error("groups differ: {0}")]
    GroupMismatch(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("image is not saturated; quotient torsion {0:?}")]
    NotSaturated(Vec<String>),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("cocycle condition fails for pair {0}")]
    CocycleCondition(String),
    #[error("budget exceeded: need {needed} entries, budget {budget}; {hint}")]
    Budget {
        needed: u128,
        budget: u128,
        hint: String,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
