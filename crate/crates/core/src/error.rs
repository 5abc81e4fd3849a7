use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("modular case: characteristic {p} divides the group order {order}")]
    Modular { p: u32, order: usize },
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("not a normal subgroup")]
    NotNormal,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("map is not a homomorphism: {0}")]
    NotHom(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub(crate) fn cap<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Cap(msg.into()))
}
