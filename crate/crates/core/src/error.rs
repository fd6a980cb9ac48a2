use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid singularity class: {0}")]
    InvalidClass(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("{what} is not defined: {reason}")]
    NotDefined { what: &'static str, reason: String },

    #[error("{what} unavailable for {class}")]
    Unavailable { what: &'static str, class: String },

    #[error("orbifold Euler number inapplicable for {class} at alpha = {alpha}: {reason}")]
    Inapplicable { class: String, alpha: String, reason: String },

    #[error("invalid hunt request: {0}")]
    InvalidRequest(String),

    #[error("unknown gallery entry: {0}")]
    UnknownEntry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("facts file: {0}")]
    Facts(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
