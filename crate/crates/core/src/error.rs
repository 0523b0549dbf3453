use thiserror::Error;

use crate::words::Letter;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("letter `{letter}` is not in the alphabet of {group}")]
    Alphabet { letter: Letter, group: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown group `{0}` (expected one of h0,h1,h2,fef,h,ha,k,g)")]
    UnknownGroup(String),

    #[error("unknown subgroup `{0}`")]
    UnknownSubgroup(String),

    #[error("homomorphism error: {0}")]
    Hom(String),

    #[error("target group error: {0}")]
    Target(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
