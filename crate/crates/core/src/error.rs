use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {pos} in {input:?}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },

    #[error("cocycle table has no entry for ({0}, {1})")]
    MissingCocycleEntry(String, String),

    #[error("invalid group description: {0}")]
    InvalidGroup(String),

    #[error("character for variable {var} is not multiplicative or not a 4th root of unity: {msg}")]
    InvalidCharacter { var: String, msg: String },

    #[error("cochain degree {0} is out of range")]
    DegreeOutOfRange(usize),

    #[error("operation requires the {expected} preset")]
    WrongPreset { expected: &'static str },

    #[error("parameter {name} = {value} is outside the allowed space {space}")]
    ParameterOutOfSpace {
        name: String,
        value: String,
        space: &'static str,
    },

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("json: {0}")]
    Json(String),

    #[error("central element could not be rewritten in x^2, y^2, z^2, w: {0}")]
    Rewrite(String),
}

impl Error {
    pub(crate) fn parse(input: &str, pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            pos,
            msg: msg.into(),
        }
    }
}
