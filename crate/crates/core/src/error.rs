use crate::design::ReactorDesign;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of a formula.
    #[error("{what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// A design variable lies outside the admissible box.
    #[error("design variable `{name}` = {value} outside [{lower}, {upper}]")]
    OutOfBounds {
        name: &'static str,
        value: f64,
        lower: f64,
        upper: f64,
    },

    /// The objective produced a NaN or infinity.
    #[error("objective returned {value} at {design:?}")]
    Evaluation { design: ReactorDesign, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("scenario {id}: {source}")]
    Scenario {
        id: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }
}
