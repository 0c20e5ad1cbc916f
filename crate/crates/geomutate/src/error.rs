use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] geomutate_core::Error),
    #[error("baseline is red, failing tests: {}", failing.join(", "))]
    BaselineRed { failing: Vec<String> },
    #[error("no mutants to run")]
    NoMutants,
    #[error("malformed manifest: {0}")]
    MalformedManifest(String),
    #[error("malformed fixture: {0}")]
    MalformedFixture(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown coordinate system `{0}`")]
    UnknownCrs(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
