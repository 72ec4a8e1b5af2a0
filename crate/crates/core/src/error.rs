use thiserror::Error;

/// Errors surfaced by mesh construction, assembly, factorization and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("matrix is not positive definite ({0})")]
    Definiteness(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("capability limit exceeded: {0}")]
    Capability(String),

    #[error("preconditioner error: {0}")]
    Preconditioner(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("point ({x}, {y}) lies outside the {domain} subdomain")]
    Domain { x: f64, y: f64, domain: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
