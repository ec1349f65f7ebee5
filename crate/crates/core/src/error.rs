use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested collective level has no support, e.g. more atomic
    /// excitations than atoms.
    #[error("degenerate subspace: e_{order} vanishes over {n_values} couplings")]
    DegenerateSubspace { order: usize, n_values: usize },

    #[error("resource limit: {what} is {requested}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("numeric failure: {reason} (residual {residual:e})")]
    NumericFailure { reason: String, residual: f64 },
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
