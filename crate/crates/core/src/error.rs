use alloc::string::String;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A precondition of the called operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The requested size exceeds a configured limit.
    #[error("resource limit: {what} = {requested} exceeds the limit {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    /// A fixed-width exact accumulator would have overflowed.
    #[error("exact arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
