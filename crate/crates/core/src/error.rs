use alloc::string::String;

/// Errors raised by the allocation toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("item index {item} out of range for {items} items")]
    ItemOutOfRange { item: usize, items: usize },

    #[error("agent index {agent} out of range for {agents} agents")]
    AgentOutOfRange { agent: usize, agents: usize },

    #[error("item {0} listed more than once")]
    DuplicateItem(usize),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("negative value {0}")]
    NegativeValue(String),

    #[error("an XOS valuation needs at least one additive function")]
    EmptyFamily,

    #[error("instance needs at least one agent")]
    NoAgents,

    #[error("set is not a subset of the reference set")]
    NotSubset,

    #[error("invalid shares: {0}")]
    InvalidShares(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is not 2-regular bipartite: {0}")]
    Structural(String),

    /// An exhaustive search would visit more candidates than allowed.
    #[error("enumeration of {required} candidates exceeds the limit of {limit}")]
    Capacity { required: String, limit: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
