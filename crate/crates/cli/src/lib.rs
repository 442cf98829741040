//! File formats, instance generators and exact verifiers for `fairxos`.

pub mod bound;
pub mod format;
pub mod generate;
pub mod verify;

pub use bound::best_two_agent_split;
pub use format::{InstanceFile, ResultFile};
pub use generate::Family;
pub use verify::{verify, VerificationReport};
