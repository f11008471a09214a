use thiserror::Error;

/// Errors raised by the groups, the tree, and the baseline structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a structure needs at least one element")]
    EmptyStructure,

    #[error("element index {index} is out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("prefix length {count} is out of range 1..={len}")]
    CountOutOfRange { count: usize, len: usize },

    #[error("node {index} with child offset {left} is not an internal node of this tree")]
    InvalidNode { index: usize, left: usize },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("operand mismatch: {0}")]
    OperandMismatch(String),

    #[error("unknown group id `{0}` (expected wrap-add, mod-add:<p>, perm:<k> or gl2:<p>)")]
    UnknownGroup(String),

    #[error("unknown structure `{0}` (expected swtree, segtree, fenwick or oracle)")]
    UnknownStructure(String),

    #[error("invalid group parameters: {0}")]
    InvalidGroup(String),

    #[error("operation is not commutative: {0}")]
    NonCommutative(String),

    #[error("cannot parse element literal `{literal}`: {reason}")]
    ParseElement { literal: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
