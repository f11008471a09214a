//! Differential verification, rendering, tracing and benchmarking on top of
//! the library structures. The `swtree` binary is a thin wrapper over this.

pub mod bench;
pub mod render;
pub mod shrink;
pub mod sizes;
pub mod verify;
pub mod workload;

use thiserror::Error;

use crate::structure::StructureKind;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] crate::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid size list `{0}`: {1}")]
    Sizes(String, String),

    #[error("cannot build {structure}: {source}")]
    Construction {
        structure: StructureKind,
        source: crate::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
