//! Batch experiments and self-checks used by the command-line tool.

pub mod bench;
pub mod verify;
