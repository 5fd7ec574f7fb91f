//! Library side of the `lensform` CLI: typed output documents and the
//! command implementations, kept separate from argument parsing so tests
//! can drive them directly.

pub mod commands;
pub mod output;
