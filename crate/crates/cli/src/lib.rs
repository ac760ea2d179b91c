//! Library half of the `delaunay-lab` command-line tool: the subcommands as
//! plain functions, their CSV/JSON output, and the verification suite.

pub mod commands;
pub mod format;
pub mod verify;
