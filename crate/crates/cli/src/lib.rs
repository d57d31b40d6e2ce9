//! Std companion to `entropic-frames-core`: frame/φ files, JSON and CSV
//! reports, run manifests, parallel drivers and the `entropic-frames` CLI.

pub mod cli;
pub mod drivers;
pub mod grammar;
pub mod io;

pub use cli::{run, Exit};
