//! File formats and report emission for the `zcenter` binary.

pub mod io;
pub mod report;
