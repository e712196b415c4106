//! File formats, catalog storage, reports, the verification suite and the
//! command-line front end for `pplab-core`.

pub mod catalog;
pub mod cli;
pub mod formats;
pub mod report;
pub mod verify;
