//! File formats, manifests, reports, and fixtures for the evograph command
//! line.
//!
//! Snapshots are plain text edge lists: one `u v` pair per line, `N u` lines
//! for isolated nodes, `#` comments. A series manifest is a JSON document
//! listing labeled snapshot paths in time order.

pub mod edgelist;
pub mod error;
pub mod manifest;
pub mod report;

pub use error::CliError;
