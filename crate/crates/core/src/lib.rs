pub mod classify;
pub mod cochain;
pub mod decorated;
pub mod error;
pub mod format;
pub mod ghosts;
pub mod graph;
pub mod modular;
pub mod props;
pub mod report;

pub use error::{Error, Result};
