//! Scene configuration, JSON reports, OBJ export and verification for the
//! `gnr` command-line tool.

pub mod config;
pub mod error;
pub mod mesh;
pub mod report;
pub mod verify;

pub use config::{Scene, SceneConfig};
pub use error::{exit, CliError};
