//! Verification suites, JSON formats and command-line plumbing on top of
//! [`mocktheta_core`].

pub mod complex_arg;
pub mod formats;
pub mod points;
pub mod report;
pub mod suites;

pub use mocktheta_core as core;
