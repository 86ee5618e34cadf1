//! Command-line front end for `lclm-core`.

pub mod app;
pub mod parse;

pub use app::run;
