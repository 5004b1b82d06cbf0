pub mod formats;
pub mod report;
pub mod runner;

pub use qdefect_core as core;
