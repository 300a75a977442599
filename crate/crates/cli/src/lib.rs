//! Experiment harness for the chainlet calculus: identity checks and
//! convergence tables (E1–E8), Koch snowflake geometry, and result tables.

pub mod experiments;
pub mod koch;
pub mod table;

pub use experiments::{run, ExperimentId, ExperimentSpec};
pub use table::{ExperimentTable, ResultRow};
