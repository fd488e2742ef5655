//! Library surface of the satshift command line: subcommand implementations,
//! reference tables, and row rendering, kept callable for tests.

pub mod commands;
pub mod golden;
pub mod output;

pub use commands::{analyze_scenario, cmd_analyze, cmd_table1, cmd_table2, cmd_validate};
pub use output::{Format, OutputRow};
