//! Command line front end for the quantum even sphere toolkit: expression
//! parsing, command dispatch and the verification suites.

pub mod cli;
pub mod parser;
pub mod report;
pub mod suites;

pub use cli::{run, Cli, CliError, Command, Format, Output};
pub use parser::{parse_expression, ParseError, Target, Value};
