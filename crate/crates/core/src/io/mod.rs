pub mod experiment;
pub mod parse;
pub mod suite;

pub use parse::{parse, parse_car, parse_element, parse_value, Ast, Value};
pub use suite::{run_suite, run_timed, Backend, Config, SuiteRun, SUITES};
pub use experiment::{Experiment, Observable};
