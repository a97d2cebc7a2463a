//! Seeded samplers, property suites and the file formats shared with the CLI.

pub mod io;
pub mod rng;
pub mod sample;
pub mod suite;

pub use io::{
    export_generators, format_form, format_generators, import_generators, parse_form,
    parse_generators, parse_scalar, read_form, write_form, FormRecord, TermRecord,
};
pub use rng::{trial_seed, SplitMix64};
pub use sample::{sample, SampleFamily, SampleSpec};
pub use suite::{replay, run_suite, Failure, SuiteReport, SUITES};
