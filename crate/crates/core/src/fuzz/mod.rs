//! Seeded instance generation, suite orchestration and report emission: the
//! operational front end that drives every law over random matrix instances.

pub mod gen;
pub mod report;
pub mod rng;
pub mod suite;

pub use gen::{gen_random_invertible, gen_random_pd, generate_instance};
pub use report::{emit_report, render_report, report_from_json, report_to_csv, report_to_json};
pub use rng::{derive_seed, CounterRng};
pub use suite::{
    run_suite, run_suite_sequential, selected_laws, FuzzConfig, LawSummary, ReportFormat,
    SuiteReport,
};
