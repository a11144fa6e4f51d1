//! Command-line front end: the graph6 codec, the report document schema,
//! and the subcommand dispatcher. All file and stream I/O lives here; the
//! algorithms come from the `reconlab` crate.

pub mod app;
pub mod graph6;
pub mod report;

pub use app::{configure_thread_pool, run_command, EXIT_STRICT_FAILURE, EXIT_USAGE};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error, GRAPH6_MAX_VERTICES};
pub use report::{ClaimEntry, ReportDocument, Subject, REPORT_SCHEMA_VERSION};
