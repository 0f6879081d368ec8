//! Experiment drivers: single solves, the four convergence tables, and
//! figure-data extraction, all emitting deterministic CSV bodies plus a JSON
//! manifest that suffices to reproduce every row.

mod config;
mod figures;
mod report;
mod runs;

pub use config::{Case, RunConfig, Scale};
pub use figures::emit_figure_data;
pub use report::{CoarseningCell, CoarseningReport, ConvergenceReport, Manifest, TableRow};
pub use runs::{
    run_combined, run_combined_with, run_solve, run_table_coarsening, run_table_h,
    run_table_h_with, run_table_lambda, run_table_lambda_with, SolveOutput,
};
