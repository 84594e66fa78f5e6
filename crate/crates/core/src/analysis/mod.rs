//! Uncertainty studies, descriptive statistics, sensitivity sweeps,
//! technology ranking and CSV reports.

mod compare;
pub mod report;
mod stats;
mod study;
mod sweep;

pub use compare::{technology_comparison, RankEntry, MICROREACTOR};
pub use stats::{summarize_stats, Stats};
pub use study::{
    optimization_seed, optimize_base_case, run_uncertainty_study, StudyReport, StudyRow, VariableStats,
};
pub use sweep::{sensitivity_sweep, SweepParameter, SweepRow};
