//! Levelized cost of energy (LCOE) model and design-space optimizer for a
//! generic uranium-fuelled nuclear microreactor.
//!
//! The crate is organised bottom-up:
//!
//! - [`fuelcycle`]: mass flows, separative work, specific power and the two
//!   fuel-cycle consistency relations.
//! - [`costs`]: annuity factors and the per-MWh cost breakdown.
//! - [`uncertainty`]: cost distributions, 100-point grids, roulette-wheel
//!   sampling and scenario generation.
//! - [`optimize`]: penalized objective, genetic algorithm, simulated annealing
//!   and the multi-restart driver.
//! - [`analysis`]: uncertainty studies, descriptive statistics, sensitivity
//!   sweeps, technology ranking and CSV reports.
//! - [`config`]: the strict JSON study configuration with built-in defaults.
//!
//! All stochastic components are driven by [`rng::SeedScheme`], so every
//! result is a pure function of its inputs and a `u64` seed.

// `!(x > 0.0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod costs;
pub mod design;
pub mod error;
pub mod fuelcycle;
pub mod optimize;
pub mod rng;
pub mod uncertainty;

pub use analysis::{Stats, StudyReport};
pub use config::StudyConfig;
pub use costs::{CostInputs, DowntimeModel, FinancialParams, InflationMode, LcoeBreakdown};
pub use design::{DesignBounds, ReactorDesign};
pub use error::{Error, Result};
pub use fuelcycle::{EnrichmentAssays, MassFlows};
pub use optimize::{GaConfig, OptimizationResult, SaConfig};
pub use uncertainty::{CostParameter, Pdf, Scenario, StudyMode, UncertainParameter};

/// Hours in a (non-leap) year.
pub const HOURS_PER_YEAR: f64 = 8760.0;
