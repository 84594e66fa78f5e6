use super::stats::{summarize_stats, Stats};
use crate::config::StudyConfig;
use crate::error::{Error, Result};
use crate::optimize::{LcoeProblem, OptimizationResult};
use crate::rng::{label, SeedScheme};
use crate::uncertainty::{generate_study, Scenario, StudyMode};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub scenario: Scenario,
    pub result: OptimizationResult,
}

impl StudyRow {
    /// Percent of the pre-credit LCOE removed by the tax credit.
    pub fn ptc_reduction_pct(&self) -> f64 {
        100.0 * self.result.breakdown.ptc_reduction()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariableStats {
    pub lcoe: Stats,
    pub p_elec: Stats,
    pub x_p: Stats,
    pub x_t: Stats,
    pub t_refuel: Stats,
    pub db: Stats,
}

impl VariableStats {
    /// Rows in report order with display labels.
    pub fn rows(&self) -> [(&'static str, &Stats); 6] {
        [
            ("lcoe_usd_per_mwh", &self.lcoe),
            ("p_elec_mwe", &self.p_elec),
            ("x_p_wt_pct", &self.x_p),
            ("x_t_wt_pct", &self.x_t),
            ("t_refuel_yr", &self.t_refuel),
            ("db_mwd_per_kg", &self.db),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub mode: StudyMode,
    pub seed: u64,
    /// One row per scenario in id order.
    pub rows: Vec<StudyRow>,
    /// Absent for single-scenario studies.
    pub stats: Option<VariableStats>,
    /// Smallest and largest credit share across scenarios, percent.
    pub ptc_reduction_range: (f64, f64),
}

impl StudyReport {
    pub fn column(&self, f: impl Fn(&StudyRow) -> f64) -> Vec<f64> {
        self.rows.iter().map(f).collect()
    }
}

/// Optimizer seed of scenario `id`. The base case uses id 0.
pub fn optimization_seed(seed: u64, id: usize) -> u64 {
    SeedScheme::new(seed).derive(&[label::OPTIMIZE, id as u64])
}

/// GA optimum of the nominal-cost problem.
pub fn optimize_base_case(cfg: &StudyConfig, seed: u64) -> Result<OptimizationResult> {
    let problem = LcoeProblem::new(cfg.base_costs(), cfg.financial, cfg.penalty_weight)?;
    problem.optimize_ga(&cfg.ga, optimization_seed(seed, 0))
}

/// Samples `n` scenarios of `mode` and optimizes each one. Scenarios run in
/// parallel; the report does not depend on the worker count.
pub fn run_uncertainty_study(cfg: &StudyConfig, mode: StudyMode, n: usize, seed: u64) -> Result<StudyReport> {
    let scenarios = generate_study(&cfg.scenario_space(), mode, n, seed)?;
    let rows = scenarios
        .into_par_iter()
        .map(|scenario| {
            let id = scenario.id;
            LcoeProblem::new(scenario.costs, cfg.financial, cfg.penalty_weight)
                .and_then(|p| p.optimize_ga(&cfg.ga, optimization_seed(seed, id)))
                .map(|result| StudyRow { scenario, result })
                .map_err(|e| Error::Scenario {
                    id,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    let stats = if rows.len() >= 2 {
        let col = |f: fn(&StudyRow) -> f64| summarize_stats(&rows.iter().map(f).collect::<Vec<_>>());
        Some(VariableStats {
            lcoe: col(|r| r.result.lcoe)?,
            p_elec: col(|r| r.result.best_design.p_elec)?,
            x_p: col(|r| r.result.best_design.x_p)?,
            x_t: col(|r| r.result.best_design.x_t)?,
            t_refuel: col(|r| r.result.best_design.t_refuel)?,
            db: col(|r| r.result.best_design.db)?,
        })
    } else {
        None
    };
    let ptc_reduction_range = rows
        .iter()
        .map(StudyRow::ptc_reduction_pct)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));

    Ok(StudyReport {
        mode,
        seed,
        rows,
        stats,
        ptc_reduction_range,
    })
}
