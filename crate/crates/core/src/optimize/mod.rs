//! Penalized LCOE objective and the metaheuristics that minimize it.
//!
//! The empirical burnup relation cannot be satisfied anywhere in the design
//! box, so it enters as a quadratic penalty `lambda * residual^2` and the
//! residual is always reported next to the optimum. The uranium mass balance
//! holds by construction of the mass flows and is not penalized.

mod ga;
mod sa;

pub use ga::ga_minimize;
pub use sa::sa_minimize;

use crate::costs::{self, CostInputs, FinancialParams, LcoeBreakdown};
use crate::design::{DesignBounds, ReactorDesign, DIM};
use crate::error::{Error, Result};
use crate::fuelcycle;
use crate::rng::{label, SeedScheme};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Default penalty weight, $/MWh per (MWd/kg)^2.
pub const DEFAULT_PENALTY_WEIGHT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Mutation standard deviation as a fraction of each variable's range.
    pub mutation_scale: f64,
    pub elite_count: usize,
    pub stall_generations: usize,
    pub restarts: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 100,
            generations: 200,
            crossover_rate: 0.8,
            mutation_rate: 0.05,
            mutation_scale: 0.1,
            elite_count: 2,
            stall_generations: 50,
            restarts: 20,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |d: String| Err(Error::Config(format!("ga: {d}")));
        if self.population < 4 {
            return bad(format!("population must be at least 4, got {}", self.population));
        }
        for (name, v) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        if !(self.mutation_scale >= 0.0 && self.mutation_scale.is_finite()) {
            return bad(format!("mutation_scale must be non-negative, got {}", self.mutation_scale));
        }
        if self.elite_count >= self.population {
            return bad(format!(
                "elite_count {} must be below population {}",
                self.elite_count, self.population
            ));
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SaConfig {
    /// Starting temperature, $/MWh.
    pub initial_temp: f64,
    /// Geometric cooling factor applied after each step.
    pub cooling_rate: f64,
    pub steps: usize,
    pub moves_per_step: usize,
    /// Proposal standard deviation as a fraction of each variable's range.
    pub step_scale: f64,
    pub restarts: usize,
}

impl Default for SaConfig {
    fn default() -> Self {
        Self {
            initial_temp: 10.0,
            cooling_rate: 0.95,
            steps: 200,
            moves_per_step: 50,
            step_scale: 0.1,
            restarts: 5,
        }
    }
}

impl SaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |d: String| Err(Error::Config(format!("sa: {d}")));
        if !(self.initial_temp > 0.0 && self.initial_temp.is_finite()) {
            return bad(format!("initial_temp must be positive, got {}", self.initial_temp));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return bad(format!("cooling_rate must lie in (0, 1), got {}", self.cooling_rate));
        }
        if !(self.step_scale > 0.0 && self.step_scale.is_finite()) {
            return bad(format!("step_scale must be positive, got {}", self.step_scale));
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1".into());
        }
        Ok(())
    }
}

/// Best point found by one minimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub design: ReactorDesign,
    pub value: f64,
    pub evaluations: usize,
    /// Best-so-far objective after each generation or temperature step.
    pub history: Vec<f64>,
}

/// Best of several independently seeded runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub best: Minimum,
    pub best_index: usize,
    pub restart_bests: Vec<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_design: ReactorDesign,
    /// Unpenalized LCOE, $/MWh.
    pub lcoe: f64,
    pub breakdown: LcoeBreakdown,
    /// MWd/kg.
    pub burnup_residual: f64,
    /// $/MWh-equivalent.
    pub penalty_value: f64,
    pub evaluations: usize,
    pub restart_bests: Vec<f64>,
}

impl OptimizationResult {
    pub fn penalized_objective(&self) -> f64 {
        self.lcoe + self.penalty_value
    }
}

/// LCOE plus `lambda * burnup_residual^2` at the effective capacity factor.
pub fn penalized_objective(
    design: &ReactorDesign,
    costs: &CostInputs,
    fin: &FinancialParams,
    lambda: f64,
) -> Result<f64> {
    let b = costs::lcoe_breakdown(design, costs, fin)?;
    let cf = costs::effective_capacity_factor(fin, design.t_refuel);
    let r = fuelcycle::burnup_residual(design, cf)?;
    Ok(b.total + lambda * r * r)
}

/// Sub-seed of restart `index`.
pub fn restart_seed(seed: u64, index: usize) -> u64 {
    SeedScheme::new(seed).derive(&[label::RESTART, index as u64])
}

/// Runs `minimizer` once per restart on derived sub-seeds and keeps the
/// lowest objective; ties go to the lowest restart index. Restarts run in
/// parallel and are reduced in index order.
pub fn multi_restart_best<M>(minimizer: M, restarts: usize, seed: u64) -> Result<RestartOutcome>
where
    M: Fn(u64) -> Result<Minimum> + Sync,
{
    if restarts == 0 {
        return Err(Error::Config("restarts must be at least 1".into()));
    }
    let runs = (0..restarts)
        .into_par_iter()
        .map(|k| minimizer(restart_seed(seed, k)))
        .collect::<Result<Vec<_>>>()?;
    let mut best_index = 0;
    for (k, run) in runs.iter().enumerate() {
        if run.value < runs[best_index].value {
            best_index = k;
        }
    }
    let restart_bests = runs.iter().map(|m| m.value).collect();
    let evaluations = runs.iter().map(|m| m.evaluations).sum();
    let best = runs.into_iter().nth(best_index).expect("non-empty");
    Ok(RestartOutcome {
        best,
        best_index,
        restart_bests,
        evaluations,
    })
}

/// The LCOE minimization problem for one cost realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcoeProblem {
    pub costs: CostInputs,
    pub fin: FinancialParams,
    pub penalty_weight: f64,
    pub bounds: DesignBounds,
}

impl LcoeProblem {
    pub fn new(costs: CostInputs, fin: FinancialParams, penalty_weight: f64) -> Result<Self> {
        costs.validate()?;
        fin.validate()?;
        if !(penalty_weight >= 0.0 && penalty_weight.is_finite()) {
            return Err(Error::Config(format!(
                "penalty weight must be non-negative, got {penalty_weight}"
            )));
        }
        Ok(Self {
            costs,
            fin,
            penalty_weight,
            bounds: DesignBounds::default(),
        })
    }

    pub fn objective(&self, d: &ReactorDesign) -> Result<f64> {
        penalized_objective(d, &self.costs, &self.fin, self.penalty_weight)
    }

    /// Breakdown with the penalty filled in, and the burnup residual.
    pub fn evaluate(&self, d: &ReactorDesign) -> Result<(LcoeBreakdown, f64)> {
        let mut b = costs::lcoe_breakdown(d, &self.costs, &self.fin)?;
        let cf = costs::effective_capacity_factor(&self.fin, d.t_refuel);
        let r = fuelcycle::burnup_residual(d, cf)?;
        b.penalty = self.penalty_weight * r * r;
        Ok((b, r))
    }

    pub fn optimize_ga(&self, config: &GaConfig, seed: u64) -> Result<OptimizationResult> {
        config.validate()?;
        let run = multi_restart_best(
            |s| ga_minimize(|d| self.objective(d), &self.bounds, config, s),
            config.restarts,
            seed,
        )?;
        self.assemble(run)
    }

    pub fn optimize_sa(&self, config: &SaConfig, seed: u64) -> Result<OptimizationResult> {
        config.validate()?;
        let single = SaConfig {
            restarts: 1,
            ..*config
        };
        let run = multi_restart_best(
            |s| sa_minimize(|d| self.objective(d), &self.bounds, &single, s),
            config.restarts,
            seed,
        )?;
        self.assemble(run)
    }

    fn assemble(&self, run: RestartOutcome) -> Result<OptimizationResult> {
        let d = run.best.design;
        let (breakdown, residual) = self.evaluate(&d)?;
        Ok(OptimizationResult {
            best_design: d,
            lcoe: breakdown.total,
            burnup_residual: residual,
            penalty_value: breakdown.penalty,
            breakdown,
            evaluations: run.evaluations,
            restart_bests: run.restart_bests,
        })
    }
}

/// Evaluates the objective and rejects non-finite values.
pub(crate) fn checked_eval<F>(objective: &F, v: &[f64; DIM]) -> Result<f64>
where
    F: Fn(&ReactorDesign) -> Result<f64>,
{
    let design = ReactorDesign::from_array(*v);
    let value = objective(&design)?;
    if !value.is_finite() {
        return Err(Error::Evaluation { design, value });
    }
    Ok(value)
}

/// Moves coordinates lying within `fraction` of a bound onto that bound when
/// doing so does not worsen the objective.
pub(crate) fn snap_to_bounds<F>(
    objective: &F,
    bounds: &DesignBounds,
    best: &mut [f64; DIM],
    best_value: &mut f64,
    fraction: f64,
) -> Result<usize>
where
    F: Fn(&ReactorDesign) -> Result<f64>,
{
    let mut evaluations = 0;
    for i in 0..DIM {
        let tol = fraction * bounds.range(i);
        for target in [bounds.lower[i], bounds.upper[i]] {
            if best[i] == target || (best[i] - target).abs() > tol {
                continue;
            }
            let mut trial = *best;
            trial[i] = target;
            let v = checked_eval(objective, &trial)?;
            evaluations += 1;
            if v <= *best_value {
                *best = trial;
                *best_value = v;
            }
        }
    }
    Ok(evaluations)
}
