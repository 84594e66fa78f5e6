use super::study::optimization_seed;
use crate::config::StudyConfig;
use crate::costs::{FinancialParams, InflationMode, LcoeBreakdown};
use crate::design::ReactorDesign;
use crate::error::{Error, Result};
use crate::optimize::LcoeProblem;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Efficiency,
    DiscountRate,
    /// Forces escalated inflation so the rate has an effect.
    Inflation,
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParameter::Efficiency => "efficiency",
            SweepParameter::DiscountRate => "discount",
            SweepParameter::Inflation => "inflation",
        }
    }

    pub fn default_values(self) -> &'static [f64] {
        match self {
            SweepParameter::Efficiency => &[0.35, 0.40, 0.45, 0.50],
            SweepParameter::DiscountRate => &[0.03, 0.05],
            SweepParameter::Inflation => &[0.002, 0.02],
        }
    }

    fn apply(self, fin: &FinancialParams, v: f64) -> FinancialParams {
        let mut f = *fin;
        match self {
            SweepParameter::Efficiency => f.eta = v,
            SweepParameter::DiscountRate => f.r = v,
            SweepParameter::Inflation => {
                f.infl = v;
                f.inflation_mode = InflationMode::Escalated;
            }
        }
        f
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "efficiency" | "eta" => Ok(SweepParameter::Efficiency),
            "discount" | "discount_rate" => Ok(SweepParameter::DiscountRate),
            "inflation" => Ok(SweepParameter::Inflation),
            other => Err(Error::Config(format!(
                "unknown sweep parameter `{other}` (expected efficiency, discount or inflation)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub design: ReactorDesign,
    pub breakdown: LcoeBreakdown,
    pub burnup_residual: f64,
}

/// Base case re-evaluated at each parameter value, in input order. With
/// `fixed` the design is held; otherwise it is re-optimized with the same
/// seed for every value.
pub fn sensitivity_sweep(
    cfg: &StudyConfig,
    param: SweepParameter,
    values: &[f64],
    fixed: Option<ReactorDesign>,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    let costs = cfg.base_costs();
    values
        .iter()
        .map(|&value| {
            let problem = LcoeProblem::new(costs, param.apply(&cfg.financial, value), cfg.penalty_weight)?;
            let design = match fixed {
                Some(d) => d,
                None => problem.optimize_ga(&cfg.ga, optimization_seed(seed, 0))?.best_design,
            };
            let (breakdown, burnup_residual) = problem.evaluate(&design)?;
            Ok(SweepRow {
                value,
                design,
                breakdown,
                burnup_residual,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::DowntimeModel;

    fn fixed_cfg() -> (StudyConfig, ReactorDesign) {
        let mut cfg = StudyConfig::default();
        cfg.financial.downtime_model = DowntimeModel::Off;
        (cfg, ReactorDesign::new(19.13, 5.0, 0.2913, 6.24, 30.0).unwrap())
    }

    #[test]
    fn fuel_halves_when_efficiency_doubles() {
        let (cfg, d) = fixed_cfg();
        let rows = sensitivity_sweep(&cfg, SweepParameter::Efficiency, &[0.35, 0.70], Some(d), 0).unwrap();
        assert!((rows[1].breakdown.fuel / rows[0].breakdown.fuel - 0.5).abs() < 1e-6);
        assert_eq!(rows[0].value, 0.35);
    }

    #[test]
    fn discount_rate_scales_capital_by_crf_ratio() {
        let (cfg, d) = fixed_cfg();
        let rows = sensitivity_sweep(&cfg, SweepParameter::DiscountRate, &[0.03, 0.05], Some(d), 0).unwrap();
        assert!((rows[0].breakdown.capital - 24.75).abs() < 0.05);
        assert!((rows[1].breakdown.capital - 29.55).abs() < 0.05);
    }

    #[test]
    fn inflation_sweep_is_escalated() {
        let (cfg, d) = fixed_cfg();
        let rows = sensitivity_sweep(&cfg, SweepParameter::Inflation, &[0.0, 0.02], Some(d), 0).unwrap();
        assert!(rows[1].breakdown.total > rows[0].breakdown.total);
    }

    #[test]
    fn parse_names() {
        assert_eq!("discount".parse::<SweepParameter>().unwrap(), SweepParameter::DiscountRate);
        assert!("pressure".parse::<SweepParameter>().is_err());
    }
}
