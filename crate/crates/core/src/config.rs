//! Strict JSON study configuration.
//!
//! Every field is optional; an empty object `{}` resolves to the built-in
//! reactor, financial and cost-distribution defaults. Unknown keys are
//! rejected and parse errors carry line and column.
//!
//! Units: money in dollars, power in MW_e, assays in wt% U-235, times in
//! years, burnup in MWd/kgU. Uranium prices are in $/kgU unless
//! `uranium_price_unit` is `usd_per_lb_u3o8`.

use crate::costs::{CostInputs, FinancialParams, LB_U3O8_PER_KG_U};
use crate::error::{Error, Result};
use crate::optimize::{GaConfig, SaConfig, DEFAULT_PENALTY_WEIGHT};
use crate::uncertainty::{default_parameters, CostParameter, Pdf, ScenarioSpace, UncertainParameter};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashSet;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UraniumPriceUnit {
    #[default]
    UsdPerKgu,
    UsdPerLbU3o8,
}

/// One externally sourced technology LCOE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Benchmark {
    pub name: String,
    /// $/MWh.
    pub lcoe: f64,
}

/// Technology LCOEs to rank the microreactor against.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BenchmarkTable(pub Vec<Benchmark>);

impl BenchmarkTable {
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for b in &self.0 {
            if !(b.lcoe >= 0.0 && b.lcoe.is_finite()) {
                return Err(Error::Config(format!(
                    "benchmark `{}` has invalid LCOE {}",
                    b.name, b.lcoe
                )));
            }
            if !seen.insert(b.name.as_str()) {
                return Err(Error::Config(format!("duplicate benchmark `{}`", b.name)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StudyConfig {
    pub seed: u64,
    pub financial: FinancialParams,
    /// The nine uncertain costs: distribution, nominal value and grid size.
    pub parameters: Vec<UncertainParameter>,
    pub uranium_price_unit: UraniumPriceUnit,
    /// Spent-fuel charge, $/MWh.
    pub c_spent: f64,
    /// Decommissioning, $/kW_e.
    pub c_dec: f64,
    /// $/MWh per (MWd/kgU)^2.
    pub penalty_weight: f64,
    pub ga: GaConfig,
    pub sa: SaConfig,
    pub benchmarks: BenchmarkTable,
    pub output_dir: PathBuf,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            financial: FinancialParams::default(),
            parameters: default_parameters(),
            uranium_price_unit: UraniumPriceUnit::UsdPerKgu,
            c_spent: 1.0,
            c_dec: 7500.0,
            penalty_weight: DEFAULT_PENALTY_WEIGHT,
            ga: GaConfig::default(),
            sa: SaConfig::default(),
            benchmarks: BenchmarkTable::default(),
            output_dir: PathBuf::from("results"),
        }
    }
}

impl StudyConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |e: Error| match e {
            Error::Config(m) => Error::Config(m),
            other => Error::Config(other.to_string()),
        };
        self.financial.validate().map_err(cfg)?;
        self.scenario_space().validate().map_err(cfg)?;
        self.ga.validate()?;
        self.sa.validate()?;
        self.benchmarks.validate()?;
        if !(self.penalty_weight >= 0.0 && self.penalty_weight.is_finite()) {
            return Err(Error::Config(format!(
                "penalty_weight must be non-negative, got {}",
                self.penalty_weight
            )));
        }
        Ok(())
    }

    /// Cost distributions with uranium converted to $/kgU.
    pub fn scenario_space(&self) -> ScenarioSpace {
        let k = match self.uranium_price_unit {
            UraniumPriceUnit::UsdPerKgu => 1.0,
            UraniumPriceUnit::UsdPerLbU3o8 => LB_U3O8_PER_KG_U,
        };
        let params = self
            .parameters
            .iter()
            .map(|p| {
                if p.name != CostParameter::Uranium || k == 1.0 {
                    return *p;
                }
                let pdf = match p.pdf {
                    Pdf::Uniform { min, max } => Pdf::Uniform { min: min * k, max: max * k },
                    Pdf::Triangular { min, mode, max } => Pdf::Triangular {
                        min: min * k,
                        mode: mode * k,
                        max: max * k,
                    },
                };
                UncertainParameter {
                    pdf,
                    nominal: p.nominal * k,
                    ..*p
                }
            })
            .collect();
        ScenarioSpace {
            params,
            c_spent: self.c_spent,
            c_dec: self.c_dec,
        }
    }

    /// Base-case unit costs.
    pub fn base_costs(&self) -> CostInputs {
        self.scenario_space().nominal_costs()
    }

    /// Canonical JSON of the fully resolved configuration.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON, lowercase hex.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_canonical_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
