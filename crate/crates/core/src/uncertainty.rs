//! Cost distributions, their 100-point grids, roulette-wheel sampling and
//! scenario generation.
//!
//! Each uncertain parameter is discretized on an equispaced grid from its
//! minimum to its maximum. A scenario draws one grid index per in-group
//! parameter by roulette selection with weights equal to the density at each
//! grid point, so sampled values always lie exactly on the grid.

use crate::costs::CostInputs;
use crate::error::{Error, Result};
use crate::rng::{label, SeedScheme};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Default number of grid points per parameter.
pub const DEFAULT_GRID_POINTS: usize = 100;

fn default_grid_points() -> usize {
    DEFAULT_GRID_POINTS
}

/// The nine uncertain cost parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostParameter {
    /// Overnight capital cost, $/kW_e.
    Occ,
    /// O&M staff count.
    NFte,
    /// Compensation per FTE, $/yr.
    SFte,
    /// Fixed O&M, $/yr.
    Fom,
    /// Variable O&M, $/MWh.
    Vom,
    /// Yellowcake, $/kgU.
    Uranium,
    /// Conversion, $/kgU.
    Conversion,
    /// Enrichment, $/SWU.
    Enrichment,
    /// Fabrication, $/kgU.
    Fabrication,
}

impl CostParameter {
    pub const ALL: [CostParameter; 9] = [
        CostParameter::Occ,
        CostParameter::NFte,
        CostParameter::SFte,
        CostParameter::Fom,
        CostParameter::Vom,
        CostParameter::Uranium,
        CostParameter::Conversion,
        CostParameter::Enrichment,
        CostParameter::Fabrication,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CostParameter::Occ => "occ",
            CostParameter::NFte => "n_fte",
            CostParameter::SFte => "s_fte",
            CostParameter::Fom => "fom",
            CostParameter::Vom => "vom",
            CostParameter::Uranium => "uranium",
            CostParameter::Conversion => "conversion",
            CostParameter::Enrichment => "enrichment",
            CostParameter::Fabrication => "fabrication",
        }
    }

    pub fn get(self, c: &CostInputs) -> f64 {
        match self {
            CostParameter::Occ => c.occ,
            CostParameter::NFte => c.n_fte,
            CostParameter::SFte => c.s_fte,
            CostParameter::Fom => c.fom,
            CostParameter::Vom => c.vom,
            CostParameter::Uranium => c.c_yc,
            CostParameter::Conversion => c.c_conv,
            CostParameter::Enrichment => c.c_swu,
            CostParameter::Fabrication => c.c_fab,
        }
    }

    pub fn set(self, c: &mut CostInputs, v: f64) {
        let slot = match self {
            CostParameter::Occ => &mut c.occ,
            CostParameter::NFte => &mut c.n_fte,
            CostParameter::SFte => &mut c.s_fte,
            CostParameter::Fom => &mut c.fom,
            CostParameter::Vom => &mut c.vom,
            CostParameter::Uranium => &mut c.c_yc,
            CostParameter::Conversion => &mut c.c_conv,
            CostParameter::Enrichment => &mut c.c_swu,
            CostParameter::Fabrication => &mut c.c_fab,
        };
        *slot = v;
    }

    /// Staff counts are whole people.
    pub fn is_integer(self) -> bool {
        self == CostParameter::NFte
    }
}

/// Which parameter group a study perturbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyMode {
    All,
    Occ,
    Om,
    Fuel,
    None,
}

impl StudyMode {
    pub const STUDIES: [StudyMode; 4] = [StudyMode::All, StudyMode::Occ, StudyMode::Om, StudyMode::Fuel];

    pub fn includes(self, p: CostParameter) -> bool {
        use CostParameter::*;
        match self {
            StudyMode::All => true,
            StudyMode::None => false,
            StudyMode::Occ => p == Occ,
            StudyMode::Om => matches!(p, NFte | SFte | Fom | Vom),
            StudyMode::Fuel => matches!(p, Uranium | Conversion | Enrichment | Fabrication),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StudyMode::All => "all",
            StudyMode::Occ => "occ",
            StudyMode::Om => "om",
            StudyMode::Fuel => "fuel",
            StudyMode::None => "none",
        }
    }
}

impl fmt::Display for StudyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StudyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(StudyMode::All),
            "occ" => Ok(StudyMode::Occ),
            "om" => Ok(StudyMode::Om),
            "fuel" => Ok(StudyMode::Fuel),
            "none" => Ok(StudyMode::None),
            other => Err(Error::Config(format!(
                "unknown study mode `{other}` (expected all, occ, om, fuel or none)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Pdf {
    Uniform { min: f64, max: f64 },
    Triangular { min: f64, mode: f64, max: f64 },
}

impl Pdf {
    pub fn min(&self) -> f64 {
        match *self {
            Pdf::Uniform { min, .. } | Pdf::Triangular { min, .. } => min,
        }
    }

    pub fn max(&self) -> f64 {
        match *self {
            Pdf::Uniform { max, .. } | Pdf::Triangular { max, .. } => max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (min, max) = (self.min(), self.max());
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::domain("pdf", format!("need min < max, got [{min}, {max}]")));
        }
        if let Pdf::Triangular { mode, .. } = *self {
            if !(min <= mode && mode <= max) {
                return Err(Error::domain(
                    "pdf",
                    format!("triangular mode {mode} outside [{min}, {max}]"),
                ));
            }
        }
        Ok(())
    }

    /// Closed-form mean of the continuous distribution.
    pub fn mean(&self) -> f64 {
        match *self {
            Pdf::Uniform { min, max } => 0.5 * (min + max),
            Pdf::Triangular { min, mode, max } => (min + mode + max) / 3.0,
        }
    }
}

/// Probability density of `pdf` at `x`.
pub fn pdf_density(pdf: &Pdf, x: f64) -> Result<f64> {
    pdf.validate()?;
    let d = match *pdf {
        Pdf::Uniform { min, max } => {
            if (min..=max).contains(&x) {
                1.0 / (max - min)
            } else {
                0.0
            }
        }
        Pdf::Triangular { min, mode, max } => {
            let span = max - min;
            if x < min || x > max {
                0.0
            } else if x < mode {
                2.0 * (x - min) / (span * (mode - min))
            } else if x > mode {
                2.0 * (max - x) / (span * (max - mode))
            } else {
                2.0 / span
            }
        }
    };
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UncertainParameter {
    pub name: CostParameter,
    pub pdf: Pdf,
    pub nominal: f64,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
}

impl UncertainParameter {
    pub fn new(name: CostParameter, pdf: Pdf, nominal: f64) -> Self {
        Self {
            name,
            pdf,
            nominal,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.pdf.validate()?;
        if !(self.pdf.min() <= self.nominal && self.nominal <= self.pdf.max()) {
            return Err(Error::domain(
                "uncertain parameter",
                format!(
                    "`{}` nominal {} outside [{}, {}]",
                    self.name.name(),
                    self.nominal,
                    self.pdf.min(),
                    self.pdf.max()
                ),
            ));
        }
        if self.grid_points < 2 {
            return Err(Error::domain(
                "uncertain parameter",
                format!("`{}` needs at least 2 grid points", self.name.name()),
            ));
        }
        Ok(())
    }

    /// Grid value `k` without materializing the grid.
    pub fn grid_value(&self, k: usize) -> f64 {
        let (min, max) = (self.pdf.min(), self.pdf.max());
        min + (max - min) * k as f64 / (self.grid_points - 1) as f64
    }

    /// Density at every grid point.
    pub fn grid_weights(&self) -> Result<Vec<f64>> {
        parameter_grid(self)
            .iter()
            .map(|&x| pdf_density(&self.pdf, x))
            .collect()
    }

    /// Value stored in a scenario for grid index `k`.
    pub fn realize(&self, k: usize) -> f64 {
        let v = self.grid_value(k);
        if self.name.is_integer() {
            v.round()
        } else {
            v
        }
    }
}

/// `min + (max - min) k / (n - 1)` for `k = 0..n`.
pub fn parameter_grid(param: &UncertainParameter) -> Vec<f64> {
    (0..param.grid_points.max(2)).map(|k| param.grid_value(k)).collect()
}

/// Cumulative-sum roulette wheel over non-negative weights.
#[derive(Debug, Clone)]
pub struct RouletteWheel {
    cumulative: Vec<f64>,
}

impl RouletteWheel {
    pub fn new(weights: &[f64]) -> Result<Self> {
        let mut acc = 0.0;
        let mut cumulative = Vec::with_capacity(weights.len());
        for &w in weights {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::domain(
                    "roulette wheel",
                    format!("weights must be finite and non-negative, got {w}"),
                ));
            }
            acc += w;
            cumulative.push(acc);
        }
        if !(acc > 0.0) {
            return Err(Error::domain("roulette wheel", "at least one weight must be positive"));
        }
        Ok(Self { cumulative })
    }

    pub fn total(&self) -> f64 {
        *self.cumulative.last().expect("non-empty")
    }

    /// Index selected by a uniform draw `u` in `[0, 1)`.
    pub fn pick(&self, u: f64) -> usize {
        let target = u * self.total();
        let i = self.cumulative.partition_point(|&c| c <= target);
        if i < self.cumulative.len() {
            return i;
        }
        // u rounded up to the total; fall back to the last live segment.
        let last = self.total();
        self.cumulative.partition_point(|&c| c < last)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.pick(rng.random::<f64>())
    }
}

/// Index `i` with probability `weights[i] / sum(weights)`.
pub fn roulette_select<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> Result<usize> {
    Ok(RouletteWheel::new(weights)?.sample(rng))
}

/// The nine uncertain parameters plus the two fixed unit costs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpace {
    pub params: Vec<UncertainParameter>,
    /// Spent-fuel charge, $/MWh.
    pub c_spent: f64,
    /// Decommissioning, $/kW_e.
    pub c_dec: f64,
}

impl Default for ScenarioSpace {
    fn default() -> Self {
        Self {
            params: default_parameters(),
            c_spent: 1.0,
            c_dec: 7500.0,
        }
    }
}

impl ScenarioSpace {
    pub fn validate(&self) -> Result<()> {
        for p in CostParameter::ALL {
            let n = self.params.iter().filter(|q| q.name == p).count();
            if n != 1 {
                return Err(Error::domain(
                    "scenario space",
                    format!("parameter `{}` appears {n} times, expected once", p.name()),
                ));
            }
        }
        for p in &self.params {
            p.validate()?;
        }
        if !(self.c_spent >= 0.0 && self.c_dec >= 0.0) {
            return Err(Error::domain("scenario space", "fixed costs must be non-negative"));
        }
        Ok(())
    }

    /// Every parameter at its nominal value.
    pub fn nominal_costs(&self) -> CostInputs {
        let mut c = CostInputs {
            c_spent: self.c_spent,
            c_dec: self.c_dec,
            ..CostInputs::default()
        };
        for p in &self.params {
            p.name.set(&mut c, p.nominal);
        }
        c
    }

    pub fn param(&self, name: CostParameter) -> Option<&UncertainParameter> {
        self.params.iter().find(|p| p.name == name)
    }
}

/// Table of default distributions. Uranium is in $/kgU.
pub fn default_parameters() -> Vec<UncertainParameter> {
    use CostParameter::*;
    let u = |name, min, max, nominal| UncertainParameter::new(name, Pdf::Uniform { min, max }, nominal);
    let t = |name, min, mode: f64, max| {
        UncertainParameter::new(name, Pdf::Triangular { min, mode, max }, mode)
    };
    vec![
        u(Occ, 2500.0, 4000.0, 3000.0),
        u(NFte, 3.0, 10.0, 5.0),
        u(SFte, 120_000.0, 225_000.0, 150_000.0),
        u(Fom, 400_000.0, 750_000.0, 500_000.0),
        u(Vom, 2.0, 2.5, 2.07),
        t(Uranium, 84.0, 104.0, 156.0),
        u(Conversion, 4.0, 10.0, 6.0),
        u(Enrichment, 125.0, 240.0, 160.0),
        t(Fabrication, 400.0, 500.0, 750.0),
    ]
}

/// One cost realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: usize,
    pub mode: StudyMode,
    pub costs: CostInputs,
    /// Selected grid index of every sampled parameter, in space order.
    pub grid_indices: Vec<(CostParameter, usize)>,
}

/// Draws one scenario. Parameters outside the mode's group stay nominal.
pub fn sample_scenario<R: Rng + ?Sized>(
    space: &ScenarioSpace,
    mode: StudyMode,
    id: usize,
    rng: &mut R,
) -> Result<Scenario> {
    let mut costs = space.nominal_costs();
    let mut grid_indices = Vec::new();
    for p in space.params.iter().filter(|p| mode.includes(p.name)) {
        let k = RouletteWheel::new(&p.grid_weights()?)?.sample(rng);
        p.name.set(&mut costs, p.realize(k));
        grid_indices.push((p.name, k));
    }
    Ok(Scenario {
        id,
        mode,
        costs,
        grid_indices,
    })
}

/// `n` scenarios; scenario `i` uses its own stream so it is the same for any
/// `n > i`.
pub fn generate_study(space: &ScenarioSpace, mode: StudyMode, n: usize, seed: u64) -> Result<Vec<Scenario>> {
    space.validate()?;
    if n == 0 {
        return Err(Error::domain("study", "scenario count must be at least 1"));
    }
    let scheme = SeedScheme::new(seed);
    (0..n)
        .map(|id| {
            let mut rng = scheme.stream(&[label::SCENARIO, id as u64]);
            sample_scenario(space, mode, id, &mut rng)
        })
        .collect()
}
