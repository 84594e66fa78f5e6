//! Annuity factors and assembly of the per-MWh cost breakdown.
//!
//! Every annual cost is divided by the annual energy at the effective
//! capacity factor. The production tax credit enters as a flat $/MWh
//! because its energy factor cancels against the denominator.

use crate::design::ReactorDesign;
use crate::error::{Error, Result};
use crate::fuelcycle::{self, EnrichmentAssays, MassFlows, NATURAL_URANIUM_ASSAY};
use crate::HOURS_PER_YEAR;
use serde::{Deserialize, Serialize};

/// Pounds of U3O8 that contain one kilogram of uranium.
pub const LB_U3O8_PER_KG_U: f64 = 2.59979;

/// Unit costs of one cost realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostInputs {
    /// Overnight capital cost, $/kW_e.
    pub occ: f64,
    /// O&M staff, FTE.
    pub n_fte: f64,
    /// Compensation, $/FTE/yr.
    pub s_fte: f64,
    /// Fixed O&M, $/yr.
    pub fom: f64,
    /// Variable O&M, $/MWh.
    pub vom: f64,
    /// Yellowcake, $/kgU.
    pub c_yc: f64,
    /// Conversion, $/kgU.
    pub c_conv: f64,
    /// Enrichment, $/SWU.
    pub c_swu: f64,
    /// Fabrication, $/kgU.
    pub c_fab: f64,
    /// Spent-fuel disposal charge, $/MWh.
    pub c_spent: f64,
    /// Decommissioning, $/kW_e.
    pub c_dec: f64,
}

impl Default for CostInputs {
    fn default() -> Self {
        Self {
            occ: 3000.0,
            n_fte: 5.0,
            s_fte: 150_000.0,
            fom: 500_000.0,
            vom: 2.07,
            c_yc: 104.0,
            c_conv: 6.0,
            c_swu: 160.0,
            c_fab: 500.0,
            c_spent: 1.0,
            c_dec: 7500.0,
        }
    }
}

impl CostInputs {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("occ", self.occ),
            ("n_fte", self.n_fte),
            ("s_fte", self.s_fte),
            ("fom", self.fom),
            ("vom", self.vom),
            ("c_yc", self.c_yc),
            ("c_conv", self.c_conv),
            ("c_swu", self.c_swu),
            ("c_fab", self.c_fab),
            ("c_spent", self.c_spent),
            ("c_dec", self.c_dec),
        ];
        for (name, v) in fields {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::domain(
                    "cost inputs",
                    format!("`{name}` must be finite and non-negative, got {v}"),
                ));
            }
        }
        Ok(())
    }

    /// Every unit cost multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            occ: self.occ * k,
            n_fte: self.n_fte,
            s_fte: self.s_fte * k,
            fom: self.fom * k,
            vom: self.vom * k,
            c_yc: self.c_yc * k,
            c_conv: self.c_conv * k,
            c_swu: self.c_swu * k,
            c_fab: self.c_fab * k,
            c_spent: self.c_spent * k,
            c_dec: self.c_dec * k,
        }
    }
}

/// How refueling outages enter the capacity factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DowntimeModel {
    /// `cf = cf_base * t / (t + t_down)`.
    On,
    /// `cf = cf_base`.
    Off,
}

/// How the inflation rate is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InflationMode {
    /// Constant-dollar analysis at the real discount rate; inflation unused.
    Real,
    /// O&M and fuel escalate at the inflation rate and every factor uses the
    /// nominal rate `(1 + r)(1 + i) - 1`.
    Escalated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FinancialParams {
    /// Real discount rate.
    pub r: f64,
    /// Inflation rate.
    pub infl: f64,
    /// Plant and project lifetime, years.
    pub lt: f64,
    /// Capacity factor before refueling outages.
    pub cf_base: f64,
    /// Thermal efficiency.
    pub eta: f64,
    /// Production tax credit, $/MWh.
    pub ptc_rate: f64,
    /// Credit duration, years.
    pub t_ptc: f64,
    /// Feed assay, wt%.
    pub x_f: f64,
    /// Uranium loss in conversion, fraction.
    pub loss: f64,
    /// Refueling outage length, years.
    pub t_down: f64,
    pub downtime_model: DowntimeModel,
    pub inflation_mode: InflationMode,
}

impl Default for FinancialParams {
    fn default() -> Self {
        Self {
            r: 0.05,
            infl: 0.02,
            lt: 20.0,
            cf_base: 0.93,
            eta: 0.35,
            ptc_rate: 25.0,
            t_ptc: 10.0,
            x_f: NATURAL_URANIUM_ASSAY,
            loss: 0.005,
            t_down: 0.5,
            downtime_model: DowntimeModel::On,
            inflation_mode: InflationMode::Real,
        }
    }
}

impl FinancialParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |detail: String| Err(Error::domain("financial parameters", detail));
        if !(self.r >= 0.0 && self.r.is_finite()) {
            return bad(format!("discount rate must be non-negative, got {}", self.r));
        }
        if !(self.infl > -1.0 && self.infl.is_finite()) {
            return bad(format!("inflation rate must exceed -1, got {}", self.infl));
        }
        if !(self.lt > 0.0 && self.lt.is_finite()) {
            return bad(format!("lifetime must be positive, got {}", self.lt));
        }
        if !(self.cf_base > 0.0 && self.cf_base <= 1.0) {
            return bad(format!("capacity factor must lie in (0, 1], got {}", self.cf_base));
        }
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return bad(format!("efficiency must lie in (0, 1), got {}", self.eta));
        }
        if !(self.ptc_rate >= 0.0 && self.ptc_rate.is_finite()) {
            return bad(format!("PTC rate must be non-negative, got {}", self.ptc_rate));
        }
        if !(self.t_ptc >= 0.0 && self.t_ptc <= self.lt) {
            return bad(format!(
                "PTC duration {} must lie in [0, lifetime {}]",
                self.t_ptc, self.lt
            ));
        }
        if !(self.x_f > 0.0 && self.x_f < 100.0) {
            return bad(format!("feed assay must lie in (0, 100), got {}", self.x_f));
        }
        if !(self.loss >= 0.0 && self.loss < 1.0) {
            return bad(format!("conversion loss must lie in [0, 1), got {}", self.loss));
        }
        if !(self.t_down >= 0.0 && self.t_down.is_finite()) {
            return bad(format!("downtime must be non-negative, got {}", self.t_down));
        }
        Ok(())
    }

    /// Rate used by every annuity factor.
    pub fn discount_rate(&self) -> f64 {
        match self.inflation_mode {
            InflationMode::Real => self.r,
            InflationMode::Escalated => (1.0 + self.r) * (1.0 + self.infl) - 1.0,
        }
    }

    /// Levelized multiplier for a cost stream growing at the inflation rate
    /// from its first-year value. Exactly 1 in real mode.
    pub fn escalation_factor(&self) -> Result<f64> {
        match self.inflation_mode {
            InflationMode::Real => Ok(1.0),
            InflationMode::Escalated => {
                // Growth at i discounted at (1+r)(1+i)-1 leaves a plain real
                // annuity scaled by 1/(1+i).
                let pv = present_value_annuity_factor(self.r, self.lt)? / (1.0 + self.infl);
                Ok(pv * capital_recovery_factor(self.discount_rate(), self.lt)?)
            }
        }
    }
}

/// Per-MWh cost components. `total` excludes `penalty`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LcoeBreakdown {
    pub capital: f64,
    pub om: f64,
    pub fuel: f64,
    pub spent: f64,
    pub decommissioning: f64,
    pub ptc_credit: f64,
    pub total: f64,
    /// MWh/yr.
    pub annual_energy: f64,
    /// Constraint penalty, $/MWh-equivalent. Zero outside the optimizer.
    pub penalty: f64,
}

impl LcoeBreakdown {
    /// LCOE before the tax credit.
    pub fn total_without_credit(&self) -> f64 {
        self.capital + self.om + self.fuel + self.spent + self.decommissioning
    }

    /// Fraction of the pre-credit LCOE removed by the credit.
    pub fn ptc_reduction(&self) -> f64 {
        self.ptc_credit / self.total_without_credit()
    }
}

/// Cost of one fuel batch, $.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuelBatchCost {
    pub uranium: f64,
    pub conversion: f64,
    pub enrichment: f64,
    pub fabrication: f64,
    pub flows: MassFlows,
    pub swu_per_kg: f64,
}

impl FuelBatchCost {
    pub fn total(&self) -> f64 {
        self.uranium + self.conversion + self.enrichment + self.fabrication
    }
}

fn check_annuity_args(what: &'static str, r: f64, n: f64) -> Result<()> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::domain(what, format!("period must be positive, got {n}")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain(what, format!("rate must be non-negative, got {r}")));
    }
    Ok(())
}

/// `(1 + r)^n - 1` without cancellation for small `r`.
fn growth_minus_one(r: f64, n: f64) -> f64 {
    (n * r.ln_1p()).exp_m1()
}

/// `r (1+r)^n / ((1+r)^n - 1)`; `1/n` at `r = 0`.
pub fn capital_recovery_factor(r: f64, n: f64) -> Result<f64> {
    check_annuity_args("capital recovery factor", r, n)?;
    if r == 0.0 {
        return Ok(1.0 / n);
    }
    let g = growth_minus_one(r, n);
    Ok(r * (1.0 + g) / g)
}

/// `r / ((1+r)^n - 1)`; `1/n` at `r = 0`.
pub fn sinking_fund_factor(r: f64, n: f64) -> Result<f64> {
    check_annuity_args("sinking fund factor", r, n)?;
    if r == 0.0 {
        return Ok(1.0 / n);
    }
    Ok(r / growth_minus_one(r, n))
}

/// `((1+r)^n - 1) / (r (1+r)^n)`; `n` at `r = 0`.
pub fn present_value_annuity_factor(r: f64, n: f64) -> Result<f64> {
    check_annuity_args("present value annuity factor", r, n)?;
    if r == 0.0 {
        return Ok(n);
    }
    let g = growth_minus_one(r, n);
    Ok(g / (r * (1.0 + g)))
}

pub fn effective_capacity_factor(fin: &FinancialParams, t_refuel: f64) -> f64 {
    match fin.downtime_model {
        DowntimeModel::On => fin.cf_base * t_refuel / (t_refuel + fin.t_down),
        DowntimeModel::Off => fin.cf_base,
    }
}

/// MWh per year.
pub fn annual_energy(p_elec: f64, cf: f64) -> f64 {
    p_elec * HOURS_PER_YEAR * cf
}

/// $/yr.
pub fn annualized_capital(occ: f64, p_elec: f64, r: f64, lt: f64) -> Result<f64> {
    Ok(occ * p_elec * 1000.0 * capital_recovery_factor(r, lt)?)
}

/// Staff, fixed and variable O&M, $/yr.
pub fn annualized_om(costs: &CostInputs, energy: f64) -> f64 {
    costs.n_fte * costs.s_fte + costs.fom + costs.vom * energy
}

/// Cost of the batch loaded at each refueling.
pub fn fuel_batch_cost(
    design: &ReactorDesign,
    costs: &CostInputs,
    fin: &FinancialParams,
) -> Result<FuelBatchCost> {
    let cf = effective_capacity_factor(fin, design.t_refuel);
    let sp = fuelcycle::specific_power(design.db, design.t_refuel, cf)?;
    let m_p = fuelcycle::batch_product_mass(design.p_elec, fin.eta, sp)?;
    let assays = EnrichmentAssays::new(design.x_p, design.x_t, fin.x_f)?;
    let flows = fuelcycle::mass_flows(&assays, m_p)?;
    let swu_per_kg = fuelcycle::swu_per_kg_product(&assays)?;
    Ok(FuelBatchCost {
        uranium: costs.c_yc * flows.m_f / (1.0 - fin.loss),
        conversion: costs.c_conv * flows.m_f,
        enrichment: costs.c_swu * swu_per_kg * flows.m_p,
        fabrication: costs.c_fab * flows.m_p,
        flows,
        swu_per_kg,
    })
}

/// Batch cost spread over its refueling interval, $/yr.
pub fn annualized_fuel(batch_total: f64, r: f64, t_refuel: f64) -> Result<f64> {
    Ok(batch_total * capital_recovery_factor(r, t_refuel)?)
}

/// $/yr.
pub fn annualized_decommissioning(c_dec: f64, p_elec: f64, r: f64, lt: f64) -> Result<f64> {
    Ok(c_dec * p_elec * 1000.0 * sinking_fund_factor(r, lt)?)
}

/// Levelized production tax credit, $/MWh.
pub fn ptc_credit_per_mwh(fin: &FinancialParams) -> Result<f64> {
    if fin.t_ptc > fin.lt {
        return Err(Error::domain(
            "PTC credit",
            format!("duration {} exceeds lifetime {}", fin.t_ptc, fin.lt),
        ));
    }
    if fin.ptc_rate == 0.0 || fin.t_ptc == 0.0 {
        return Ok(0.0);
    }
    let d = fin.discount_rate();
    Ok(fin.ptc_rate
        * present_value_annuity_factor(d, fin.t_ptc)?
        * capital_recovery_factor(d, fin.lt)?)
}

/// The full LCOE breakdown of a design under one cost realization.
pub fn lcoe_breakdown(
    design: &ReactorDesign,
    costs: &CostInputs,
    fin: &FinancialParams,
) -> Result<LcoeBreakdown> {
    fin.validate()?;
    costs.validate()?;
    let d = fin.discount_rate();
    let escalation = fin.escalation_factor()?;
    let cf = effective_capacity_factor(fin, design.t_refuel);
    let energy = annual_energy(design.p_elec, cf);
    if !(energy > 0.0) {
        return Err(Error::domain(
            "annual energy",
            format!("must be positive, got {energy}"),
        ));
    }

    let capital = annualized_capital(costs.occ, design.p_elec, d, fin.lt)?;
    let om = annualized_om(costs, energy) * escalation;
    let batch = fuel_batch_cost(design, costs, fin)?;
    let fuel = annualized_fuel(batch.total(), d, design.t_refuel)? * escalation;
    let decommissioning = annualized_decommissioning(costs.c_dec, design.p_elec, d, fin.lt)?;

    let mut b = LcoeBreakdown {
        capital: capital / energy,
        om: om / energy,
        fuel: fuel / energy,
        spent: costs.c_spent,
        decommissioning: decommissioning / energy,
        ptc_credit: ptc_credit_per_mwh(fin)?,
        total: 0.0,
        annual_energy: energy,
        penalty: 0.0,
    };
    b.total = b.total_without_credit() - b.ptc_credit;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference values evaluated with 30-digit mpmath arithmetic.
    const CRF_5_20: f64 = 0.080_242_587_190_691_32;
    const CRF_5_624: f64 = 0.190_496_831_792_886_06;
    const CRF_3_20: f64 = 0.067_215_707_596_859_13;
    const SFF_5_20: f64 = 0.030_242_587_190_691_32;
    const PVA_5_10: f64 = 7.721_734_929_184_813;
    const ENERGY_BASE: f64 = 155_848.284;
    const BATCH_URANIUM: f64 = 4_525_414.714_200_119;
    const BATCH_CONVERSION: f64 = 259_776.210_036_295_3;
    const BATCH_ENRICHMENT: f64 = 4_515_644.959_721_045;
    const BATCH_FABRICATION: f64 = 1_929_550.182_857_143;
    const PTC_BASE: f64 = 15.490_299_707_962_975;

    fn base_design() -> ReactorDesign {
        ReactorDesign::new(19.13, 5.0, 0.2913, 6.24, 30.0).unwrap()
    }

    fn fin_off() -> FinancialParams {
        FinancialParams {
            downtime_model: DowntimeModel::Off,
            ..FinancialParams::default()
        }
    }

    fn zero_costs() -> CostInputs {
        CostInputs {
            occ: 0.0,
            n_fte: 0.0,
            s_fte: 0.0,
            fom: 0.0,
            vom: 0.0,
            c_yc: 0.0,
            c_conv: 0.0,
            c_swu: 0.0,
            c_fab: 0.0,
            c_spent: 0.0,
            c_dec: 0.0,
        }
    }

    #[test]
    fn annuity_factor_examples() {
        assert!((capital_recovery_factor(0.05, 20.0).unwrap() - CRF_5_20).abs() < 1e-15);
        assert!((capital_recovery_factor(0.03, 20.0).unwrap() - CRF_3_20).abs() < 1e-15);
        assert!((capital_recovery_factor(0.05, 20.0).unwrap() - 0.080243).abs() < 1e-6);
        assert_eq!(capital_recovery_factor(0.0, 20.0).unwrap(), 0.05);
        assert!((capital_recovery_factor(0.05, 6.24).unwrap() - CRF_5_624).abs() < 1e-15);

        assert!((sinking_fund_factor(0.05, 20.0).unwrap() - SFF_5_20).abs() < 1e-15);
        assert!((sinking_fund_factor(0.05, 20.0).unwrap() - 0.030243).abs() < 1e-6);
        assert_eq!(sinking_fund_factor(0.0, 20.0).unwrap(), 0.05);
        let crf = capital_recovery_factor(0.07, 13.0).unwrap();
        let sff = sinking_fund_factor(0.07, 13.0).unwrap();
        assert!((sff - (crf - 0.07)).abs() < 1e-12);

        assert!((present_value_annuity_factor(0.05, 10.0).unwrap() - PVA_5_10).abs() < 1e-13);
        assert_eq!(present_value_annuity_factor(0.0, 10.0).unwrap(), 10.0);
        assert!((present_value_annuity_factor(0.05, 1.0).unwrap() - 0.952381).abs() < 1e-6);
    }

    #[test]
    fn annuity_factor_errors() {
        for f in [
            capital_recovery_factor,
            sinking_fund_factor,
            present_value_annuity_factor,
        ] {
            assert!(f(0.05, 0.0).is_err());
            assert!(f(0.05, -3.0).is_err());
            assert!(f(-0.01, 10.0).is_err());
            assert!(f(f64::NAN, 10.0).is_err());
        }
    }

    #[test]
    fn annuity_factors_are_continuous_at_zero_rate() {
        for n in [1.0, 6.24, 20.0] {
            for f in [
                capital_recovery_factor,
                sinking_fund_factor,
                present_value_annuity_factor,
            ] {
                let near = f(1e-9, n).unwrap();
                let at = f(0.0, n).unwrap();
                assert!((near - at).abs() < 1e-6, "n={n}: {near} vs {at}");
            }
        }
    }

    #[test]
    fn capacity_factor_and_energy() {
        let on = FinancialParams::default();
        assert!((effective_capacity_factor(&on, 6.24) - 0.86101).abs() < 1e-5);
        let no_outage = FinancialParams { t_down: 0.0, ..on };
        assert_eq!(effective_capacity_factor(&no_outage, 6.24), 0.93);
        assert_eq!(effective_capacity_factor(&fin_off(), 3.3), 0.93);

        assert!((annual_energy(19.13, 0.93) - ENERGY_BASE).abs() < 1e-6);
        assert_eq!(annual_energy(1.0, 1.0), 8760.0);
        assert_eq!(annual_energy(20.0, 0.5), 87_600.0);
    }

    #[test]
    fn annualized_capital_and_decommissioning() {
        let c = annualized_capital(3000.0, 19.13, 0.05, 20.0).unwrap();
        assert!((c - 4_605_122.08).abs() < 1.0);
        assert_eq!(annualized_capital(0.0, 19.13, 0.05, 20.0).unwrap(), 0.0);
        let c = annualized_capital(4000.0, 20.0, 0.05, 20.0).unwrap();
        assert!((c - 6_419_406.98).abs() < 1.0);

        let d = annualized_decommissioning(7500.0, 19.13, 0.05, 20.0).unwrap();
        assert!((d - 4_339_055.20).abs() < 1.0);
        assert_eq!(annualized_decommissioning(0.0, 19.13, 0.05, 20.0).unwrap(), 0.0);
        let d = annualized_decommissioning(7500.0, 19.13, 0.03, 20.0).unwrap();
        assert!((d - 5_339_523.65).abs() < 1.0);
    }

    #[test]
    fn annualized_om_examples() {
        let om = annualized_om(&CostInputs::default(), ENERGY_BASE);
        assert!((om - 1_572_605.948).abs() < 0.01);
        assert_eq!(annualized_om(&zero_costs(), 1e6), 0.0);
        let high = CostInputs {
            n_fte: 10.0,
            s_fte: 175_151.50,
            fom: 531_000.0,
            vom: 2.44,
            ..CostInputs::default()
        };
        assert!((annualized_om(&high, ENERGY_BASE) - 2_662_784.813).abs() < 0.01);
    }

    #[test]
    fn fuel_batch_examples() {
        let b = fuel_batch_cost(&base_design(), &CostInputs::default(), &fin_off()).unwrap();
        assert!((b.uranium - BATCH_URANIUM).abs() < 1e-4);
        assert!((b.conversion - BATCH_CONVERSION).abs() < 1e-5);
        assert!((b.enrichment - BATCH_ENRICHMENT).abs() < 1e-4);
        assert!((b.fabrication - BATCH_FABRICATION).abs() < 1e-5);
        assert!((b.total() - 11_234_000.0).abs() < 10_000.0);

        let z = fuel_batch_cost(&base_design(), &zero_costs(), &fin_off()).unwrap();
        assert_eq!(z.total(), 0.0);

        let lossless = FinancialParams {
            loss: 0.0,
            ..fin_off()
        };
        let a = fuel_batch_cost(&base_design(), &CostInputs::default(), &lossless).unwrap();
        assert!((a.uranium / b.uranium - 0.995).abs() < 1e-12);
    }

    #[test]
    fn annualized_fuel_examples() {
        let batch = BATCH_URANIUM + BATCH_CONVERSION + BATCH_ENRICHMENT + BATCH_FABRICATION;
        let f = annualized_fuel(batch, 0.05, 6.24).unwrap();
        assert!((f - 2_139_352.97).abs() < 1.0);
        assert!((annualized_fuel(11.234e6, 0.05, 6.24).unwrap() - 2.1400e6).abs() < 2000.0);
        assert_eq!(annualized_fuel(0.0, 0.05, 6.24).unwrap(), 0.0);
        assert!((annualized_fuel(11.234e6, 0.0, 6.24).unwrap() - 1.8003e6).abs() < 2000.0);
    }

    #[test]
    fn ptc_examples() {
        let fin = FinancialParams::default();
        assert!((ptc_credit_per_mwh(&fin).unwrap() - PTC_BASE).abs() < 1e-12);
        let none = FinancialParams {
            ptc_rate: 0.0,
            ..fin
        };
        assert_eq!(ptc_credit_per_mwh(&none).unwrap(), 0.0);
        let zero_rate = FinancialParams { r: 0.0, ..fin };
        assert_eq!(ptc_credit_per_mwh(&zero_rate).unwrap(), 12.5);
        let too_long = FinancialParams { t_ptc: 25.0, ..fin };
        assert!(ptc_credit_per_mwh(&too_long).is_err());
    }

    #[test]
    fn base_case_breakdown() {
        let b = lcoe_breakdown(&base_design(), &CostInputs::default(), &fin_off()).unwrap();
        let expect = [
            (b.capital, 29.55),
            (b.om, 10.09),
            (b.fuel, 13.73),
            (b.spent, 1.00),
            (b.decommissioning, 27.84),
            (b.ptc_credit, 15.49),
            (b.total, 66.72),
        ];
        for (got, want) in expect {
            assert!((got - want).abs() < 0.05, "{got} vs {want}");
        }
        assert_eq!(b.penalty, 0.0);
        let again = lcoe_breakdown(&base_design(), &CostInputs::default(), &fin_off()).unwrap();
        assert_eq!(b.total.to_bits(), again.total.to_bits());
    }

    #[test]
    fn single_component_breakdowns() {
        let credit_only = lcoe_breakdown(&base_design(), &zero_costs(), &fin_off()).unwrap();
        assert!((credit_only.total + 15.49).abs() < 0.01);

        let fin = FinancialParams {
            ptc_rate: 0.0,
            ..fin_off()
        };
        let occ_only = CostInputs {
            occ: 3000.0,
            ..zero_costs()
        };
        let b = lcoe_breakdown(&base_design(), &occ_only, &fin).unwrap();
        assert!((b.total - 29.55).abs() < 0.05);
    }

    #[test]
    fn invalid_inputs_propagate() {
        let fin = FinancialParams {
            eta: 1.5,
            ..fin_off()
        };
        assert!(lcoe_breakdown(&base_design(), &CostInputs::default(), &fin).is_err());
        let costs = CostInputs {
            vom: -1.0,
            ..CostInputs::default()
        };
        assert!(lcoe_breakdown(&base_design(), &costs, &fin_off()).is_err());
    }

    #[test]
    fn escalation_raises_cost_and_vanishes_without_inflation() {
        let real = lcoe_breakdown(&base_design(), &CostInputs::default(), &fin_off()).unwrap();
        let esc = FinancialParams {
            inflation_mode: InflationMode::Escalated,
            ..fin_off()
        };
        let hi = lcoe_breakdown(&base_design(), &CostInputs::default(), &esc).unwrap();
        let lo = lcoe_breakdown(
            &base_design(),
            &CostInputs::default(),
            &FinancialParams { infl: 0.002, ..esc },
        )
        .unwrap();
        assert!(hi.total > lo.total);
        let flat = lcoe_breakdown(
            &base_design(),
            &CostInputs::default(),
            &FinancialParams { infl: 0.0, ..esc },
        )
        .unwrap();
        assert!((flat.total - real.total).abs() < 1e-9);
        assert!((esc.escalation_factor().unwrap() - 1.0).abs() > 1e-3);
        assert!((FinancialParams { infl: 0.0, ..esc }.escalation_factor().unwrap() - 1.0).abs() < 1e-12);
    }

    fn arb_design() -> impl Strategy<Value = ReactorDesign> {
        (1.0f64..=20.0, 5.0f64..=20.0, 0.2f64..=0.3, 2.0f64..=10.0, 15.0f64..=30.0)
            .prop_map(|(p, xp, xt, t, db)| ReactorDesign::new(p, xp, xt, t, db).unwrap())
    }

    proptest! {
        #[test]
        fn doubling_unit_costs_doubles_total(d in arb_design(), k in 0.5f64..3.0) {
            let fin = FinancialParams { ptc_rate: 0.0, ..FinancialParams::default() };
            let costs = CostInputs::default().scaled(k);
            let a = lcoe_breakdown(&d, &costs, &fin).unwrap().total;
            let b = lcoe_breakdown(&d, &costs.scaled(2.0), &fin).unwrap().total;
            prop_assert!((b - 2.0 * a).abs() <= 1e-9 * b.abs());
        }

        #[test]
        fn credit_is_flat_across_designs(d in arb_design(), cf in 0.3f64..1.0) {
            let fin = FinancialParams { cf_base: cf, ..FinancialParams::default() };
            let b = lcoe_breakdown(&d, &CostInputs::default(), &fin).unwrap();
            prop_assert!((b.ptc_credit - PTC_BASE).abs() < 1e-12);
        }

        #[test]
        fn lcoe_falls_with_capacity(d in arb_design(), dp in 0.01f64..5.0) {
            let bigger = ReactorDesign { p_elec: (d.p_elec + dp).min(20.0), ..d };
            prop_assume!(bigger.p_elec > d.p_elec);
            let fin = FinancialParams::default();
            let a = lcoe_breakdown(&d, &CostInputs::default(), &fin).unwrap().total;
            let b = lcoe_breakdown(&bigger, &CostInputs::default(), &fin).unwrap().total;
            prop_assert!(b < a);
        }

        #[test]
        fn lcoe_falls_with_efficiency(d in arb_design(), eta in 0.2f64..0.9, de in 0.001f64..0.09) {
            let lo = FinancialParams { eta, ..FinancialParams::default() };
            let hi = FinancialParams { eta: eta + de, ..lo };
            let a = lcoe_breakdown(&d, &CostInputs::default(), &lo).unwrap().total;
            let b = lcoe_breakdown(&d, &CostInputs::default(), &hi).unwrap().total;
            prop_assert!(b < a);
        }
    }
}
