//! Uranium mass flows, separative work, specific power and the fuel-cycle
//! consistency relations.
//!
//! Assays cross the API in weight-percent U-235 and are converted to
//! fractions only inside [`value_function`]. Specific power is in kW per kg
//! of heavy metal; [`batch_product_mass`] takes the matching factor of 1000
//! on MW_e, so the batch-energy round trip reproduces the discharge burnup.

use crate::design::ReactorDesign;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Natural uranium assay, wt% U-235.
pub const NATURAL_URANIUM_ASSAY: f64 = 0.711;

/// Coefficient of the empirical enrichment/burnup relation, MWd/kg per wt%.
pub const BURNUP_PER_ENRICHMENT: f64 = 14.8;

const DAYS_PER_YEAR: f64 = 365.0;

/// Product, tails and feed assays in wt% U-235.
///
/// Valid when `0 < x_t < x_f <= x_p < 100`. `x_p == x_f` is accepted and
/// means no enrichment is needed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnrichmentAssays {
    pub x_p: f64,
    pub x_t: f64,
    pub x_f: f64,
}

impl EnrichmentAssays {
    pub fn new(x_p: f64, x_t: f64, x_f: f64) -> Result<Self> {
        let ok = x_p.is_finite()
            && x_t.is_finite()
            && x_f.is_finite()
            && 0.0 < x_t
            && x_t < x_f
            && x_f <= x_p
            && x_p < 100.0;
        if !ok {
            return Err(Error::domain(
                "enrichment assays",
                format!("require 0 < x_t < x_f <= x_p < 100, got x_t={x_t}, x_f={x_f}, x_p={x_p}"),
            ));
        }
        Ok(Self { x_p, x_t, x_f })
    }

    /// Feed mass per unit product mass.
    pub fn feed_ratio(&self) -> f64 {
        (self.x_p - self.x_t) / (self.x_f - self.x_t)
    }

    /// Tails mass per unit feed mass.
    pub fn tails_per_feed(&self) -> f64 {
        (self.x_p - self.x_f) / (self.x_p - self.x_t)
    }
}

/// Uranium masses per fuel batch, kg U.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassFlows {
    pub m_p: f64,
    pub m_f: f64,
    pub m_t: f64,
}

/// Core operating parameters and the specific power they imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreParams {
    /// Discharge burnup, MWd/kg.
    pub db: f64,
    /// Refueling interval, years.
    pub t_refuel: f64,
    /// Effective capacity factor.
    pub cf: f64,
    /// Specific thermal power, kW/kg.
    pub sp: f64,
}

impl CoreParams {
    pub fn new(db: f64, t_refuel: f64, cf: f64) -> Result<Self> {
        let sp = specific_power(db, t_refuel, cf)?;
        Ok(Self {
            db,
            t_refuel,
            cf,
            sp,
        })
    }
}

/// Separative potential `(2x - 1) ln(x / (1 - x))` of a U-235 fraction.
pub fn value_function(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(
            "value function",
            format!("fraction must lie in (0, 1), got {x}"),
        ));
    }
    Ok((2.0 * x - 1.0) * (x / (1.0 - x)).ln())
}

/// Specific thermal power in kW/kg for a burnup reached over one refueling
/// interval at capacity factor `cf`.
pub fn specific_power(db: f64, t_refuel: f64, cf: f64) -> Result<f64> {
    if !(t_refuel > 0.0) || !t_refuel.is_finite() {
        return Err(Error::domain(
            "specific power",
            format!("refueling interval must be positive, got {t_refuel}"),
        ));
    }
    if !(cf > 0.0 && cf <= 1.0) {
        return Err(Error::domain(
            "specific power",
            format!("capacity factor must lie in (0, 1], got {cf}"),
        ));
    }
    if !(db >= 0.0) || !db.is_finite() {
        return Err(Error::domain(
            "specific power",
            format!("burnup must be non-negative, got {db}"),
        ));
    }
    Ok(1000.0 * db / (t_refuel * cf * DAYS_PER_YEAR))
}

/// Heavy-metal mass of one core batch, kg U.
pub fn batch_product_mass(p_elec: f64, eta: f64, sp: f64) -> Result<f64> {
    if !(p_elec > 0.0 && p_elec.is_finite()) {
        return Err(Error::domain(
            "batch product mass",
            format!("electric power must be positive, got {p_elec}"),
        ));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::domain(
            "batch product mass",
            format!("efficiency must lie in (0, 1], got {eta}"),
        ));
    }
    if !(sp > 0.0 && sp.is_finite()) {
        return Err(Error::domain(
            "batch product mass",
            format!("specific power must be positive, got {sp}"),
        ));
    }
    Ok(1000.0 * p_elec / (eta * sp))
}

/// Feed and tails masses for `m_p` kg of product.
pub fn mass_flows(assays: &EnrichmentAssays, m_p: f64) -> Result<MassFlows> {
    if !(assays.x_f > assays.x_t) {
        return Err(Error::domain(
            "mass flows",
            format!("feed assay {} must exceed tails assay {}", assays.x_f, assays.x_t),
        ));
    }
    if !(m_p > 0.0 && m_p.is_finite()) {
        return Err(Error::domain(
            "mass flows",
            format!("product mass must be positive, got {m_p}"),
        ));
    }
    let m_f = assays.feed_ratio() * m_p;
    let m_t = assays.tails_per_feed() * m_f;
    Ok(MassFlows { m_p, m_f, m_t })
}

/// Separative work per kg of product.
pub fn swu_per_kg_product(assays: &EnrichmentAssays) -> Result<f64> {
    let a = EnrichmentAssays::new(assays.x_p, assays.x_t, assays.x_f)?;
    let feed = a.feed_ratio();
    let tails = a.tails_per_feed() * feed;
    let v_p = value_function(a.x_p / 100.0)?;
    let v_t = value_function(a.x_t / 100.0)?;
    let v_f = value_function(a.x_f / 100.0)?;
    Ok(v_p + tails * v_t - feed * v_f)
}

/// Relative U-235 imbalance `|x_f m_f - x_p m_p - x_t m_t| / (x_f m_f)`.
///
/// Flows built by [`mass_flows`] satisfy the balance identically; this is a
/// diagnostic, not an optimization constraint.
pub fn mass_balance_residual(assays: &EnrichmentAssays, flows: &MassFlows) -> f64 {
    let feed = assays.x_f * flows.m_f;
    let out = assays.x_p * flows.m_p + assays.x_t * flows.m_t;
    (feed - out).abs() / feed.max(f64::MIN_POSITIVE)
}

/// Residual of the empirical burnup relation `DB = 14.8 x_p - SP 365 T / 1000`
/// for raw variables, MWd/kg.
///
/// Substituting the specific power gives `db (1 + 1/cf) - 14.8 x_p`, so the
/// result does not depend on `t_refuel`.
pub fn burnup_residual_at(x_p: f64, db: f64, t_refuel: f64, cf: f64) -> Result<f64> {
    let sp = specific_power(db, t_refuel, cf)?;
    Ok(db - BURNUP_PER_ENRICHMENT * x_p + sp * DAYS_PER_YEAR * t_refuel / 1000.0)
}

/// [`burnup_residual_at`] for a design.
pub fn burnup_residual(design: &ReactorDesign, cf: f64) -> Result<f64> {
    burnup_residual_at(design.x_p, design.db, design.t_refuel, cf)
}
