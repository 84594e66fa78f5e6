//! The five reactor design variables and the box they live in.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Number of decision variables.
pub const DIM: usize = 5;

/// Variable names in vector order.
pub const VARIABLE_NAMES: [&str; DIM] = ["p_elec", "x_p", "x_t", "t_refuel", "db"];

/// A reactor design point.
///
/// Vector order is `[p_elec, x_p, x_t, t_refuel, db]`. Enrichments are in
/// weight-percent U-235.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReactorDesign {
    /// Rated electric capacity, MW_e.
    pub p_elec: f64,
    /// Fuel (product) enrichment, wt%.
    pub x_p: f64,
    /// Tails enrichment, wt%.
    pub x_t: f64,
    /// Refueling interval, years.
    pub t_refuel: f64,
    /// Discharge burnup, MWd/kgU.
    pub db: f64,
}

impl ReactorDesign {
    /// Builds a design and checks it against the default box.
    pub fn new(p_elec: f64, x_p: f64, x_t: f64, t_refuel: f64, db: f64) -> Result<Self> {
        let d = Self {
            p_elec,
            x_p,
            x_t,
            t_refuel,
            db,
        };
        DesignBounds::default().check(&d)?;
        Ok(d)
    }

    pub fn to_array(&self) -> [f64; DIM] {
        [self.p_elec, self.x_p, self.x_t, self.t_refuel, self.db]
    }

    /// Builds a design from a vector without bounds checking. Callers in the
    /// optimizer only pass clamped vectors.
    pub(crate) fn from_array(v: [f64; DIM]) -> Self {
        Self {
            p_elec: v[0],
            x_p: v[1],
            x_t: v[2],
            t_refuel: v[3],
            db: v[4],
        }
    }
}

/// Axis-aligned box over the design vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignBounds {
    pub lower: [f64; DIM],
    pub upper: [f64; DIM],
}

impl Default for DesignBounds {
    /// Capacity 1–20 MW_e, enrichment 5–20 %, tails 0.2–0.3 %, refueling
    /// 2–10 y, burnup 15–30 MWd/kg.
    fn default() -> Self {
        Self {
            lower: [1.0, 5.0, 0.2, 2.0, 15.0],
            upper: [20.0, 20.0, 0.3, 10.0, 30.0],
        }
    }
}

impl DesignBounds {
    /// A sub-box of the default box.
    pub fn new(lower: [f64; DIM], upper: [f64; DIM]) -> Result<Self> {
        let outer = Self::default();
        for i in 0..DIM {
            let ok = lower[i].is_finite()
                && upper[i].is_finite()
                && lower[i] <= upper[i]
                && lower[i] >= outer.lower[i]
                && upper[i] <= outer.upper[i];
            if !ok {
                return Err(Error::domain(
                    "design bounds",
                    format!(
                        "`{}` range [{}, {}] must lie within [{}, {}]",
                        VARIABLE_NAMES[i], lower[i], upper[i], outer.lower[i], outer.upper[i]
                    ),
                ));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn range(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn center(&self) -> [f64; DIM] {
        std::array::from_fn(|i| 0.5 * (self.lower[i] + self.upper[i]))
    }

    pub fn clamp(&self, v: &mut [f64; DIM]) {
        for (i, x) in v.iter_mut().enumerate() {
            *x = x.clamp(self.lower[i], self.upper[i]);
        }
    }

    pub fn contains(&self, d: &ReactorDesign) -> bool {
        self.check(d).is_ok()
    }

    pub fn check(&self, d: &ReactorDesign) -> Result<()> {
        for (i, &value) in d.to_array().iter().enumerate() {
            // `!(a <= b)` also rejects NaN.
            if !(self.lower[i] <= value && value <= self.upper[i]) {
                return Err(Error::OutOfBounds {
                    name: VARIABLE_NAMES[i],
                    value,
                    lower: self.lower[i],
                    upper: self.upper[i],
                });
            }
        }
        Ok(())
    }
}
