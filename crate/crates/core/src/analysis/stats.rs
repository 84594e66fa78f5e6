use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Descriptive statistics of one study column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub max: f64,
    pub min: f64,
    /// Sample standard deviation.
    pub sd: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
}

/// Quantile `p` of sorted data, interpolating between order statistics.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = p * (sorted.len() - 1) as f64;
    let i = h.floor() as usize;
    match sorted.get(i + 1) {
        Some(&next) => sorted[i] + (h - i as f64) * (next - sorted[i]),
        None => sorted[i],
    }
}

pub fn summarize_stats(values: &[f64]) -> Result<Stats> {
    if values.len() < 2 {
        return Err(Error::domain(
            "statistics",
            format!("need at least 2 values, got {}", values.len()),
        ));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::domain("statistics", format!("non-finite value {v}")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    let ss: f64 = sorted.iter().map(|v| (v - mean).powi(2)).sum();
    // Identical values must give exactly zero despite rounding in the mean.
    let sd = if sorted[0] == sorted[sorted.len() - 1] {
        0.0
    } else {
        (ss / (n - 1.0)).sqrt()
    };
    Ok(Stats {
        max: sorted[sorted.len() - 1],
        min: sorted[0],
        sd,
        q1: quantile(&sorted, 0.25),
        median: quantile(&sorted, 0.5),
        q3: quantile(&sorted, 0.75),
    })
}
