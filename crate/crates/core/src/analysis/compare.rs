use crate::config::BenchmarkTable;
use serde::{Deserialize, Serialize};

/// Name given to the modelled reactor in a ranking.
pub const MICROREACTOR: &str = "microreactor";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub name: String,
    /// $/MWh.
    pub lcoe: f64,
    /// Benchmark minus microreactor LCOE, $/MWh; zero for the microreactor.
    pub delta: f64,
    pub is_microreactor: bool,
}

/// All technologies in ascending LCOE order with the microreactor inserted.
/// Ties keep the microreactor first.
pub fn technology_comparison(micro_lcoe: f64, bench: &BenchmarkTable) -> Vec<RankEntry> {
    let mut out = vec![RankEntry {
        name: MICROREACTOR.to_string(),
        lcoe: micro_lcoe,
        delta: 0.0,
        is_microreactor: true,
    }];
    out.extend(bench.0.iter().map(|b| RankEntry {
        name: b.name.clone(),
        lcoe: b.lcoe,
        delta: b.lcoe - micro_lcoe,
        is_microreactor: false,
    }));
    out.sort_by(|a, b| a.lcoe.total_cmp(&b.lcoe));
    out
}
