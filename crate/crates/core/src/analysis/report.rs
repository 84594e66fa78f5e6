//! CSV tables and the run manifest.
//!
//! Numbers are written with Rust's shortest round-trip formatting, which
//! always uses a decimal point and never groups digits.

use super::compare::RankEntry;
use super::study::{StudyReport, StudyRow};
use super::sweep::{SweepParameter, SweepRow};
use crate::config::StudyConfig;
use crate::costs::LcoeBreakdown;
use crate::design::{ReactorDesign, VARIABLE_NAMES};
use crate::error::Result;
use crate::optimize::OptimizationResult;
use crate::rng::SeedScheme;
use crate::uncertainty::CostParameter;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

const COST_COLUMNS: [&str; 11] = [
    "occ", "n_fte", "s_fte", "fom", "vom", "c_yc", "c_conv", "c_swu", "c_fab", "c_spent", "c_dec",
];
const BREAKDOWN_COLUMNS: [&str; 8] = [
    "capital", "om", "fuel", "spent", "decommissioning", "ptc_credit", "total", "penalty",
];

fn breakdown_fields(b: &LcoeBreakdown) -> [f64; 8] {
    [b.capital, b.om, b.fuel, b.spent, b.decommissioning, b.ptc_credit, b.total, b.penalty]
}

fn push_nums(rec: &mut Vec<String>, xs: impl IntoIterator<Item = f64>) {
    rec.extend(xs.into_iter().map(|x| x.to_string()));
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    Ok(csv::Writer::from_path(path)?)
}

fn study_row_record(row: &StudyRow) -> Vec<String> {
    let s = &row.scenario;
    let r = &row.result;
    let c = &s.costs;
    let mut rec = vec![s.id.to_string()];
    for p in CostParameter::ALL {
        rec.push(
            s.grid_indices
                .iter()
                .find(|(q, _)| *q == p)
                .map(|(_, k)| k.to_string())
                .unwrap_or_default(),
        );
    }
    push_nums(
        &mut rec,
        [c.occ, c.n_fte, c.s_fte, c.fom, c.vom, c.c_yc, c.c_conv, c.c_swu, c.c_fab, c.c_spent, c.c_dec],
    );
    push_nums(&mut rec, r.best_design.to_array());
    push_nums(&mut rec, breakdown_fields(&r.breakdown));
    push_nums(&mut rec, [r.burnup_residual, row.ptc_reduction_pct()]);
    rec.push(r.evaluations.to_string());
    rec
}

/// One row per scenario.
pub fn write_study_csv(report: &StudyReport, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec!["id".to_string()];
    header.extend(CostParameter::ALL.iter().map(|p| format!("grid_{}", p.name())));
    header.extend(COST_COLUMNS.iter().map(|s| s.to_string()));
    header.extend(VARIABLE_NAMES.iter().map(|s| s.to_string()));
    header.extend(BREAKDOWN_COLUMNS.iter().map(|s| s.to_string()));
    header.extend(["burnup_residual", "ptc_reduction_pct", "evaluations"].map(String::from));
    w.write_record(&header)?;
    for row in &report.rows {
        w.write_record(study_row_record(row))?;
    }
    w.flush()?;
    Ok(())
}

/// Max, min, SD and quartiles of each design column, plus the credit range.
pub fn write_stats_csv(report: &StudyReport, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["variable", "max", "min", "sd", "q1", "median", "q3"])?;
    if let Some(stats) = &report.stats {
        for (name, s) in stats.rows() {
            let mut rec = vec![name.to_string()];
            push_nums(&mut rec, [s.max, s.min, s.sd, s.q1, s.median, s.q3]);
            w.write_record(rec)?;
        }
    }
    let (lo, hi) = report.ptc_reduction_range;
    let mut rec = vec!["ptc_reduction_pct".to_string()];
    push_nums(&mut rec, [hi, lo]);
    rec.extend(["", "", "", ""].map(String::from));
    w.write_record(rec)?;
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv(param: SweepParameter, rows: &[SweepRow], path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec![param.as_str().to_string()];
    header.extend(VARIABLE_NAMES.iter().map(|s| s.to_string()));
    header.extend(BREAKDOWN_COLUMNS.iter().map(|s| s.to_string()));
    header.push("burnup_residual".into());
    w.write_record(&header)?;
    for r in rows {
        let mut rec = Vec::new();
        push_nums(&mut rec, [r.value]);
        push_nums(&mut rec, r.design.to_array());
        push_nums(&mut rec, breakdown_fields(&r.breakdown));
        push_nums(&mut rec, [r.burnup_residual]);
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Optimum of each labelled method, e.g. `ga` and `sa`.
pub fn write_optimize_csv(results: &[(&str, &OptimizationResult)], path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec!["method".to_string()];
    header.extend(VARIABLE_NAMES.iter().map(|s| s.to_string()));
    header.extend(BREAKDOWN_COLUMNS.iter().map(|s| s.to_string()));
    header.extend(["burnup_residual", "evaluations"].map(String::from));
    w.write_record(&header)?;
    for (method, r) in results {
        let mut rec = vec![method.to_string()];
        push_nums(&mut rec, r.best_design.to_array());
        push_nums(&mut rec, breakdown_fields(&r.breakdown));
        push_nums(&mut rec, [r.burnup_residual]);
        rec.push(r.evaluations.to_string());
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_compare_csv(ranking: &[RankEntry], path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["rank", "technology", "lcoe", "delta_vs_microreactor"])?;
    for (i, e) in ranking.iter().enumerate() {
        w.write_record([(i + 1).to_string(), e.name.clone(), e.lcoe.to_string(), e.delta.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    seed_scheme: &'static str,
    command: &'a str,
    seed: u64,
    config_sha256: String,
    outputs: &'a [String],
    config: &'a StudyConfig,
}

/// Writes `manifest_<command>.json` next to the outputs and returns its path.
pub fn write_manifest(
    dir: &Path,
    command: &str,
    seed: u64,
    cfg: &StudyConfig,
    outputs: &[String],
) -> Result<PathBuf> {
    let manifest = Manifest {
        tool: "microlcoe",
        version: env!("CARGO_PKG_VERSION"),
        seed_scheme: SeedScheme::NAME,
        command,
        seed,
        config_sha256: cfg.hash(),
        outputs,
        config: cfg,
    };
    let path = dir.join(format!("manifest_{command}.json"));
    let mut f = std::fs::File::create(&path)?;
    serde_json::to_writer_pretty(&mut f, &manifest)?;
    writeln!(f)?;
    Ok(path)
}

/// Single-design breakdown as `(label, value)` pairs in display order.
pub fn breakdown_lines(d: &ReactorDesign, b: &LcoeBreakdown, residual: f64) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = VARIABLE_NAMES
        .iter()
        .zip(d.to_array())
        .map(|(n, v)| (n.to_string(), format!("{v:.4}")))
        .collect();
    for (n, v) in BREAKDOWN_COLUMNS.iter().zip(breakdown_fields(b)) {
        out.push((format!("{n} ($/MWh)"), format!("{v:.2}")));
    }
    out.push(("annual_energy (MWh/yr)".into(), format!("{:.0}", b.annual_energy)));
    out.push(("burnup_residual (MWd/kg)".into(), format!("{residual:.4}")));
    out.push(("ptc_reduction (%)".into(), format!("{:.2}", 100.0 * b.ptc_reduction())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{run_uncertainty_study, technology_comparison};
    use crate::config::BenchmarkTable;
    use crate::optimize::GaConfig;
    use crate::uncertainty::StudyMode;

    #[test]
    fn study_files_are_reproducible() {
        let cfg = StudyConfig {
            ga: GaConfig { population: 20, generations: 20, restarts: 1, ..GaConfig::default() },
            ..StudyConfig::default()
        };
        let dir = tempfile::tempdir().unwrap();
        let mut bytes = Vec::new();
        for k in 0..2 {
            let report = run_uncertainty_study(&cfg, StudyMode::Fuel, 3, 2).unwrap();
            let a = dir.path().join(format!("s{k}.csv"));
            let b = dir.path().join(format!("t{k}.csv"));
            write_study_csv(&report, &a).unwrap();
            write_stats_csv(&report, &b).unwrap();
            bytes.push((std::fs::read(a).unwrap(), std::fs::read(b).unwrap()));
        }
        assert_eq!(bytes[0], bytes[1]);
        let text = String::from_utf8(bytes[0].0.clone()).unwrap();
        let mut lines = text.lines();
        let header: Vec<_> = lines.next().unwrap().split(',').collect();
        assert_eq!(header[0], "id");
        assert_eq!(lines.count(), 3);
        // occ is outside the fuel group: empty grid index.
        let first: Vec<_> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(first[1], "");
        assert!(!first[6].is_empty());
    }

    #[test]
    fn manifest_has_hash_and_config() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = StudyConfig::default();
        let p = write_manifest(dir.path(), "compare", 5, &cfg, &["compare.csv".into()]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        assert_eq!(v["seed"], 5);
        assert_eq!(v["config_sha256"], cfg.hash());
        assert_eq!(v["config"]["financial"]["eta"], 0.35);
    }

    #[test]
    fn compare_csv() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        write_compare_csv(&technology_comparison(50.0, &BenchmarkTable::default()), &p).unwrap();
        assert_eq!(
            std::fs::read_to_string(p).unwrap(),
            "rank,technology,lcoe,delta_vs_microreactor\n1,microreactor,50,0\n"
        );
    }
}
