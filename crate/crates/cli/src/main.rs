use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use microlcoe::analysis::{
    optimization_seed, optimize_base_case, report, run_uncertainty_study, sensitivity_sweep,
    technology_comparison, StudyReport, SweepParameter,
};
use microlcoe::optimize::LcoeProblem;
use microlcoe::{DowntimeModel, Error, InflationMode, ReactorDesign, StudyConfig, StudyMode};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 2;
const EXIT_OPTIMIZATION: u8 = 3;

/// Microreactor LCOE model and design optimizer.
#[derive(Debug, Parser)]
#[command(name = "microlcoe", version)]
struct Cli {
    /// JSON study configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed, overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads. Results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory, overrides the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Refueling-outage capacity factor model.
    #[arg(long, global = true)]
    downtime: Option<Toggle>,
    #[arg(long, global = true)]
    inflation_mode: Option<Inflation>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Inflation {
    Real,
    Escalated,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    All,
    Occ,
    Om,
    Fuel,
    None,
}

impl From<Mode> for StudyMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::All => StudyMode::All,
            Mode::Occ => StudyMode::Occ,
            Mode::Om => StudyMode::Om,
            Mode::Fuel => StudyMode::Fuel,
            Mode::None => StudyMode::None,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one design at nominal costs.
    Lcoe {
        /// e.g. p=19.13,xp=5,xt=0.2913,t=6.24,db=30
        #[arg(long)]
        design: String,
    },
    /// Optimize the base case with the genetic algorithm.
    Optimize {
        /// Also run simulated annealing and report the gap.
        #[arg(long)]
        validate_sa: bool,
    },
    /// Sample cost scenarios and optimize each one.
    Study {
        #[arg(long, value_enum, default_value = "all")]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Re-run the base case over values of one parameter.
    Sweep {
        /// efficiency, discount or inflation.
        #[arg(long)]
        param: SweepParameter,
        /// Comma-separated values; parameter defaults when omitted.
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        /// Hold this design instead of re-optimizing.
        #[arg(long)]
        fixed_design: Option<String>,
    },
    /// Rank the base-case optimum against the configured benchmarks.
    Compare {
        /// Use this microreactor LCOE instead of optimizing.
        #[arg(long)]
        lcoe: Option<f64>,
    },
}

fn parse_design(text: &str) -> microlcoe::Result<ReactorDesign> {
    let mut v = [None; 5];
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("design entry `{part}` is not key=value")))?;
        let i = match key.trim() {
            "p" | "p_elec" => 0,
            "xp" | "x_p" => 1,
            "xt" | "x_t" => 2,
            "t" | "t_refuel" => 3,
            "db" => 4,
            other => return Err(Error::Config(format!("unknown design key `{other}`"))),
        };
        let x: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("design value `{value}` for `{key}` is not a number")))?;
        v[i] = Some(x);
    }
    let missing: Vec<_> = ["p", "xp", "xt", "t", "db"]
        .iter()
        .zip(&v)
        .filter(|(_, x)| x.is_none())
        .map(|(k, _)| *k)
        .collect();
    if !missing.is_empty() {
        return Err(Error::Config(format!("design is missing {}", missing.join(", "))));
    }
    let [p, xp, xt, t, db] = v.map(Option::unwrap);
    ReactorDesign::new(p, xp, xt, t, db).map_err(|e| Error::Config(e.to_string()))
}

fn resolve_config(cli: &Cli) -> microlcoe::Result<StudyConfig> {
    let mut cfg = match &cli.config {
        Some(p) => StudyConfig::from_path(p)?,
        None => StudyConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.output_dir = o.clone();
    }
    if let Some(d) = cli.downtime {
        cfg.financial.downtime_model = match d {
            Toggle::On => DowntimeModel::On,
            Toggle::Off => DowntimeModel::Off,
        };
    }
    if let Some(i) = cli.inflation_mode {
        cfg.financial.inflation_mode = match i {
            Inflation::Real => InflationMode::Real,
            Inflation::Escalated => InflationMode::Escalated,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn print_lines(lines: &[(String, String)]) {
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in lines {
        println!("  {k:<width$}  {v:>14}");
    }
}

fn finish(dir: &Path, command: &str, cfg: &StudyConfig, outputs: Vec<String>) -> anyhow::Result<()> {
    let manifest = report::write_manifest(dir, command, cfg.seed, cfg, &outputs)?;
    for o in &outputs {
        println!("wrote {}", dir.join(o).display());
    }
    println!("wrote {}", manifest.display());
    Ok(())
}

fn print_study(r: &StudyReport) {
    println!("study `{}`: {} scenarios, seed {}", r.mode, r.rows.len(), r.seed);
    if let Some(stats) = &r.stats {
        println!("  {:<18} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}", "variable", "max", "min", "sd", "q1", "median", "q3");
        for (name, s) in stats.rows() {
            println!(
                "  {name:<18} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
                s.max, s.min, s.sd, s.q1, s.median, s.q3
            );
        }
    }
    let (lo, hi) = r.ptc_reduction_range;
    println!("  PTC reduction {lo:.2}% to {hi:.2}%");
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let cfg = resolve_config(&cli)?;
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!(Error::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("building thread pool")?;
    }
    let dir = cfg.output_dir.clone();
    let ensure_dir = || std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()));

    match &cli.command {
        Command::Lcoe { design } => {
            let d = parse_design(design)?;
            let problem = LcoeProblem::new(cfg.base_costs(), cfg.financial, cfg.penalty_weight)?;
            let (b, residual) = problem.evaluate(&d)?;
            println!("LCOE breakdown");
            print_lines(&report::breakdown_lines(&d, &b, residual));
        }
        Command::Optimize { validate_sa } => {
            ensure_dir()?;
            let ga = optimize_base_case(&cfg, cfg.seed)?;
            println!("GA optimum ({} restarts, {} evaluations)", cfg.ga.restarts, ga.evaluations);
            print_lines(&report::breakdown_lines(&ga.best_design, &ga.breakdown, ga.burnup_residual));
            let mut results = vec![("ga", ga.clone())];
            if *validate_sa {
                let problem = LcoeProblem::new(cfg.base_costs(), cfg.financial, cfg.penalty_weight)?;
                let sa = problem.optimize_sa(&cfg.sa, optimization_seed(cfg.seed, 0))?;
                println!("SA optimum ({} restarts, {} evaluations)", cfg.sa.restarts, sa.evaluations);
                print_lines(&report::breakdown_lines(&sa.best_design, &sa.breakdown, sa.burnup_residual));
                println!(
                    "GA/SA LCOE gap: {:.3}%",
                    100.0 * (ga.lcoe - sa.lcoe).abs() / ga.lcoe
                );
                results.push(("sa", sa));
            }
            let labelled: Vec<_> = results.iter().map(|(m, r)| (*m, r)).collect();
            report::write_optimize_csv(&labelled, &dir.join("optimize.csv"))?;
            finish(&dir, "optimize", &cfg, vec!["optimize.csv".into()])?;
        }
        Command::Study { mode, n } => {
            ensure_dir()?;
            let mode = StudyMode::from(*mode);
            let r = run_uncertainty_study(&cfg, mode, *n, cfg.seed)?;
            print_study(&r);
            let rows = format!("study_{mode}.csv");
            let stats = format!("study_{mode}_stats.csv");
            report::write_study_csv(&r, &dir.join(&rows))?;
            report::write_stats_csv(&r, &dir.join(&stats))?;
            finish(&dir, &format!("study_{mode}"), &cfg, vec![rows, stats])?;
        }
        Command::Sweep {
            param,
            values,
            fixed_design,
        } => {
            ensure_dir()?;
            let values = if values.is_empty() {
                param.default_values().to_vec()
            } else {
                values.clone()
            };
            let fixed = fixed_design.as_deref().map(parse_design).transpose()?;
            let rows = sensitivity_sweep(&cfg, *param, &values, fixed, cfg.seed)?;
            println!("{:>10} {:>10} {:>10} {:>10}", param.as_str(), "capital", "fuel", "lcoe");
            for r in &rows {
                println!(
                    "{:>10.4} {:>10.2} {:>10.2} {:>10.2}",
                    r.value, r.breakdown.capital, r.breakdown.fuel, r.breakdown.total
                );
            }
            let name = format!("sensitivity_{param}.csv");
            report::write_sweep_csv(*param, &rows, &dir.join(&name))?;
            finish(&dir, &format!("sweep_{param}"), &cfg, vec![name])?;
        }
        Command::Compare { lcoe } => {
            ensure_dir()?;
            let micro = match lcoe {
                Some(v) => *v,
                None => optimize_base_case(&cfg, cfg.seed)?.lcoe,
            };
            let ranking = technology_comparison(micro, &cfg.benchmarks);
            for (i, e) in ranking.iter().enumerate() {
                println!("{:>3}  {:<28} {:>8.2} {:>+9.2}", i + 1, e.name, e.lcoe, e.delta);
            }
            report::write_compare_csv(&ranking, &dir.join("compare.csv"))?;
            finish(&dir, "compare", &cfg, vec!["compare.csv".into()])?;
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Config(_)) => EXIT_CONFIG,
        Some(Error::Scenario { .. } | Error::Evaluation { .. }) => EXIT_OPTIMIZATION,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn design_parsing() {
        let d = parse_design("p=19.13, xp=5,xt=0.2913,t=6.24,db=30").unwrap();
        assert_eq!(d.to_array(), [19.13, 5.0, 0.2913, 6.24, 30.0]);
        assert!(parse_design("p=19.13,xp=5").is_err());
        assert!(parse_design("p=19.13,xp=5,xt=0.2913,t=6.24,db=40").is_err());
        assert!(parse_design("q=1").is_err());
        assert!(parse_design("p=x").is_err());
    }

    #[test]
    fn cli_definition_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
