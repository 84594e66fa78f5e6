use microlcoe::analysis::{optimization_seed, run_uncertainty_study};
use microlcoe::optimize::LcoeProblem;
use microlcoe::uncertainty::generate_study;
use microlcoe::{DowntimeModel, GaConfig, StudyConfig, StudyMode};

fn light() -> StudyConfig {
    StudyConfig {
        ga: GaConfig {
            restarts: 4,
            ..GaConfig::default()
        },
        ..StudyConfig::default()
    }
}

#[test]
fn all_uncertainty_spread_exceeds_each_group() {
    let cfg = light();
    let spread = |mode| {
        let r = run_uncertainty_study(&cfg, mode, 100, 3).unwrap();
        let s = r.stats.unwrap().lcoe;
        s.max - s.min
    };
    let all = spread(StudyMode::All);
    for mode in [StudyMode::Occ, StudyMode::Om, StudyMode::Fuel] {
        let group = spread(mode);
        assert!(all > group, "{mode}: {group} >= all {all}");
    }
}

#[test]
fn result_fields_are_consistent() {
    let cfg = light();
    for s in generate_study(&cfg.scenario_space(), StudyMode::All, 5, 11).unwrap() {
        let p = LcoeProblem::new(s.costs, cfg.financial, cfg.penalty_weight).unwrap();
        let r = p.optimize_ga(&cfg.ga, optimization_seed(11, s.id)).unwrap();
        assert!(p.bounds.contains(&r.best_design));
        assert!((r.lcoe - r.breakdown.total).abs() < 1e-9);
        let min = r.restart_bests.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((min - (r.lcoe + r.penalty_value)).abs() < 1e-9);
        assert_eq!(r.restart_bests.len(), cfg.ga.restarts);
    }
}

#[test]
fn capacity_goes_to_upper_bound_without_downtime() {
    let mut cfg = light();
    cfg.financial.downtime_model = DowntimeModel::Off;
    for s in generate_study(&cfg.scenario_space(), StudyMode::All, 5, 5).unwrap() {
        let p = LcoeProblem::new(s.costs, cfg.financial, cfg.penalty_weight).unwrap();
        let r = p.optimize_ga(&cfg.ga, optimization_seed(5, s.id)).unwrap();
        assert!(r.best_design.p_elec >= 19.8, "{:?}", r.best_design);
    }
}

#[test]
fn sa_restart_prefix_and_determinism() {
    let cfg = light();
    let p = LcoeProblem::new(cfg.base_costs(), cfg.financial, cfg.penalty_weight).unwrap();
    let few = microlcoe::SaConfig { restarts: 2, ..cfg.sa };
    let more = microlcoe::SaConfig { restarts: 5, ..cfg.sa };
    let a = p.optimize_sa(&few, 8).unwrap();
    let b = p.optimize_sa(&more, 8).unwrap();
    assert_eq!(a.restart_bests[..], b.restart_bests[..2]);
    assert_eq!(p.optimize_sa(&more, 8).unwrap(), b);
}
