//! Real-coded genetic algorithm.
//!
//! Roulette-wheel parent selection on shifted fitness, per-gene BLX-0.5
//! blend crossover, Gaussian mutation clamped to the box, and elitism.

use super::{checked_eval, snap_to_bounds, GaConfig, Minimum};
use crate::design::{DesignBounds, ReactorDesign, DIM};
use crate::error::Result;
use crate::rng::{label, SeedScheme};
use crate::uncertainty::RouletteWheel;
use rand::Rng;
use rand_distr::StandardNormal;

const BLEND_ALPHA: f64 = 0.5;
const STALL_TOLERANCE: f64 = 1e-6;
/// Coordinates within this fraction of a bound are tried on the bound.
pub(crate) const SNAP_FRACTION: f64 = 0.01;

/// Minimizes `objective` over `bounds`. Deterministic in `seed`.
pub fn ga_minimize<F>(
    objective: F,
    bounds: &DesignBounds,
    config: &GaConfig,
    seed: u64,
) -> Result<Minimum>
where
    F: Fn(&ReactorDesign) -> Result<f64>,
{
    config.validate()?;
    let mut rng = SeedScheme::new(seed).stream(&[label::OPTIMIZE]);
    let n = config.population;

    let mut pop: Vec<[f64; DIM]> = (0..n)
        .map(|_| std::array::from_fn(|j| bounds.lower[j] + rng.random::<f64>() * bounds.range(j)))
        .collect();
    let mut fit = pop
        .iter()
        .map(|v| checked_eval(&objective, v))
        .collect::<Result<Vec<_>>>()?;
    let mut evaluations = n;

    let mut order: Vec<usize> = (0..n).collect();
    let sort = |order: &mut Vec<usize>, fit: &[f64]| {
        order.sort_by(|&a, &b| fit[a].total_cmp(&fit[b]).then(a.cmp(&b)));
    };
    sort(&mut order, &fit);
    let mut best = pop[order[0]];
    let mut best_value = fit[order[0]];
    let mut history = Vec::with_capacity(config.generations + 1);
    history.push(best_value);
    let mut stall = 0;

    for _ in 0..config.generations {
        let worst = fit[order[n - 1]];
        let spread = worst - best_value;
        let weights: Vec<f64> = if spread > 0.0 {
            let eps = 1e-9 * spread;
            fit.iter().map(|&f| worst - f + eps).collect()
        } else {
            vec![1.0; n]
        };
        let wheel = RouletteWheel::new(&weights)?;

        let mut next: Vec<[f64; DIM]> = order[..config.elite_count].iter().map(|&i| pop[i]).collect();
        let mut next_fit: Vec<f64> = order[..config.elite_count].iter().map(|&i| fit[i]).collect();
        while next.len() < n {
            let a = &pop[wheel.sample(&mut rng)];
            let b = &pop[wheel.sample(&mut rng)];
            let mut child = *a;
            for j in 0..DIM {
                if rng.random::<f64>() < config.crossover_rate {
                    let beta = -BLEND_ALPHA + (1.0 + 2.0 * BLEND_ALPHA) * rng.random::<f64>();
                    child[j] = a[j] + beta * (b[j] - a[j]);
                }
                if rng.random::<f64>() < config.mutation_rate {
                    let z: f64 = rng.sample(StandardNormal);
                    child[j] += z * config.mutation_scale * bounds.range(j);
                }
            }
            bounds.clamp(&mut child);
            next_fit.push(checked_eval(&objective, &child)?);
            next.push(child);
            evaluations += 1;
        }
        pop = next;
        fit = next_fit;
        sort(&mut order, &fit);

        let gen_best = fit[order[0]];
        if gen_best < best_value - STALL_TOLERANCE {
            stall = 0;
        } else {
            stall += 1;
        }
        if gen_best < best_value {
            best_value = gen_best;
            best = pop[order[0]];
        }
        history.push(best_value);
        if stall >= config.stall_generations {
            break;
        }
    }

    evaluations += snap_to_bounds(&objective, bounds, &mut best, &mut best_value, SNAP_FRACTION)?;
    Ok(Minimum {
        design: ReactorDesign::from_array(best),
        value: best_value,
        evaluations,
        history,
    })
}
