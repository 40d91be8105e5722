//! Seeded multi-start coordinate ascent over products of probability simplices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::discrete::SearchConfig;

/// Non-improving sweeps tolerated before the step is halved.
const PATIENCE: usize = 25;
const DECAY: f64 = 0.5;

/// A point in a product of simplices, one block per distribution.
pub(crate) type Blocks = Vec<Vec<f64>>;

pub(crate) fn uniform_blocks(widths: &[usize]) -> Blocks {
    widths.iter().map(|&n| vec![1.0 / n as f64; n]).collect()
}

/// Flat-Dirichlet sample per block.
fn random_blocks(widths: &[usize], rng: &mut ChaCha8Rng) -> Blocks {
    widths
        .iter()
        .map(|&n| {
            let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let total: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / total).collect()
        })
        .collect()
}

/// Ascends from `start`, trying every mass transfer `from -> to` of size
/// `min(step, mass[from])` within each block and keeping strict improvements.
pub(crate) fn ascend<F>(mut point: Blocks, objective: &F, config: &SearchConfig) -> (Blocks, f64)
where
    F: Fn(&[Vec<f64>]) -> f64,
{
    let mut best = objective(&point);
    let mut step = config.initial_step;
    let mut idle = 0;
    let mut iteration = 0;
    while iteration < config.refinement_iterations {
        let mut improved = false;
        for b in 0..point.len() {
            let n = point[b].len();
            for from in 0..n {
                for to in 0..n {
                    let moved = step.min(point[b][from]);
                    if to == from || moved <= 0.0 {
                        continue;
                    }
                    let mut candidate = point.clone();
                    candidate[b][from] -= moved;
                    candidate[b][to] += moved;
                    let total: f64 = candidate[b].iter().sum();
                    candidate[b].iter_mut().for_each(|p| *p /= total);
                    let value = objective(&candidate);
                    if value > best {
                        best = value;
                        point = candidate;
                        improved = true;
                    }
                }
            }
        }
        if improved {
            idle = 0;
            iteration += 1;
        } else {
            // Repeating a failed sweep at the same step is a no-op, so the
            // whole patience window is consumed at once.
            let skip = PATIENCE - idle;
            iteration += skip;
            idle = 0;
            step *= DECAY;
        }
    }
    (point, best)
}

/// Runs `config.restarts` ascents (the first from the uniform point) and
/// returns every result in restart order. Restart `k` draws from a generator
/// seeded by `(seed, stream, k)`, so output does not depend on scheduling.
pub(crate) fn multistart<F>(widths: &[usize], objective: &F, config: &SearchConfig, stream: u64) -> Vec<(Blocks, f64)>
where
    F: Fn(&[Vec<f64>]) -> f64 + Sync,
{
    (0..config.restarts as u64)
        .into_par_iter()
        .map(|k| {
            let start = if k == 0 {
                uniform_blocks(widths)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(stream.wrapping_mul(1 << 20).wrapping_add(k));
                random_blocks(widths, &mut rng)
            };
            ascend(start, objective, config)
        })
        .collect()
}

/// Best result of [`multistart`]; ties go to the earliest restart.
pub(crate) fn maximize<F>(widths: &[usize], objective: &F, config: &SearchConfig, stream: u64) -> (Blocks, f64)
where
    F: Fn(&[Vec<f64>]) -> f64 + Sync,
{
    multistart(widths, objective, config, stream)
        .into_iter()
        .reduce(|best, next| if next.1 > best.1 { next } else { best })
        .expect("at least one restart")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> SearchConfig {
        SearchConfig { restarts: 4, ..SearchConfig::default() }
    }

    #[test]
    fn finds_interior_maximum() {
        // maximized at (0.2, 0.3, 0.5)
        let target = [0.2, 0.3, 0.5];
        let f = |b: &[Vec<f64>]| -b[0].iter().zip(&target).map(|(p, t)| (p - t).powi(2)).sum::<f64>();
        let (point, value) = maximize(&[3], &f, &config(), 0);
        assert!(value > -1e-5, "{value}");
        assert!(point[0].iter().zip(&target).all(|(p, t)| (p - t).abs() < 3e-3), "{point:?}");
    }

    #[test]
    fn never_worse_than_start() {
        let f = |b: &[Vec<f64>]| b[0][0] * b[1][1];
        let start = uniform_blocks(&[2, 2]);
        let (_, v) = ascend(start.clone(), &f, &config());
        assert!(v >= f(&start));
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reproducible() {
        let f = |b: &[Vec<f64>]| (b[0][0] * 3.0).sin() + b[1][2];
        let a = multistart(&[2, 3], &f, &config(), 5);
        let b = multistart(&[2, 3], &f, &config(), 5);
        assert_eq!(a, b);
    }
}
