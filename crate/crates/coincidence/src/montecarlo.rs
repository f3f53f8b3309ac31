//! Seeded Monte Carlo estimates of the exact quantities.
//!
//! Trial `i` always draws from ChaCha8 stream `i` of the configured seed,
//! so an estimate depends only on `(seed, trials)`: not on the batch size,
//! the thread count, or scheduling.

use std::collections::BTreeMap;

use coincidence_core::bayesian::{TombInscriptions, Weight, WeightTable};
use coincidence_core::frequentist::FreqScenario;
use coincidence_core::sample::{AltTrial, FreqTrial, NameSampler, RosterDraw, RosterSampler};
use coincidence_core::{Onomasticon, RatioModel, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub batch_size: u64,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        SimConfig {
            trials: trials.max(1),
            seed,
            batch_size: 10_000,
        }
    }

    pub fn with_batch_size(mut self, batch_size: u64) -> Self {
        self.batch_size = batch_size.max(1);
        self
    }

    fn batches(&self) -> impl ParallelIterator<Item = std::ops::Range<u64>> + '_ {
        let n = self.trials.div_ceil(self.batch_size);
        (0..n).into_par_iter().map(move |b| {
            let start = b * self.batch_size;
            start..(start + self.batch_size).min(self.trials)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    pub point: f64,
    pub standard_error: f64,
    pub hits: u64,
    pub trials: u64,
    pub seed: u64,
}

impl SimEstimate {
    pub fn from_counts(hits: u64, trials: u64, seed: u64) -> Self {
        let point = hits as f64 / trials as f64;
        SimEstimate {
            point,
            standard_error: (point * (1.0 - point) / trials as f64).sqrt(),
            hits,
            trials,
            seed,
        }
    }

    /// Whether `exact` lies within `k` standard errors. The error is the
    /// larger of the empirical one and the one implied by `exact`, so a
    /// zero-hit estimate of a small but positive probability is judged
    /// fairly.
    pub fn agrees_with(&self, exact: f64, k: f64) -> bool {
        let implied = (exact * (1.0 - exact) / self.trials as f64).max(0.0).sqrt();
        let se = self.standard_error.max(implied);
        if se == 0.0 {
            return (self.point - exact).abs() < 1e-12;
        }
        (self.point - exact).abs() <= k * se
    }
}

/// Estimate the probability that `trial` returns true.
pub fn estimate<F>(cfg: &SimConfig, trial: F) -> SimEstimate
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let hits: u64 = cfg
        .batches()
        .map(|range| {
            range
                .filter(|&i| {
                    let mut rng = base.clone();
                    rng.set_stream(i);
                    trial(&mut rng)
                })
                .count() as u64
        })
        .sum();
    SimEstimate::from_counts(hits, cfg.trials, cfg.seed)
}

/// Chance that at least one tomb of the population is interesting.
pub fn simulate_frequentist(
    o: &Onomasticon,
    scenario: &FreqScenario,
    cfg: &SimConfig,
) -> SimEstimate {
    let sim = FreqTrial::new(o, scenario);
    estimate(cfg, |rng| sim.run(rng))
}

/// Empirical distribution of roster draws with `occupants` places.
pub fn simulate_weighted_draw(
    weights: &[Weight],
    others: &Rational,
    occupants: usize,
    cfg: &SimConfig,
) -> Result<BTreeMap<RosterDraw, SimEstimate>, coincidence_core::Error> {
    let sampler = RosterSampler::new(weights, others);
    sampler.check_feasible(occupants)?;
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let counts = cfg
        .batches()
        .map(|range| {
            let mut local: BTreeMap<RosterDraw, u64> = BTreeMap::new();
            for i in range {
                let mut rng = base.clone();
                rng.set_stream(i);
                if let Some(draw) = sampler.draw(occupants, &mut rng) {
                    *local.entry(draw).or_default() += 1;
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(counts
        .into_iter()
        .map(|(k, hits)| (k, SimEstimate::from_counts(hits, cfg.trials, cfg.seed)))
        .collect())
}

/// Chance that the family hypothesis produces exactly the observed names.
pub fn simulate_alt_likelihood(
    insc: &TombInscriptions,
    table: &WeightTable,
    o: &Onomasticon,
    cfg: &SimConfig,
) -> SimEstimate {
    let sim = AltTrial::new(insc, table, o);
    // ratio is irrelevant: only gender-conditional draws are used
    let names = NameSampler::new(o, RatioModel::Equal);
    estimate(cfg, |rng| sim.run(&names, rng))
}
