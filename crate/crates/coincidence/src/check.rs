//! Monte Carlo estimates set against the exact values, one row per
//! quantity.

use std::collections::{BTreeMap, BTreeSet};

use coincidence_core::bayesian::{
    alt_name_likelihood, roster_draw_probability, Weight, WeightTable,
};
use coincidence_core::frequentist::evaluate_scenario;
use coincidence_core::rational::to_f64;
use coincidence_core::sample::RosterDraw;
use coincidence_core::{Gender, Rational};
use num_traits::{Signed, Zero};

use crate::config::ScenarioConfig;
use crate::montecarlo::{
    simulate_alt_likelihood, simulate_frequentist, simulate_weighted_draw, SimConfig, SimEstimate,
};

/// Agreement band, in standard errors.
pub const TOLERANCE_SE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckTarget {
    Freq,
    Draw,
    Alt,
    All,
}

impl CheckTarget {
    fn includes(self, other: CheckTarget) -> bool {
        self == CheckTarget::All || self == other
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub sim: SimConfig,
    pub target: CheckTarget,
    /// Added to every exact value before comparing. Non-zero only to show
    /// that the harness can fail.
    pub corrupt: f64,
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub target: &'static str,
    pub label: String,
    /// The exact value, when it was compared unaltered.
    pub exact: Option<Rational>,
    pub exact_value: f64,
    pub estimate: SimEstimate,
    pub pass: bool,
}

impl CheckRow {
    fn new(
        target: &'static str,
        label: String,
        exact: Rational,
        estimate: SimEstimate,
        corrupt: f64,
    ) -> Self {
        let exact_value = to_f64(&exact) + corrupt;
        CheckRow {
            target,
            label,
            exact: (corrupt == 0.0).then_some(exact),
            exact_value,
            pass: estimate.agrees_with(exact_value, TOLERANCE_SE),
            estimate,
        }
    }
}

/// Every possible roster draw with its exact probability.
pub fn roster_outcomes(
    weights: &[Weight],
    others: &Rational,
    occupants: usize,
) -> coincidence_core::Result<Vec<(RosterDraw, Rational)>> {
    let forced: Vec<usize> = (0..weights.len())
        .filter(|&i| weights[i] == Weight::Infinite)
        .collect();
    let pool: Vec<usize> = (0..weights.len())
        .filter(|&i| weights[i].finite().is_some_and(|w| w.is_positive()))
        .collect();
    let Some(free) = occupants.checked_sub(forced.len()) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for mask in 0u64..(1 << pool.len()) {
        let chosen = mask.count_ones() as usize;
        if chosen > free {
            continue;
        }
        let rest = free - chosen;
        if rest > 0 && others.is_zero() {
            continue;
        }
        let mut persons: Vec<usize> = forced.clone();
        persons.extend(
            (0..pool.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| pool[b]),
        );
        persons.sort_unstable();
        let p = roster_draw_probability(weights, others, &persons, rest)?;
        if !p.is_zero() {
            out.push((
                RosterDraw {
                    persons,
                    others: rest,
                },
                p,
            ));
        }
    }
    Ok(out)
}

/// Independent seed for the `index`-th simulation of a run, so rows do not
/// share random streams.
fn sub_config(sim: &SimConfig, index: u64) -> SimConfig {
    let mut z = sim.seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    SimConfig {
        seed: z ^ (z >> 31),
        ..*sim
    }
}

fn distinct_tables(cfg: &ScenarioConfig) -> Vec<&WeightTable> {
    let mut seen = BTreeSet::new();
    cfg.bayes
        .iter()
        .flat_map(|b| b.runs.iter())
        .map(|r| &r.table)
        .filter(|t| seen.insert(t.label.clone()))
        .collect()
}

fn draw_label(table: &WeightTable, gender: Gender, draw: &RosterDraw) -> String {
    let names: Vec<&str> = table
        .persons_of(gender)
        .map(|p| p.person.as_str())
        .collect();
    let mut parts: Vec<String> = draw.persons.iter().map(|&i| names[i].to_string()).collect();
    if draw.others > 0 {
        parts.push(format!("others x{}", draw.others));
    }
    format!("{} {} {{{}}}", table.label, gender, parts.join(", "))
}

fn draw_checks(
    cfg: &ScenarioConfig,
    opts: &CheckOptions,
    rows: &mut Vec<CheckRow>,
) -> coincidence_core::Result<()> {
    let Some(bayes) = &cfg.bayes else {
        return Ok(());
    };
    for (t, table) in distinct_tables(cfg).into_iter().enumerate() {
        for gender in Gender::BOTH {
            let occupants = bayes.inscriptions.names(gender).len();
            if occupants == 0 {
                continue;
            }
            let weights: Vec<Weight> = table.persons_of(gender).map(|p| p.weight.clone()).collect();
            let others = table.others(gender);
            let sim = sub_config(&opts.sim, 1000 + 2 * t as u64 + gender as u64);
            let simulated = simulate_weighted_draw(&weights, others, occupants, &sim)?;
            let mut exact: BTreeMap<RosterDraw, Rational> =
                roster_outcomes(&weights, others, occupants)?
                    .into_iter()
                    .collect();
            for draw in simulated.keys() {
                exact.entry(draw.clone()).or_insert_with(Rational::zero);
            }
            for (draw, p) in exact {
                let est = simulated
                    .get(&draw)
                    .copied()
                    .unwrap_or_else(|| SimEstimate::from_counts(0, sim.trials, sim.seed));
                rows.push(CheckRow::new(
                    "draw",
                    draw_label(table, gender, &draw),
                    p,
                    est,
                    opts.corrupt,
                ));
            }
        }
    }
    Ok(())
}

pub fn run_checks(
    cfg: &ScenarioConfig,
    opts: &CheckOptions,
) -> coincidence_core::Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let o = &cfg.onomasticon;
    if opts.target.includes(CheckTarget::Freq) {
        for (i, scenario) in cfg.freq.iter().enumerate() {
            let row = evaluate_scenario(o, scenario)?;
            let label = format!(
                "{} {} {} N={}",
                row.variant,
                row.ratio.label(),
                row.anchor,
                row.tombs
            );
            let est = simulate_frequentist(o, scenario, &sub_config(&opts.sim, i as u64));
            rows.push(CheckRow::new("freq", label, row.p_value, est, opts.corrupt));
        }
    }
    if opts.target.includes(CheckTarget::Draw) {
        draw_checks(cfg, opts, &mut rows)?;
    }
    if opts.target.includes(CheckTarget::Alt) {
        if let Some(bayes) = &cfg.bayes {
            let insc = bayes.inscriptions.resolved(o);
            for (t, table) in distinct_tables(cfg).into_iter().enumerate() {
                let exact = alt_name_likelihood(&insc, table, o)?;
                let est = simulate_alt_likelihood(
                    &insc,
                    table,
                    o,
                    &sub_config(&opts.sim, 2000 + t as u64),
                );
                rows.push(CheckRow::new(
                    "alt",
                    table.label.clone(),
                    exact,
                    est,
                    opts.corrupt,
                ));
            }
        }
    }
    Ok(rows)
}
