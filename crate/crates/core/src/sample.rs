//! Per-trial samplers for the Monte Carlo oracle.
//!
//! These simulate the generative stories directly (names drawn one ossuary
//! at a time, roster members drawn one by one) and never call the exact
//! formulas they are meant to check.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::bayesian::{TombInscriptions, Weight, WeightTable};
use crate::error::{Error, Result};
use crate::frequentist::{AnchorSpec, FreqScenario};
use crate::onomasticon::{Gender, Onomasticon, RatioModel};
use crate::rational::to_f64;

/// One name drawn from the population.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NameDraw {
    pub gender: Gender,
    /// Index into [`Onomasticon::records`]; `None` for unlisted names.
    pub record: Option<usize>,
}

/// Integer-exact sampler over the onomasticon counts.
///
/// Mixed-gender draws use a single integer over the joint distribution when
/// the common denominator fits in a `u64`, and a gender-then-name draw
/// otherwise.
#[derive(Debug, Clone)]
pub struct NameSampler {
    totals: [u64; 2],
    male_share: (u64, u64),
    cumulative: [Vec<(u64, usize)>; 2],
    joint: Option<(u64, Vec<(u64, NameDraw)>)>,
}

impl NameSampler {
    pub fn new(o: &Onomasticon, ratio: RatioModel) -> Self {
        let mut cumulative: [Vec<(u64, usize)>; 2] = [Vec::new(), Vec::new()];
        let mut running = [0u64; 2];
        for (i, record) in o.records().iter().enumerate() {
            if record.count == 0 {
                continue;
            }
            let g = record.gender as usize;
            running[g] += record.count;
            cumulative[g].push((running[g], i));
        }
        let male_share = match ratio {
            RatioModel::Equal => (1, 2),
            RatioModel::Empirical => (o.male_total(), o.male_total() + o.female_total()),
        };
        let totals = [o.male_total(), o.female_total()];
        let joint = Self::joint_table(o, totals, male_share);
        NameSampler {
            totals,
            male_share,
            cumulative,
            joint,
        }
    }

    fn joint_table(
        o: &Onomasticon,
        totals: [u64; 2],
        (a, b): (u64, u64),
    ) -> Option<(u64, Vec<(u64, NameDraw)>)> {
        let (m, f) = (u128::from(totals[0]), u128::from(totals[1]));
        let (a, b) = (u128::from(a), u128::from(b));
        let denom = b * m * f;
        if denom > u128::from(u64::MAX) {
            return None;
        }
        // weight of one male unit is a*F, of one female unit (b-a)*M
        let unit = [a * f, (b - a) * m];
        let mut table = Vec::new();
        let mut acc = 0u128;
        for gender in Gender::BOTH {
            let g = gender as usize;
            for (i, record) in o.records().iter().enumerate() {
                if record.gender == gender && record.count > 0 {
                    acc += unit[g] * u128::from(record.count);
                    table.push((
                        acc as u64,
                        NameDraw {
                            gender,
                            record: Some(i),
                        },
                    ));
                }
            }
            let unlisted = o.unlisted_count(gender);
            if unlisted > 0 && unit[g] > 0 {
                acc += unit[g] * u128::from(unlisted);
                table.push((
                    acc as u64,
                    NameDraw {
                        gender,
                        record: None,
                    },
                ));
            }
        }
        debug_assert_eq!(acc, denom);
        Some((denom as u64, table))
    }

    pub fn draw_gender<R: Rng + ?Sized>(&self, rng: &mut R) -> Gender {
        if rng.random_range(0..self.male_share.1) < self.male_share.0 {
            Gender::Male
        } else {
            Gender::Female
        }
    }

    /// A name from one gender's frequency distribution.
    pub fn draw_in<R: Rng + ?Sized>(&self, gender: Gender, rng: &mut R) -> Option<usize> {
        let g = gender as usize;
        let u = rng.random_range(0..self.totals[g]);
        let table = &self.cumulative[g];
        let at = table.partition_point(|&(cum, _)| cum <= u);
        table.get(at).map(|&(_, record)| record)
    }

    /// Chance that one draw lands on the male record `record`, read off the
    /// sampling tables.
    pub fn draw_chance(&self, record: Option<usize>) -> f64 {
        let Some(record) = record else { return 0.0 };
        if let Some((denom, table)) = &self.joint {
            let mut prev = 0u64;
            for &(cum, draw) in table {
                if draw.gender == Gender::Male && draw.record == Some(record) {
                    return (cum - prev) as f64 / *denom as f64;
                }
                prev = cum;
            }
            return 0.0;
        }
        let mut prev = 0u64;
        for &(cum, r) in &self.cumulative[Gender::Male as usize] {
            if r == record {
                let share = self.male_share.0 as f64 / self.male_share.1 as f64;
                return share * (cum - prev) as f64 / self.totals[0] as f64;
            }
            prev = cum;
        }
        0.0
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> NameDraw {
        match &self.joint {
            Some((denom, table)) => {
                let u = rng.random_range(0..*denom);
                let at = table.partition_point(|&(cum, _)| cum <= u);
                table[at].1
            }
            None => {
                let gender = self.draw_gender(rng);
                NameDraw {
                    gender,
                    record: self.draw_in(gender, rng),
                }
            }
        }
    }
}

/// Simulates whether at least one tomb in a population is interesting.
///
/// Tombs whose anchor ossuary misses are skipped in one geometric jump, so
/// the cost of a trial grows with the number of anchor hits rather than the
/// number of tombs.
#[derive(Debug, Clone)]
pub struct FreqTrial {
    names: NameSampler,
    anchor_p: f64,
    in_target: Vec<bool>,
    threshold: u64,
    sizes: Vec<u64>,
}

impl FreqTrial {
    pub fn new(o: &Onomasticon, scenario: &FreqScenario) -> Self {
        let names = NameSampler::new(o, scenario.ratio);
        let lookup = |name: &str| {
            o.records()
                .iter()
                .position(|r| r.gender == Gender::Male && r.name == name)
        };
        let anchor: Vec<Option<usize>> = match &scenario.anchor {
            AnchorSpec::Single(name) => alloc::vec![lookup(name)],
            AnchorSpec::Compound { primary, second } => {
                alloc::vec![lookup(primary), lookup(second)]
            }
        };
        let anchor_p = anchor.iter().map(|&r| names.draw_chance(r)).product();
        let in_target = o
            .records()
            .iter()
            .map(|r| scenario.target.contains(&r.name, r.gender))
            .collect();
        FreqTrial {
            names,
            anchor_p,
            in_target,
            threshold: u64::from(scenario.target.threshold()),
            sizes: scenario.population.sizes().collect(),
        }
    }

    /// Number of anchor misses before the next hit.
    fn skip<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        if self.anchor_p >= 1.0 {
            return 0;
        }
        if self.anchor_p <= 0.0 {
            return usize::MAX;
        }
        let u = 1.0 - rng.random::<f64>();
        let gap = libm::log(u) / libm::log1p(-self.anchor_p);
        if gap >= usize::MAX as f64 {
            usize::MAX
        } else {
            gap as usize
        }
    }

    fn companions<R: Rng + ?Sized>(&self, ossuaries: u64, rng: &mut R) -> bool {
        let mut hits = 0;
        for _ in 1..ossuaries {
            let draw = self.names.draw(rng);
            if draw.record.is_some_and(|r| self.in_target[r]) {
                hits += 1;
            }
        }
        hits >= self.threshold
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        let mut tomb = 0usize;
        loop {
            tomb = tomb.saturating_add(self.skip(rng));
            match self.sizes.get(tomb) {
                None => return false,
                Some(&n) if self.companions(n, rng) => return true,
                Some(_) => tomb += 1,
            }
        }
    }
}

/// Result of drawing a tomb's occupants from a roster.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RosterDraw {
    /// Roster indices, sorted.
    pub persons: Vec<usize>,
    /// Number of draws that landed on the "others" pool.
    pub others: usize,
}

/// Sequential weighted draws without replacement from a single-gender
/// roster, with certain members placed first and an inexhaustible others
/// pool.
#[derive(Debug, Clone)]
pub struct RosterSampler {
    forced: Vec<usize>,
    weights: Vec<f64>,
    others: f64,
}

impl RosterSampler {
    pub fn new(weights: &[Weight], others: &crate::Rational) -> Self {
        let forced = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w == Weight::Infinite)
            .map(|(i, _)| i)
            .collect();
        let weights = weights
            .iter()
            .map(|w| w.finite().map_or(0.0, to_f64))
            .collect();
        RosterSampler {
            forced,
            weights,
            others: to_f64(others),
        }
    }

    pub fn from_table(table: &WeightTable, gender: Gender) -> Self {
        let weights: Vec<Weight> = table.persons_of(gender).map(|p| p.weight.clone()).collect();
        Self::new(&weights, table.others(gender))
    }

    pub fn forced_count(&self) -> usize {
        self.forced.len()
    }

    /// Check that `occupants` draws are always possible.
    pub fn check_feasible(&self, occupants: usize) -> Result<()> {
        if self.forced.len() > occupants {
            return Err(Error::InfeasibleDraw {
                draws: occupants,
                reason: "more certain members than places",
            });
        }
        let positive = self.weights.iter().filter(|&&w| w > 0.0).count();
        let needed = occupants - self.forced.len();
        if self.others <= 0.0 && positive < needed {
            return Err(Error::InfeasibleDraw {
                draws: occupants,
                reason: "not enough positive weight to fill every place",
            });
        }
        Ok(())
    }

    /// Draw `occupants` members. `None` if the mass runs out.
    pub fn draw<R: Rng + ?Sized>(&self, occupants: usize, rng: &mut R) -> Option<RosterDraw> {
        if self.forced.len() > occupants {
            return None;
        }
        let mut taken: Vec<bool> = self.weights.iter().map(|_| false).collect();
        for &i in &self.forced {
            taken[i] = true;
        }
        let mut others = 0;
        for _ in self.forced.len()..occupants {
            let listed: f64 = self
                .weights
                .iter()
                .zip(&taken)
                .filter(|(_, t)| !**t)
                .map(|(w, _)| *w)
                .sum();
            let total = listed + self.others;
            if total <= 0.0 {
                return None;
            }
            let mut u = rng.random::<f64>() * total;
            let mut picked = None;
            for (i, w) in self.weights.iter().enumerate() {
                if taken[i] || *w <= 0.0 {
                    continue;
                }
                if u < *w {
                    picked = Some(i);
                    break;
                }
                u -= *w;
            }
            match picked {
                Some(i) => taken[i] = true,
                None if self.others > 0.0 => others += 1,
                // rounding left u past the last listed weight
                None => {
                    let last = (0..self.weights.len())
                        .rev()
                        .find(|&i| !taken[i] && self.weights[i] > 0.0)?;
                    taken[last] = true;
                }
            }
        }
        let persons = (0..taken.len()).filter(|&i| taken[i]).collect();
        Some(RosterDraw { persons, others })
    }
}

/// Simulates the family hypothesis and checks whether the drawn tomb shows
/// exactly the observed names.
#[derive(Debug, Clone)]
pub struct AltTrial {
    genders: Vec<GenderTrial>,
}

#[derive(Debug, Clone)]
struct GenderTrial {
    gender: Gender,
    roster: RosterSampler,
    person_names: Vec<u32>,
    record_names: Vec<u32>,
    observed: Vec<u32>,
}

const UNLISTED: u32 = u32::MAX;

impl AltTrial {
    pub fn new(insc: &TombInscriptions, table: &WeightTable, o: &Onomasticon) -> Self {
        let mut ids: BTreeMap<String, u32> = BTreeMap::new();
        let mut intern = |name: &str| -> u32 {
            let next = ids.len() as u32;
            *ids.entry(String::from(name)).or_insert(next)
        };
        let insc = insc.resolved(o);
        let mut genders = Vec::new();
        for gender in Gender::BOTH {
            let person_names = table
                .persons_of(gender)
                .map(|p| intern(&p.broad_name))
                .collect();
            let record_names = o
                .records()
                .iter()
                .map(|r| {
                    if r.gender == gender {
                        intern(&r.name)
                    } else {
                        UNLISTED
                    }
                })
                .collect();
            let mut observed: Vec<u32> = insc.names(gender).iter().map(|n| intern(n)).collect();
            observed.sort_unstable();
            genders.push(GenderTrial {
                gender,
                roster: RosterSampler::from_table(table, gender),
                person_names,
                record_names,
                observed,
            });
        }
        AltTrial { genders }
    }

    pub fn run<R: Rng + ?Sized>(&self, names: &NameSampler, rng: &mut R) -> bool {
        for g in &self.genders {
            let Some(draw) = g.roster.draw(g.observed.len(), rng) else {
                return false;
            };
            let mut seen: Vec<u32> = draw.persons.iter().map(|&i| g.person_names[i]).collect();
            for _ in 0..draw.others {
                let name = names
                    .draw_in(g.gender, rng)
                    .map_or(UNLISTED, |r| g.record_names[r]);
                seen.push(name);
            }
            seen.sort_unstable();
            if seen != g.observed {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frequentist::{TargetSetSpec, TombPopulation};
    use crate::onomasticon::NameRecord;
    use crate::rational::ratio;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn name_sampler_respects_counts() {
        let o = Onomasticon::new(
            4,
            2,
            vec![
                NameRecord::new("a", Gender::Male, 3),
                NameRecord::new("b", Gender::Female, 2),
            ],
        )
        .unwrap();
        let s = NameSampler::new(&o, RatioModel::Empirical);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 60_000;
        let mut a = 0;
        let mut b = 0;
        for _ in 0..n {
            let d = s.draw(&mut rng);
            match (d.gender, d.record) {
                (Gender::Male, Some(0)) => a += 1,
                (Gender::Female, Some(1)) => b += 1,
                _ => {}
            }
        }
        // P(a) = 4/6 * 3/4 = 1/2, P(b) = 2/6
        assert!((a as f64 / n as f64 - 0.5).abs() < 0.01);
        assert!((b as f64 / n as f64 - 1.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn draw_chance_agrees_across_tables() {
        let o = Onomasticon::new(
            4,
            2,
            vec![
                NameRecord::new("a", Gender::Male, 3),
                NameRecord::new("b", Gender::Female, 2),
            ],
        )
        .unwrap();
        let s = NameSampler::new(&o, RatioModel::Empirical);
        assert!((s.draw_chance(Some(0)) - 0.5).abs() < 1e-15);
        assert_eq!(s.draw_chance(Some(1)), 0.0);
        assert_eq!(s.draw_chance(None), 0.0);
        let split = NameSampler { joint: None, ..s };
        assert!((split.draw_chance(Some(0)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn forced_members_always_drawn() {
        let weights = vec![
            Weight::Finite(ratio(1, 1)),
            Weight::Infinite,
            Weight::Finite(ratio(2, 1)),
        ];
        let s = RosterSampler::new(&weights, &ratio(0, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let d = s.draw(2, &mut rng).unwrap();
            assert!(d.persons.contains(&1));
            assert_eq!(d.persons.len(), 2);
        }
        assert!(s.check_feasible(3).is_ok());
        assert!(s.check_feasible(4).is_err());
        assert!(s.check_feasible(0).is_err());
    }

    #[test]
    fn degenerate_frequentist_trials() {
        let o = Onomasticon::new(
            10,
            10,
            vec![
                NameRecord::new("jesus", Gender::Male, 10),
                NameRecord::new("mary", Gender::Female, 10),
            ],
        )
        .unwrap();
        let pop = TombPopulation::uniform(3, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let none = FreqScenario {
            target: TargetSetSpec::new::<_, &str>("empty", [], 3).unwrap(),
            ratio: RatioModel::Equal,
            anchor: AnchorSpec::single("jesus"),
            population: pop.clone(),
        };
        let trial = FreqTrial::new(&o, &none);
        assert!((0..500).all(|_| !trial.run(&mut rng)));

        // every draw is jesus and jesus is in the set
        let male_only =
            Onomasticon::new(10, 10, vec![NameRecord::new("jesus", Gender::Male, 10)]).unwrap();
        let all = FreqScenario {
            target: TargetSetSpec::new("all", [("jesus", Gender::Male)], 3).unwrap(),
            ratio: RatioModel::Empirical,
            anchor: AnchorSpec::single("jesus"),
            population: pop,
        };
        let trial = FreqTrial {
            names: NameSampler {
                totals: [10, 10],
                male_share: (1, 1),
                cumulative: [vec![(10, 0)], vec![]],
                joint: None,
            },
            anchor_p: 1.0,
            ..FreqTrial::new(&male_only, &all)
        };
        assert!((0..500).all(|_| trial.run(&mut rng)));
    }
}
