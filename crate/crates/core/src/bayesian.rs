//! Posterior probability that a tomb belongs to a hypothesized family.
//!
//! Under the null the inscribed names are independent draws from the
//! population frequencies, separately per gender and unordered. Under the
//! alternative the occupants are drawn without replacement from a weighted
//! family roster: infinite weights are certain members, finite weights are
//! relative chances, and a lumped "others" weight stands for every unlisted
//! relative. An "other" never depletes (it is a pool of many small weights)
//! and carries a name drawn from the population. Configuration and genealogy
//! terms are assumed equal under both hypotheses and never enter the ratio.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::onomasticon::{Gender, Onomasticon};
use crate::rational::{display, factorial, int, pow, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorSpec {
    n_tombs: u64,
    t: Rational,
}

impl PriorSpec {
    /// `t` is the prior chance that the family has a tomb at all; the tomb is
    /// then one of `n_tombs` equally likely candidates.
    pub fn new(n_tombs: u64, t: Rational) -> Result<Self> {
        if t.is_negative() || t > Rational::one() {
            return Err(Error::PriorTOutOfRange);
        }
        if n_tombs == 0 {
            return Err(Error::EmptyPopulation);
        }
        let p = &t / int(n_tombs);
        if p >= Rational::one() {
            return Err(Error::PriorNotBelowOne(display(&p)));
        }
        Ok(PriorSpec { n_tombs, t })
    }

    pub fn n_tombs(&self) -> u64 {
        self.n_tombs
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn probability(&self) -> Rational {
        &self.t / int(self.n_tombs)
    }
}

pub fn prior_odds(prior: &PriorSpec) -> Rational {
    let p = prior.probability();
    &p / (Rational::one() - &p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    Finite(Rational),
    /// Certain member of the tomb.
    Infinite,
}

impl Weight {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersonWeight {
    pub person: String,
    pub gender: Gender,
    pub broad_name: String,
    pub weight: Weight,
}

impl PersonWeight {
    pub fn new(
        person: impl Into<String>,
        gender: Gender,
        broad_name: impl Into<String>,
        weight: Weight,
    ) -> Self {
        PersonWeight {
            person: person.into(),
            gender,
            broad_name: broad_name.into(),
            weight,
        }
    }
}

/// Hypothesized family roster with draw weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    pub label: String,
    persons: Vec<PersonWeight>,
    others_male: Rational,
    others_female: Rational,
}

impl WeightTable {
    pub fn new(
        label: impl Into<String>,
        persons: Vec<PersonWeight>,
        others_male: Rational,
        others_female: Rational,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &persons {
            if !seen.insert(p.person.as_str()) {
                return Err(Error::DuplicatePerson(p.person.clone()));
            }
            if let Weight::Finite(w) = &p.weight {
                if w.is_negative() {
                    return Err(Error::NegativeWeight(p.person.clone()));
                }
            }
        }
        if others_male.is_negative() || others_female.is_negative() {
            return Err(Error::NegativeWeight("others".to_string()));
        }
        Ok(WeightTable {
            label: label.into(),
            persons,
            others_male,
            others_female,
        })
    }

    pub fn persons(&self) -> &[PersonWeight] {
        &self.persons
    }

    pub fn persons_of(&self, gender: Gender) -> impl Iterator<Item = &PersonWeight> {
        self.persons.iter().filter(move |p| p.gender == gender)
    }

    pub fn others(&self, gender: Gender) -> &Rational {
        match gender {
            Gender::Male => &self.others_male,
            Gender::Female => &self.others_female,
        }
    }

    /// Multiply every finite weight, including "others", by `factor`.
    pub fn scaled(&self, factor: &Rational) -> WeightTable {
        let persons = self
            .persons
            .iter()
            .map(|p| PersonWeight {
                weight: match &p.weight {
                    Weight::Finite(w) => Weight::Finite(w * factor),
                    Weight::Infinite => Weight::Infinite,
                },
                ..p.clone()
            })
            .collect();
        WeightTable {
            label: self.label.clone(),
            persons,
            others_male: &self.others_male * factor,
            others_female: &self.others_female * factor,
        }
    }
}

/// Strip a generational qualifier, e.g. `"judah son of jesus"` -> `"judah"`.
pub fn broad_name(inscription: &str) -> &str {
    let trimmed = inscription.trim();
    [" son of ", " daughter of ", " wife of "]
        .iter()
        .filter_map(|q| trimmed.find(q))
        .min()
        .map_or(trimmed, |at| trimmed[..at].trim_end())
}

/// Observed broad-name multisets, per gender.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TombInscriptions {
    male: Vec<String>,
    female: Vec<String>,
}

impl TombInscriptions {
    pub fn new<S: AsRef<str>>(male: &[S], female: &[S]) -> Self {
        let clean = |v: &[S]| {
            v.iter()
                .map(|s| broad_name(s.as_ref()).to_string())
                .collect()
        };
        TombInscriptions {
            male: clean(male),
            female: clean(female),
        }
    }

    pub fn push(&mut self, name: &str, gender: Gender) {
        let name = broad_name(name).to_string();
        match gender {
            Gender::Male => self.male.push(name),
            Gender::Female => self.female.push(name),
        }
    }

    pub fn names(&self, gender: Gender) -> &[String] {
        match gender {
            Gender::Male => &self.male,
            Gender::Female => &self.female,
        }
    }

    pub fn counts(&self, gender: Gender) -> BTreeMap<&str, u64> {
        let mut counts = BTreeMap::new();
        for name in self.names(gender) {
            *counts.entry(name.as_str()).or_insert(0) += 1;
        }
        counts
    }

    /// Map rendition identifiers to their broad category using the
    /// onomasticon's rendition lists. Names that are already broad, or
    /// unknown, are kept.
    pub fn resolved(&self, o: &Onomasticon) -> TombInscriptions {
        let map = |gender: Gender| -> Vec<String> {
            self.names(gender)
                .iter()
                .map(|name| {
                    if o.get(name, gender).is_some() {
                        return name.clone();
                    }
                    o.records_of(gender)
                        .find(|r| r.renditions.iter().any(|(id, _)| id == name))
                        .map_or_else(|| name.clone(), |r| r.name.clone())
                })
                .collect()
        };
        TombInscriptions {
            male: map(Gender::Male),
            female: map(Gender::Female),
        }
    }
}

/// Multinomial probability of an unordered multiset under i.i.d. draws.
fn multiset_probability<'a>(
    counts: impl IntoIterator<Item = (&'a str, u64)>,
    prob: impl Fn(&str) -> Rational,
) -> Rational {
    let mut total = 0u64;
    let mut value = Rational::one();
    for (name, m) in counts {
        if m == 0 {
            continue;
        }
        total += m;
        value = value * pow(&prob(name), m) / Rational::from_integer(factorial(m));
    }
    value * Rational::from_integer(factorial(total))
}

/// Likelihood of the inscriptions when every name is an independent draw
/// from its gender's population frequencies.
pub fn null_name_likelihood(insc: &TombInscriptions, o: &Onomasticon) -> Rational {
    Gender::BOTH
        .iter()
        .map(|&g| multiset_probability(insc.counts(g), |name| o.conditional_probability(name, g)))
        .fold(Rational::one(), |acc, x| acc * x)
}

/// Probability that sequential draws proportional to weight, without
/// replacement, pick exactly the items in `subset` (in any order) in
/// `subset.len()` draws. `total` is the starting mass and may exceed the sum
/// of `weights`; the excess is mass that is never drawn here.
pub fn set_draw_probability(
    weights: &[Rational],
    total: &Rational,
    subset: &[usize],
) -> Result<Rational> {
    interleaved_draw_probability(weights, total, subset, &Rational::zero(), 0)
}

/// Like [`set_draw_probability`], but additionally `others_draws` draws land
/// on an inexhaustible pool of weight `others`, interleaved with the listed
/// draws in any order. `total` should include `others`.
///
/// Runs over the 2^|subset| drawn-so-far states rather than permutations.
pub fn interleaved_draw_probability(
    weights: &[Rational],
    total: &Rational,
    subset: &[usize],
    others: &Rational,
    others_draws: usize,
) -> Result<Rational> {
    for &index in subset {
        if index >= weights.len() {
            return Err(Error::SubsetIndex {
                index,
                len: weights.len(),
            });
        }
    }
    let mut chosen: Vec<&Rational> = Vec::with_capacity(subset.len());
    let mut distinct = BTreeSet::new();
    for &index in subset {
        if distinct.insert(index) {
            chosen.push(&weights[index]);
        }
    }
    if chosen.iter().any(|w| w.is_negative()) || others.is_negative() {
        return Err(Error::NegativeWeight("draw weight".to_string()));
    }
    let k = chosen.len();
    assert!(
        k < usize::BITS as usize,
        "subset too large for bitmask recursion"
    );
    let states = 1usize << k;
    let full = states - 1;
    let width = others_draws + 1;

    let mut drawn_mass = alloc::vec![Rational::zero(); states];
    for mask in 1..states {
        let low = mask.trailing_zeros() as usize;
        drawn_mass[mask] = &drawn_mass[mask & (mask - 1)] + chosen[low];
    }

    let mut table = alloc::vec![Rational::zero(); states * width];
    table[0] = Rational::one();
    for mask in 0..states {
        let remaining = total - &drawn_mass[mask];
        for j in 0..width {
            let value = table[mask * width + j].clone();
            if value.is_zero() || (mask == full && j == others_draws) {
                continue;
            }
            if !remaining.is_positive() {
                return Err(Error::ExhaustedMass {
                    drawn: mask.count_ones() as usize + j,
                });
            }
            let scaled = &value / &remaining;
            for (i, w) in chosen.iter().enumerate() {
                if mask >> i & 1 == 0 && !w.is_zero() {
                    table[(mask | 1 << i) * width + j] += &scaled * *w;
                }
            }
            if j < others_draws && !others.is_zero() {
                table[mask * width + j + 1] += &scaled * others;
            }
        }
    }
    Ok(table[full * width + others_draws].clone())
}

/// Exact probability that a roster draw of `persons.len() + others_draws`
/// occupants yields exactly `persons` (roster indices, certain members
/// included) plus `others_draws` draws from the others pool.
pub fn roster_draw_probability(
    weights: &[Weight],
    others: &Rational,
    persons: &[usize],
    others_draws: usize,
) -> Result<Rational> {
    for &i in persons {
        if i >= weights.len() {
            return Err(Error::SubsetIndex {
                index: i,
                len: weights.len(),
            });
        }
    }
    let forced_missing = weights
        .iter()
        .enumerate()
        .any(|(i, w)| *w == Weight::Infinite && !persons.contains(&i));
    if forced_missing {
        return Ok(Rational::zero());
    }
    let pool: Vec<Rational> = weights
        .iter()
        .map(|w| w.finite().cloned().unwrap_or_default())
        .collect();
    let total = pool.iter().fold(others.clone(), |acc, w| acc + w);
    let drawn: Vec<usize> = persons
        .iter()
        .copied()
        .filter(|&i| weights[i] != Weight::Infinite)
        .collect();
    interleaved_draw_probability(&pool, &total, &drawn, others, others_draws)
}

fn alt_gender_likelihood(
    insc: &TombInscriptions,
    table: &WeightTable,
    o: &Onomasticon,
    gender: Gender,
) -> Result<Rational> {
    let mut remaining: BTreeMap<&str, u64> = insc.counts(gender);

    for person in table.persons_of(gender) {
        if person.weight == Weight::Infinite {
            match remaining.get_mut(person.broad_name.as_str()) {
                Some(c) if *c > 0 => *c -= 1,
                _ => return Ok(Rational::zero()),
            }
        }
    }
    let draws: u64 = remaining.values().sum();
    if draws == 0 {
        return Ok(Rational::one());
    }

    let finite: Vec<&PersonWeight> = table
        .persons_of(gender)
        .filter(|p| p.weight != Weight::Infinite)
        .collect();
    let weights: Vec<Rational> = finite
        .iter()
        .map(|p| p.weight.finite().cloned().unwrap_or_default())
        .collect();
    let others = table.others(gender);
    let total = weights.iter().fold(others.clone(), |acc, w| acc + w);

    // Only persons who could explain some inscription are worth enumerating.
    let candidates: Vec<usize> = (0..finite.len())
        .filter(|&i| !weights[i].is_zero() && remaining.contains_key(finite[i].broad_name.as_str()))
        .collect();
    assert!(candidates.len() < 32, "too many candidate persons");

    let mut likelihood = Rational::zero();
    for mask in 0u32..(1u32 << candidates.len()) {
        let picked: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        if picked.len() as u64 > draws {
            continue;
        }
        let mut rest = remaining.clone();
        let mut fits = true;
        for &i in &picked {
            match rest.get_mut(finite[i].broad_name.as_str()) {
                Some(c) if *c > 0 => *c -= 1,
                _ => {
                    fits = false;
                    break;
                }
            }
        }
        if !fits {
            continue;
        }
        let others_draws = (draws - picked.len() as u64) as usize;
        if others_draws > 0 && others.is_zero() {
            continue;
        }
        let order = interleaved_draw_probability(&weights, &total, &picked, others, others_draws)?;
        if order.is_zero() {
            continue;
        }
        let names = multiset_probability(rest.iter().map(|(n, c)| (*n, *c)), |name| {
            o.conditional_probability(name, gender)
        });
        likelihood += order * names;
    }
    Ok(likelihood)
}

/// Likelihood of the inscriptions when the tomb holds members of the
/// weighted family roster.
///
/// Certain members must each account for one inscription of their broad
/// name or the likelihood is zero. The remaining inscriptions are explained
/// by every combination of listed relatives and "others", the latter bearing
/// population names.
pub fn alt_name_likelihood(
    insc: &TombInscriptions,
    table: &WeightTable,
    o: &Onomasticon,
) -> Result<Rational> {
    let mut value = Rational::one();
    for gender in Gender::BOTH {
        value *= alt_gender_likelihood(insc, table, o, gender)?;
        if value.is_zero() {
            break;
        }
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenditionAdjustment {
    p_new_null: Rational,
    p_new_alt: Rational,
    /// How many family members the special rendition could refer to. Kept
    /// for reporting; the factor itself is the ratio of the two rates.
    pub interpretation_count: u32,
}

impl RenditionAdjustment {
    pub fn new(
        p_new_null: Rational,
        p_new_alt: Rational,
        interpretation_count: u32,
    ) -> Result<Self> {
        if p_new_null.is_zero() {
            return Err(Error::ZeroNullRendition);
        }
        let valid = |p: &Rational| p.is_positive() && *p <= Rational::one();
        if !valid(&p_new_null) || !valid(&p_new_alt) {
            return Err(Error::RenditionOutOfRange);
        }
        Ok(RenditionAdjustment {
            p_new_null,
            p_new_alt,
            interpretation_count,
        })
    }

    pub fn p_new_null(&self) -> &Rational {
        &self.p_new_null
    }

    pub fn p_new_alt(&self) -> &Rational {
        &self.p_new_alt
    }
}

/// Odds multiplier for an unforeseen special rendition: how much likelier a
/// new rendition is under the family hypothesis than in the population.
pub fn rendition_odds_factor(r: &RenditionAdjustment) -> Rational {
    r.p_new_alt() / r.p_new_null()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LikelihoodRatio {
    Finite(Rational),
    /// The data are impossible under the null but not under the alternative.
    Infinite,
}

impl LikelihoodRatio {
    pub fn from_likelihoods(alt: &Rational, null: &Rational) -> Result<Self> {
        match (alt.is_zero(), null.is_zero()) {
            (true, true) => Err(Error::DegenerateLikelihoods),
            (false, true) => Ok(LikelihoodRatio::Infinite),
            _ => Ok(LikelihoodRatio::Finite(alt / null)),
        }
    }
}

impl fmt::Display for LikelihoodRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LikelihoodRatio::Finite(r) => write!(f, "{r}"),
            LikelihoodRatio::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosteriorResult {
    pub scenario: String,
    pub prior_odds: Rational,
    pub null_likelihood: Option<Rational>,
    pub alt_likelihood: Option<Rational>,
    pub likelihood_ratio: LikelihoodRatio,
    pub rendition_factor: Rational,
    /// `None` when the posterior odds are infinite.
    pub odds: Option<Rational>,
    pub posterior: Rational,
}

/// Combine prior odds, likelihood ratio and rendition factor.
pub fn posterior(
    prior: &PriorSpec,
    lr: &LikelihoodRatio,
    rendition_factor: &Rational,
) -> Result<PosteriorResult> {
    let prior_odds = prior_odds(prior);
    let (odds, post) = match lr {
        LikelihoodRatio::Finite(lr) => {
            let odds = &prior_odds * lr * rendition_factor;
            let post = &odds / (Rational::one() + &odds);
            (Some(odds), post)
        }
        LikelihoodRatio::Infinite => {
            if prior_odds.is_zero() || rendition_factor.is_zero() {
                return Err(Error::DegenerateLikelihoods);
            }
            (None, Rational::one())
        }
    };
    Ok(PosteriorResult {
        scenario: String::new(),
        prior_odds,
        null_likelihood: None,
        alt_likelihood: None,
        likelihood_ratio: lr.clone(),
        rendition_factor: rendition_factor.clone(),
        odds,
        posterior: post,
    })
}

/// Full pipeline for one weight table: likelihoods, ratio, posterior.
pub fn evaluate(
    label: &str,
    insc: &TombInscriptions,
    table: &WeightTable,
    o: &Onomasticon,
    prior: &PriorSpec,
    rendition_factor: &Rational,
) -> Result<PosteriorResult> {
    let insc = insc.resolved(o);
    let null = null_name_likelihood(&insc, o);
    let alt = alt_name_likelihood(&insc, table, o)?;
    let lr = LikelihoodRatio::from_likelihoods(&alt, &null)?;
    let mut result = posterior(prior, &lr, rendition_factor)?;
    result.scenario = label.to_string();
    result.null_likelihood = Some(null);
    result.alt_likelihood = Some(alt);
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BayesScenario {
    Neutral,
    NeutralRenditions,
    Optimistic,
}

impl BayesScenario {
    pub const ALL: [BayesScenario; 3] = [
        BayesScenario::Neutral,
        BayesScenario::NeutralRenditions,
        BayesScenario::Optimistic,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BayesScenario::Neutral => "neutral",
            BayesScenario::NeutralRenditions => "neutral_renditions",
            BayesScenario::Optimistic => "optimistic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|sc| sc.label() == s)
    }
}

/// Inputs shared by the three preset scenarios.
#[derive(Debug, Clone)]
pub struct BayesFixtures {
    pub onomasticon: Onomasticon,
    pub inscriptions: TombInscriptions,
    pub neutral: WeightTable,
    pub optimistic: WeightTable,
    pub prior: PriorSpec,
    pub rendition: RenditionAdjustment,
}

pub fn run_bayes_scenario(scenario: BayesScenario, fx: &BayesFixtures) -> Result<PosteriorResult> {
    let (table, factor) = match scenario {
        BayesScenario::Neutral => (&fx.neutral, Rational::one()),
        BayesScenario::NeutralRenditions => (&fx.neutral, rendition_odds_factor(&fx.rendition)),
        BayesScenario::Optimistic => (&fx.optimistic, Rational::one()),
    };
    evaluate(
        scenario.label(),
        &fx.inscriptions,
        table,
        &fx.onomasticon,
        &fx.prior,
        &factor,
    )
}

/// Posterior odds implied by a posterior probability.
pub fn odds_of(probability: &Rational) -> Rational {
    probability / (Rational::one() - probability)
}

/// Posterior probability implied by odds.
pub fn probability_of(odds: &Rational) -> Rational {
    odds / (Rational::one() + odds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onomasticon::NameRecord;
    use crate::rational::ratio;
    use alloc::vec;

    fn r(n: u64, d: u64) -> Rational {
        ratio(n, d)
    }

    #[test]
    fn prior_odds_values() {
        assert_eq!(
            prior_odds(&PriorSpec::new(1100, r(1, 1)).unwrap()),
            r(1, 1099)
        );
        assert!(prior_odds(&PriorSpec::new(17, r(0, 1)).unwrap()).is_zero());
        assert!(prior_odds(&PriorSpec::new(2, r(1, 1)).unwrap()).is_one());
        assert!(matches!(
            PriorSpec::new(1, r(1, 1)),
            Err(Error::PriorNotBelowOne(_))
        ));
        assert!(PriorSpec::new(10, r(3, 2)).is_err());
    }

    fn abc() -> Onomasticon {
        Onomasticon::new(
            3,
            3,
            vec![
                NameRecord::new("a", Gender::Male, 1),
                NameRecord::new("b", Gender::Male, 1),
                NameRecord::new("c", Gender::Male, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn null_likelihood_multisets() {
        let o = abc();
        let aa = TombInscriptions::new(&["a", "a"], &[]);
        assert_eq!(null_name_likelihood(&aa, &o), r(1, 9));
        let ab = TombInscriptions::new(&["a", "b"], &[]);
        // enumerate ordered pairs: (a,b) and (b,a)
        let ordered: Rational = ["a", "b", "c"]
            .iter()
            .flat_map(|x| ["a", "b", "c"].iter().map(move |y| (*x, *y)))
            .filter(|(x, y)| (*x, *y) == ("a", "b") || (*x, *y) == ("b", "a"))
            .map(|_| r(1, 9))
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(null_name_likelihood(&ab, &o), ordered);
        assert_eq!(ordered, r(2, 9));
        let empty = TombInscriptions::default();
        assert!(null_name_likelihood(&empty, &o).is_one());
    }

    #[test]
    fn set_draw_examples() {
        assert_eq!(
            set_draw_probability(&[r(1, 1), r(1, 1)], &r(2, 1), &[0]).unwrap(),
            r(1, 2)
        );
        let w = [r(2, 1), r(1, 1), r(1, 1)];
        // (2/4)(1/2) + (1/4)(2/3)
        assert_eq!(
            set_draw_probability(&w, &r(4, 1), &[0, 1]).unwrap(),
            r(5, 12)
        );
        assert!(set_draw_probability(&w, &r(4, 1), &[0, 1, 2])
            .unwrap()
            .is_one());
        assert!(set_draw_probability(&w, &r(4, 1), &[]).unwrap().is_one());
    }

    #[test]
    fn set_draw_errors() {
        let w = [r(1, 1), r(1, 1)];
        assert!(matches!(
            set_draw_probability(&w, &r(2, 1), &[2]),
            Err(Error::SubsetIndex { .. })
        ));
        // total too small: mass runs out before the second draw
        assert!(matches!(
            set_draw_probability(&w, &r(1, 1), &[0, 1]),
            Err(Error::ExhaustedMass { drawn: 1 })
        ));
    }

    #[test]
    fn inexhaustible_others_interleave() {
        // one listed item weight 1, others weight 1, one listed + one other
        // orders: item then other: 1/2 * 1/1; other then item: 1/2 * 1/2
        let p = interleaved_draw_probability(&[r(1, 1)], &r(2, 1), &[0], &r(1, 1), 1).unwrap();
        assert_eq!(p, r(3, 4));
        // two others only: 1/2 * 1/2
        let p = interleaved_draw_probability(&[r(1, 1)], &r(2, 1), &[], &r(1, 1), 2).unwrap();
        assert_eq!(p, r(1, 4));
    }

    fn single_gender_table(persons: Vec<PersonWeight>, others: Rational) -> WeightTable {
        WeightTable::new("t", persons, others, Rational::zero()).unwrap()
    }

    #[test]
    fn alt_fully_forced() {
        let o = abc();
        let t = single_gender_table(
            vec![
                PersonWeight::new("p", Gender::Male, "a", Weight::Infinite),
                PersonWeight::new("q", Gender::Male, "b", Weight::Infinite),
            ],
            Rational::zero(),
        );
        let insc = TombInscriptions::new(&["b", "a"], &[]);
        assert!(alt_name_likelihood(&insc, &t, &o).unwrap().is_one());
        let unmatched = TombInscriptions::new(&["a", "c"], &[]);
        assert!(alt_name_likelihood(&unmatched, &t, &o).unwrap().is_zero());
    }

    #[test]
    fn alt_two_branch() {
        let o = abc();
        let (w, v) = (r(2, 1), r(3, 1));
        let t = single_gender_table(
            vec![PersonWeight::new(
                "p",
                Gender::Male,
                "a",
                Weight::Finite(w.clone()),
            )],
            v.clone(),
        );
        let insc = TombInscriptions::new(&["a"], &[]);
        let f = r(1, 3);
        let expected = &w / (&w + &v) + &v / (&w + &v) * f;
        assert_eq!(alt_name_likelihood(&insc, &t, &o).unwrap(), expected);
    }

    #[test]
    fn alt_optimistic_female_half() {
        let o = Onomasticon::new(
            10,
            317,
            vec![
                NameRecord::new("mariam", Gender::Female, 81),
                NameRecord::new("salome", Gender::Female, 63),
            ],
        )
        .unwrap();
        let t = WeightTable::new(
            "opt",
            vec![
                PersonWeight::new("mother", Gender::Female, "mariam", Weight::Infinite),
                PersonWeight::new(
                    "sister_mariam",
                    Gender::Female,
                    "mariam",
                    Weight::Finite(r(1, 1)),
                ),
                PersonWeight::new(
                    "sister_salome",
                    Gender::Female,
                    "salome",
                    Weight::Finite(r(1, 1)),
                ),
                PersonWeight::new(
                    "magdalene",
                    Gender::Female,
                    "mariam",
                    Weight::Finite(r(0, 1)),
                ),
            ],
            Rational::zero(),
            Rational::zero(),
        )
        .unwrap();
        let insc = TombInscriptions::new::<&str>(&[], &["mariam", "mariam"]);
        assert_eq!(alt_name_likelihood(&insc, &t, &o).unwrap(), r(1, 2));
    }

    #[test]
    fn roster_probability_requires_forced() {
        let w = [
            Weight::Infinite,
            Weight::Finite(r(2, 1)),
            Weight::Finite(r(1, 1)),
        ];
        assert!(roster_draw_probability(&w, &r(1, 1), &[1], 0)
            .unwrap()
            .is_zero());
        // after forcing index 0: pool {2, 1}, others 1, total 4
        assert_eq!(
            roster_draw_probability(&w, &r(1, 1), &[0, 1], 0).unwrap(),
            r(1, 2)
        );
        assert_eq!(
            roster_draw_probability(&w, &r(1, 1), &[0], 1).unwrap(),
            r(1, 4)
        );
    }

    #[test]
    fn rendition_factor_values() {
        let f =
            |a, b| rendition_odds_factor(&RenditionAdjustment::new(r(1, b), r(1, a), 3).unwrap());
        assert_eq!(f(10, 80), r(8, 1));
        assert!(f(80, 80).is_one());
        assert_eq!(f(20, 80), r(4, 1));
        assert!(matches!(
            RenditionAdjustment::new(Rational::zero(), r(1, 10), 3),
            Err(Error::ZeroNullRendition)
        ));
    }

    #[test]
    fn likelihood_neutral_posterior() {
        let prior = PriorSpec::new(1100, r(1, 1)).unwrap();
        let res = posterior(&prior, &LikelihoodRatio::Finite(r(1, 1)), &r(1, 1)).unwrap();
        assert_eq!(res.posterior, r(1, 1100));
        let inf = posterior(&prior, &LikelihoodRatio::Infinite, &r(1, 1)).unwrap();
        assert!(inf.posterior.is_one());
        assert!(inf.odds.is_none());
    }

    #[test]
    fn broad_name_strips_generation() {
        assert_eq!(broad_name("judah son of jesus"), "judah");
        assert_eq!(broad_name(" jesus son of joseph "), "jesus");
        assert_eq!(broad_name("mariam"), "mariam");
    }

    #[test]
    fn renditions_resolve_to_broad_names() {
        let o = Onomasticon::new(
            10,
            10,
            vec![NameRecord::new("mariam", Gender::Female, 5)
                .with_renditions(vec![("mariamenou".into(), 0)])],
        )
        .unwrap();
        let insc = TombInscriptions::new::<&str>(&[], &["mariamenou", "salome"]).resolved(&o);
        assert_eq!(
            insc.names(Gender::Female),
            &["mariam".to_string(), "salome".to_string()]
        );
    }

    #[test]
    fn weight_table_validation() {
        let neg = WeightTable::new(
            "x",
            vec![PersonWeight::new(
                "p",
                Gender::Male,
                "a",
                Weight::Finite(-r(1, 1)),
            )],
            Rational::zero(),
            Rational::zero(),
        );
        assert!(matches!(neg, Err(Error::NegativeWeight(_))));
        let dup = WeightTable::new(
            "x",
            vec![
                PersonWeight::new("p", Gender::Male, "a", Weight::Infinite),
                PersonWeight::new("p", Gender::Female, "b", Weight::Infinite),
            ],
            Rational::zero(),
            Rational::zero(),
        );
        assert!(matches!(dup, Err(Error::DuplicatePerson(_))));
    }
}
