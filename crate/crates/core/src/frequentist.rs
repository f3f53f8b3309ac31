//! Multiple-look p-value: the chance that at least one of many tombs would
//! have caught attention by accident.
//!
//! A tomb counts as interesting when one ossuary carries the anchor name and
//! at least `threshold` of the remaining `n - 1` ossuaries carry names from
//! the target set. Companion names are independent mixed-gender draws, so the
//! companion hit count is `Binomial(n - 1, nu)` with `nu` from
//! [`Onomasticon::target_set_nu`]. Tombs are independent of one another.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::onomasticon::{Gender, Onomasticon, RatioModel};
use crate::rational::{check_probability, choose, complement, pow, Rational};

/// The set of names that would spark interest, plus how many of them a tomb
/// must show.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSetSpec {
    pub label: String,
    names: BTreeSet<(Gender, String)>,
    threshold: u32,
}

impl TargetSetSpec {
    pub fn new<I, S>(label: impl Into<String>, names: I, threshold: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Gender)>,
        S: Into<String>,
    {
        if threshold == 0 {
            return Err(Error::ZeroThreshold);
        }
        Ok(TargetSetSpec {
            label: label.into(),
            names: names.into_iter().map(|(n, g)| (g, n.into())).collect(),
            threshold,
        })
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, Gender)> {
        self.names.iter().map(|(g, n)| (n.as_str(), *g))
    }

    pub fn names_of(&self, gender: Gender) -> impl Iterator<Item = &str> {
        self.names
            .iter()
            .filter(move |(g, _)| *g == gender)
            .map(|(_, n)| n.as_str())
    }

    pub fn contains(&self, name: &str, gender: Gender) -> bool {
        self.names.contains(&(gender, String::from(name)))
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Which name must be present before a tomb counts. The anchor names are
/// male.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnchorSpec {
    Single(String),
    /// Both names must be drawn, e.g. a person and their patronym; the
    /// probability is the product of the two single-name probabilities.
    Compound {
        primary: String,
        second: String,
    },
}

impl AnchorSpec {
    pub fn single(name: impl Into<String>) -> Self {
        AnchorSpec::Single(name.into())
    }

    pub fn compound(primary: impl Into<String>, second: impl Into<String>) -> Self {
        AnchorSpec::Compound {
            primary: primary.into(),
            second: second.into(),
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            AnchorSpec::Single(_) => "single",
            AnchorSpec::Compound { .. } => "compound",
        }
    }
}

impl fmt::Display for AnchorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnchorSpec::Single(name) => f.write_str(name),
            AnchorSpec::Compound { primary, second } => write!(f, "{primary}+{second}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TombPopulation {
    tombs: usize,
    ossuaries: u64,
    overrides: BTreeMap<usize, u64>,
}

impl TombPopulation {
    pub fn uniform(tombs: usize, ossuaries: u64) -> Result<Self> {
        Self::with_overrides(tombs, ossuaries, Vec::new())
    }

    /// `overrides` replaces the ossuary count of individual tombs (0-based).
    pub fn with_overrides(
        tombs: usize,
        ossuaries: u64,
        overrides: Vec<(usize, u64)>,
    ) -> Result<Self> {
        if tombs == 0 || ossuaries == 0 {
            return Err(Error::EmptyPopulation);
        }
        let overrides: BTreeMap<usize, u64> = overrides.into_iter().collect();
        if overrides.iter().any(|(&i, &n)| i >= tombs || n == 0) {
            return Err(Error::EmptyPopulation);
        }
        Ok(TombPopulation {
            tombs,
            ossuaries,
            overrides,
        })
    }

    pub fn tombs(&self) -> usize {
        self.tombs
    }

    pub fn ossuaries(&self) -> u64 {
        self.ossuaries
    }

    pub fn size_of(&self, tomb: usize) -> u64 {
        self.overrides.get(&tomb).copied().unwrap_or(self.ossuaries)
    }

    pub fn sizes(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.tombs).map(|i| self.size_of(i))
    }
}

/// One fully specified frequentist run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreqScenario {
    pub target: TargetSetSpec,
    pub ratio: RatioModel,
    pub anchor: AnchorSpec,
    pub population: TombPopulation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PValueRow {
    pub variant: String,
    pub ratio: RatioModel,
    pub anchor: AnchorSpec,
    pub tombs: usize,
    pub ossuaries: u64,
    pub nu: Rational,
    pub anchor_probability: Rational,
    /// Per-tomb interest probability at the base ossuary count.
    pub pi: Rational,
    pub p_value: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PValueGrid {
    pub rows: Vec<PValueRow>,
}

pub fn binomial_pmf(n: u64, prob: &Rational, j: u64) -> Rational {
    if j > n {
        return Rational::zero();
    }
    let q = complement(prob);
    Rational::from_integer(choose(n, j)) * pow(prob, j) * pow(&q, n - j)
}

/// `P(Y >= k)` for `Y ~ Binomial(n, prob)`, summed term by term.
pub fn binomial_tail(n: u64, prob: &Rational, k: u64) -> Result<Rational> {
    check_probability(prob)?;
    Ok((k..=n).fold(Rational::zero(), |acc, j| acc + binomial_pmf(n, prob, j)))
}

/// `P(Y <= k)` for `Y ~ Binomial(n, prob)`.
pub fn binomial_cdf(n: u64, prob: &Rational, k: u64) -> Result<Rational> {
    check_probability(prob)?;
    Ok((0..=k.min(n)).fold(Rational::zero(), |acc, j| acc + binomial_pmf(n, prob, j)))
}

pub fn anchor_probability(o: &Onomasticon, anchor: &AnchorSpec, ratio: RatioModel) -> Rational {
    match anchor {
        AnchorSpec::Single(name) => o.name_probability(name, Gender::Male, ratio),
        AnchorSpec::Compound { primary, second } => {
            o.name_probability(primary, Gender::Male, ratio)
                * o.name_probability(second, Gender::Male, ratio)
        }
    }
}

/// Probability that a tomb of `n` ossuaries is interesting: the anchor sits
/// in one ossuary and at least `threshold` of the other `n - 1` hit the
/// target set.
pub fn tomb_interest_probability(
    n: u64,
    nu: &Rational,
    p_anchor: &Rational,
    threshold: u32,
) -> Result<Rational> {
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    check_probability(p_anchor)?;
    Ok(p_anchor * binomial_tail(n - 1, nu, u64::from(threshold))?)
}

/// `1 - prod(1 - pi_i)`: chance that at least one independent tomb is
/// interesting.
pub fn multi_tomb_pvalue(pis: &[Rational]) -> Result<Rational> {
    // runs of equal values are raised to a power instead of multiplied out;
    // reduced rationals are equal iff their parts are
    let same = |a: &Rational, b: &Rational| a.numer() == b.numer() && a.denom() == b.denom();
    let mut none = Rational::one();
    let mut i = 0;
    while i < pis.len() {
        let pi = &pis[i];
        check_probability(pi)?;
        let run = pis[i..].iter().take_while(|p| same(p, pi)).count();
        let factor = pow(&complement(pi), run as u64);
        none = if none.is_one() { factor } else { none * factor };
        i += run;
    }
    Ok(complement(&none))
}

/// Same as [`multi_tomb_pvalue`] for `tombs` copies of one probability.
pub fn uniform_pvalue(pi: &Rational, tombs: u64) -> Result<Rational> {
    check_probability(pi)?;
    Ok(complement(&pow(&complement(pi), tombs)))
}

pub fn evaluate_scenario(o: &Onomasticon, scenario: &FreqScenario) -> Result<PValueRow> {
    let nu = o.target_set_nu(&scenario.target, scenario.ratio);
    let p_anchor = anchor_probability(o, &scenario.anchor, scenario.ratio);
    let threshold = scenario.target.threshold();
    let pop = &scenario.population;

    let mut per_size: BTreeMap<u64, Rational> = BTreeMap::new();
    let mut pis = Vec::with_capacity(pop.tombs());
    for n in pop.sizes() {
        let pi = match per_size.entry(n) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(tomb_interest_probability(n, &nu, &p_anchor, threshold)?),
        };
        pis.push(pi.clone());
    }
    let pi = match per_size.get(&pop.ossuaries()) {
        Some(pi) => pi.clone(),
        None => tomb_interest_probability(pop.ossuaries(), &nu, &p_anchor, threshold)?,
    };
    Ok(PValueRow {
        variant: scenario.target.label.clone(),
        ratio: scenario.ratio,
        anchor: scenario.anchor.clone(),
        tombs: pop.tombs(),
        ossuaries: pop.ossuaries(),
        nu,
        anchor_probability: p_anchor,
        pi,
        p_value: multi_tomb_pvalue(&pis)?,
    })
}

/// One row per scenario, in input order.
pub fn run_scenario_grid(o: &Onomasticon, scenarios: &[FreqScenario]) -> Result<PValueGrid> {
    let rows = scenarios
        .iter()
        .map(|s| evaluate_scenario(o, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(PValueGrid { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, to_f64};
    use alloc::vec;

    /// Independent oracle: enumerate all 2^n hit patterns.
    fn tail_by_enumeration(n: u32, p: f64, k: u32) -> f64 {
        (0u32..(1 << n))
            .filter(|mask| mask.count_ones() >= k)
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { p } else { 1.0 - p })
                    .product::<f64>()
            })
            .sum()
    }

    #[test]
    fn binomial_tail_against_enumeration() {
        let p = ratio(3547, 10000);
        let exact = to_f64(&binomial_tail(5, &p, 3).unwrap());
        let oracle = tail_by_enumeration(5, 0.3547, 3);
        assert!((exact - oracle).abs() < 1e-12);
        // frozen from the enumeration oracle
        assert!((exact - 0.242512).abs() < 1e-5, "{exact}");
    }

    #[test]
    fn binomial_tail_edges() {
        let p = ratio(1, 3);
        assert!(binomial_tail(5, &p, 0).unwrap().is_one());
        assert!(binomial_tail(5, &Rational::one(), 3).unwrap().is_one());
        assert!(binomial_tail(5, &p, 6).unwrap().is_zero());
        assert!(binomial_tail(0, &p, 0).unwrap().is_one());
        assert!(matches!(
            binomial_tail(5, &ratio(3, 2), 1),
            Err(Error::ProbabilityOutOfRange(_))
        ));
    }

    #[test]
    fn tail_plus_cdf_is_one() {
        let p = ratio(523, 2826);
        for k in 1..=6 {
            let s = binomial_tail(5, &p, k).unwrap() + binomial_cdf(5, &p, k - 1).unwrap();
            assert!(s.is_one());
        }
    }

    #[test]
    fn single_ossuary_tomb_cannot_reach_threshold() {
        let q = tomb_interest_probability(1, &ratio(9, 10), &ratio(1, 2), 3).unwrap();
        assert!(q.is_zero());
        let q = tomb_interest_probability(6, &Rational::one(), &Rational::one(), 3).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn closed_form_pvalue() {
        let pis = vec![ratio(5, 1000); 100];
        let p = to_f64(&multi_tomb_pvalue(&pis).unwrap());
        assert!((p - (1.0 - 0.995f64.powi(100))).abs() < 1e-12);
        assert!((p - 0.39423).abs() < 5e-6);
        assert_eq!(
            multi_tomb_pvalue(&pis).unwrap(),
            uniform_pvalue(&ratio(5, 1000), 100).unwrap()
        );
    }

    #[test]
    fn pvalue_degenerate_inputs() {
        assert!(multi_tomb_pvalue(&vec![Rational::zero(); 7])
            .unwrap()
            .is_zero());
        assert_eq!(multi_tomb_pvalue(&[ratio(2, 7)]).unwrap(), ratio(2, 7));
        assert!(multi_tomb_pvalue(&[]).unwrap().is_zero());
    }

    #[test]
    fn compound_anchor_is_product() {
        let o = Onomasticon::new(
            100,
            100,
            vec![
                crate::NameRecord::new("a", Gender::Male, 10),
                crate::NameRecord::new("b", Gender::Male, 20),
            ],
        )
        .unwrap();
        let single = anchor_probability(&o, &AnchorSpec::single("a"), RatioModel::Equal);
        assert_eq!(single, ratio(1, 20));
        let both = anchor_probability(&o, &AnchorSpec::compound("a", "b"), RatioModel::Equal);
        assert_eq!(both, ratio(1, 20) * ratio(1, 10));
        let missing = anchor_probability(&o, &AnchorSpec::compound("a", "zz"), RatioModel::Equal);
        assert!(missing.is_zero());
    }

    #[test]
    fn overrides_change_individual_tombs() {
        let pop = TombPopulation::with_overrides(3, 6, vec![(1, 2)]).unwrap();
        assert_eq!(pop.sizes().collect::<Vec<_>>(), vec![6, 2, 6]);
        assert!(TombPopulation::uniform(0, 6).is_err());
        assert!(TombPopulation::with_overrides(3, 6, vec![(5, 2)]).is_err());
    }

    #[test]
    fn zero_threshold_rejected() {
        assert!(TargetSetSpec::new("x", [("a", Gender::Male)], 0).is_err());
    }
}
