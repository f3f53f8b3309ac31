//! Single-draw relevance-and-rareness toy.
//!
//! An outcome's score is its null probability when it matches the family,
//! zero otherwise. The p-value sums the null mass of every relevant outcome
//! scoring no higher than the observation (ties included). Splitting a
//! relevant name into renditions lowers the score of each part, so the
//! p-value of an observed rendition drops even though every part stays
//! relevant.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{display, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteOutcomeSpace {
    outcomes: Vec<(String, Rational)>,
}

impl DiscreteOutcomeSpace {
    pub fn new(outcomes: Vec<(String, Rational)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (id, _) in &outcomes {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateOutcome(id.clone()));
            }
        }
        let sum = outcomes
            .iter()
            .fold(Rational::zero(), |acc, (_, p)| acc + p);
        if outcomes.iter().any(|(_, p)| p.is_negative()) || !sum.is_one() {
            return Err(Error::NotADistribution(display(&sum)));
        }
        Ok(DiscreteOutcomeSpace { outcomes })
    }

    /// `n` equally likely outcomes.
    pub fn uniform<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self> {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        let n = ids.len() as u64;
        Self::new(ids.into_iter().map(|id| (id, ratio(1, n))).collect())
    }

    pub fn outcomes(&self) -> &[(String, Rational)] {
        &self.outcomes
    }

    pub fn probability(&self, id: &str) -> Option<&Rational> {
        self.outcomes.iter().find(|(o, _)| o == id).map(|(_, p)| p)
    }

    pub fn total(&self) -> Rational {
        self.outcomes
            .iter()
            .fold(Rational::zero(), |acc, (_, p)| acc + p)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelevanceSpec {
    relevant: BTreeSet<String>,
}

impl RelevanceSpec {
    pub fn new<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Self {
        RelevanceSpec {
            relevant: ids.into_iter().map(Into::into).collect(),
        }
    }

    pub fn is_relevant(&self, id: &str) -> bool {
        self.relevant.contains(id)
    }

    /// Fails if a relevant id is not an outcome of `space`.
    pub fn check(&self, space: &DiscreteOutcomeSpace) -> Result<()> {
        match self
            .relevant
            .iter()
            .find(|id| space.probability(id).is_none())
        {
            Some(id) => Err(Error::UnknownOutcome(id.clone())),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RrPValue {
    PValue(Rational),
    /// The observation scores zero; no p-value is defined.
    NotRelevant,
}

pub fn rr_statistic(
    space: &DiscreteOutcomeSpace,
    rel: &RelevanceSpec,
    outcome: &str,
) -> Result<Rational> {
    let p = space
        .probability(outcome)
        .ok_or_else(|| Error::UnknownOutcome(outcome.to_string()))?;
    Ok(if rel.is_relevant(outcome) {
        p.clone()
    } else {
        Rational::zero()
    })
}

pub fn rr_pvalue(
    space: &DiscreteOutcomeSpace,
    rel: &RelevanceSpec,
    observed: &str,
) -> Result<RrPValue> {
    let observed_rr = rr_statistic(space, rel, observed)?;
    if observed_rr.is_zero() {
        return Ok(RrPValue::NotRelevant);
    }
    let mut sum = Rational::zero();
    for (id, p) in space.outcomes() {
        let rr = rr_statistic(space, rel, id)?;
        if rr.is_positive() && rr <= observed_rr {
            sum += p;
        }
    }
    Ok(RrPValue::PValue(sum))
}

/// Replace `parent` with `parts`, each carrying `parent_prob * fraction`.
/// Parts inherit the parent's relevance unless `relevant_parts` says
/// otherwise.
pub fn split_rendition(
    space: &DiscreteOutcomeSpace,
    rel: &RelevanceSpec,
    parent: &str,
    parts: &[(String, Rational)],
    relevant_parts: Option<&[bool]>,
) -> Result<(DiscreteOutcomeSpace, RelevanceSpec)> {
    let parent_p = space
        .probability(parent)
        .ok_or_else(|| Error::UnknownOutcome(parent.to_string()))?
        .clone();
    let sum = parts.iter().fold(Rational::zero(), |acc, (_, f)| acc + f);
    if parts.is_empty() || !sum.is_one() || parts.iter().any(|(_, f)| !f.is_positive()) {
        return Err(Error::BadSplit(display(&sum)));
    }
    let mut outcomes = Vec::with_capacity(space.outcomes().len() + parts.len());
    for (id, p) in space.outcomes() {
        if id == parent {
            outcomes.extend(parts.iter().map(|(pid, f)| (pid.clone(), &parent_p * f)));
        } else {
            outcomes.push((id.clone(), p.clone()));
        }
    }
    let parent_relevant = rel.is_relevant(parent);
    let mut relevant: BTreeSet<String> = rel
        .relevant
        .iter()
        .filter(|id| id.as_str() != parent)
        .cloned()
        .collect();
    for (i, (pid, _)) in parts.iter().enumerate() {
        let keep = relevant_parts
            .and_then(|flags| flags.get(i).copied())
            .unwrap_or(parent_relevant);
        if keep {
            relevant.insert(pid.clone());
        }
    }
    Ok((
        DiscreteOutcomeSpace::new(outcomes)?,
        RelevanceSpec { relevant },
    ))
}

/// The three-name population with A, B relevant, before and after splitting
/// A into renditions A1 (1/3 of A) and A2 (2/3 of A).
pub fn demo_fixture() -> (DiscreteOutcomeSpace, RelevanceSpec) {
    let space = DiscreteOutcomeSpace::uniform(["A", "B", "C"]).expect("uniform space");
    (space, RelevanceSpec::new(["A", "B"]))
}

pub fn demo_split() -> Vec<(String, Rational)> {
    alloc::vec![
        ("A1".to_string(), ratio(1, 3)),
        ("A2".to_string(), ratio(2, 3))
    ]
}
