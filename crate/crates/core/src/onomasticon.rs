//! Name-frequency tables: the null population measure.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::frequentist::TargetSetSpec;
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gender {
    Male,
    Female,
}

impl Gender {
    pub const BOTH: [Gender; 2] = [Gender::Male, Gender::Female];

    pub fn code(self) -> char {
        match self {
            Gender::Male => 'm',
            Gender::Female => 'f',
        }
    }

    pub fn from_code(code: &str) -> Option<Gender> {
        match code {
            "m" | "M" => Some(Gender::Male),
            "f" | "F" => Some(Gender::Female),
            _ => None,
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gender::Male => "male",
            Gender::Female => "female",
        })
    }
}

/// One broad name category with its occurrence count and optional
/// rendition breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameRecord {
    pub name: String,
    pub gender: Gender,
    pub count: u64,
    pub renditions: Vec<(String, u64)>,
}

impl NameRecord {
    pub fn new(name: impl Into<String>, gender: Gender, count: u64) -> Self {
        NameRecord {
            name: name.into(),
            gender,
            count,
            renditions: Vec::new(),
        }
    }

    pub fn with_renditions(mut self, renditions: Vec<(String, u64)>) -> Self {
        self.renditions = renditions;
        self
    }

    fn rendition_sum(&self) -> u64 {
        self.renditions.iter().map(|(_, c)| c).sum()
    }
}

/// How a single random draw splits between the genders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioModel {
    /// Half male, half female.
    Equal,
    /// Proportional to the onomasticon totals.
    Empirical,
}

impl RatioModel {
    pub fn label(self) -> &'static str {
        match self {
            RatioModel::Equal => "equal",
            RatioModel::Empirical => "empirical",
        }
    }
}

impl fmt::Display for RatioModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Immutable name-frequency table. Totals are stored explicitly because the
/// listed records usually cover only part of the population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Onomasticon {
    records: Vec<NameRecord>,
    index: BTreeMap<(Gender, String), usize>,
    male_total: u64,
    female_total: u64,
}

impl Onomasticon {
    pub fn new(male_total: u64, female_total: u64, records: Vec<NameRecord>) -> Result<Self> {
        if male_total == 0 {
            return Err(Error::NonPositiveTotal {
                gender: Gender::Male,
            });
        }
        if female_total == 0 {
            return Err(Error::NonPositiveTotal {
                gender: Gender::Female,
            });
        }
        let mut index = BTreeMap::new();
        let mut listed = [0u64; 2];
        for (i, record) in records.iter().enumerate() {
            let sum = record.rendition_sum();
            if sum > record.count {
                return Err(Error::RenditionsExceedCount {
                    name: record.name.clone(),
                    count: record.count,
                    sum,
                });
            }
            if index
                .insert((record.gender, record.name.clone()), i)
                .is_some()
            {
                return Err(Error::DuplicateName {
                    name: record.name.clone(),
                    gender: record.gender,
                });
            }
            listed[record.gender as usize] += record.count;
        }
        for (gender, total) in [(Gender::Male, male_total), (Gender::Female, female_total)] {
            if listed[gender as usize] > total {
                return Err(Error::TotalBelowListed {
                    gender,
                    total,
                    listed: listed[gender as usize],
                });
            }
        }
        Ok(Onomasticon {
            records,
            index,
            male_total,
            female_total,
        })
    }

    pub fn records(&self) -> &[NameRecord] {
        &self.records
    }

    pub fn records_of(&self, gender: Gender) -> impl Iterator<Item = &NameRecord> {
        self.records.iter().filter(move |r| r.gender == gender)
    }

    pub fn male_total(&self) -> u64 {
        self.male_total
    }

    pub fn female_total(&self) -> u64 {
        self.female_total
    }

    pub fn total(&self, gender: Gender) -> u64 {
        match gender {
            Gender::Male => self.male_total,
            Gender::Female => self.female_total,
        }
    }

    pub fn get(&self, name: &str, gender: Gender) -> Option<&NameRecord> {
        self.index
            .get(&(gender, String::from(name)))
            .map(|&i| &self.records[i])
    }

    /// Count for a name; names not listed count as zero.
    pub fn count(&self, name: &str, gender: Gender) -> u64 {
        self.get(name, gender).map_or(0, |r| r.count)
    }

    /// Probability that a draw of the given gender carries `name`.
    pub fn conditional_probability(&self, name: &str, gender: Gender) -> Rational {
        ratio(self.count(name, gender), self.total(gender))
    }

    /// Share of a random draw that falls on `gender`.
    pub fn gender_share(&self, gender: Gender, model: RatioModel) -> Rational {
        match model {
            RatioModel::Equal => ratio(1, 2),
            RatioModel::Empirical => ratio(self.total(gender), self.male_total + self.female_total),
        }
    }

    /// Probability that a single draw from the whole population, genders
    /// mixed according to `model`, is `name` of `gender`.
    pub fn name_probability(&self, name: &str, gender: Gender, model: RatioModel) -> Rational {
        self.gender_share(gender, model) * self.conditional_probability(name, gender)
    }

    /// Probability that a single mixed-gender draw lands in the target set.
    pub fn target_set_nu(&self, set: &TargetSetSpec, model: RatioModel) -> Rational {
        Gender::BOTH
            .iter()
            .map(|&gender| {
                let hits: u64 = set
                    .names_of(gender)
                    .map(|name| self.count(name, gender))
                    .sum();
                if hits == 0 {
                    Rational::zero()
                } else {
                    self.gender_share(gender, model) * ratio(hits, self.total(gender))
                }
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Count mass not attributed to any listed record.
    pub fn unlisted_count(&self, gender: Gender) -> u64 {
        self.total(gender) - self.records_of(gender).map(|r| r.count).sum::<u64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::One;

    fn talpiyot_like() -> Onomasticon {
        Onomasticon::new(
            2509,
            317,
            vec![
                NameRecord::new("matthew", Gender::Male, 62),
                NameRecord::new("judah", Gender::Male, 171),
                NameRecord::new("mariam", Gender::Female, 81),
            ],
        )
        .unwrap()
    }

    #[test]
    fn name_probability_equal_ratio() {
        let o = talpiyot_like();
        let p = o.name_probability("matthew", Gender::Male, RatioModel::Equal);
        assert_eq!(p, ratio(62, 2 * 2509));
        assert!((crate::rational::to_f64(&p) - 0.012356).abs() < 5e-7);
    }

    #[test]
    fn name_probability_empirical_ratio() {
        let o = talpiyot_like();
        let p = o.name_probability("judah", Gender::Male, RatioModel::Empirical);
        assert_eq!(p, ratio(171, 2826));
        assert!((crate::rational::to_f64(&p) - 0.06051).abs() < 5e-6);
    }

    #[test]
    fn missing_name_has_zero_probability() {
        let o = talpiyot_like();
        assert!(o
            .name_probability("nobody", Gender::Male, RatioModel::Equal)
            .is_zero());
        // right name, wrong gender
        assert!(o
            .name_probability("mariam", Gender::Male, RatioModel::Empirical)
            .is_zero());
    }

    #[test]
    fn shares_sum_to_one() {
        let o = talpiyot_like();
        for model in [RatioModel::Equal, RatioModel::Empirical] {
            let s = o.gender_share(Gender::Male, model) + o.gender_share(Gender::Female, model);
            assert!(s.is_one());
        }
    }

    #[test]
    fn rejects_duplicates_and_bad_renditions() {
        let dup = Onomasticon::new(
            10,
            10,
            vec![
                NameRecord::new("a", Gender::Male, 1),
                NameRecord::new("a", Gender::Male, 2),
            ],
        );
        assert!(matches!(dup, Err(Error::DuplicateName { .. })));

        // same identifier across genders is fine
        Onomasticon::new(
            10,
            10,
            vec![
                NameRecord::new("a", Gender::Male, 1),
                NameRecord::new("a", Gender::Female, 2),
            ],
        )
        .unwrap();

        let over = Onomasticon::new(
            10,
            10,
            vec![NameRecord::new("a", Gender::Male, 3)
                .with_renditions(vec![("a1".into(), 2), ("a2".into(), 2)])],
        );
        assert!(matches!(over, Err(Error::RenditionsExceedCount { .. })));

        assert!(matches!(
            Onomasticon::new(0, 10, vec![]),
            Err(Error::NonPositiveTotal {
                gender: Gender::Male
            })
        ));
        assert!(matches!(
            Onomasticon::new(5, 10, vec![NameRecord::new("a", Gender::Male, 6)]),
            Err(Error::TotalBelowListed { .. })
        ));
    }

    #[test]
    fn empty_onomasticon_is_valid() {
        let o = Onomasticon::new(2509, 317, vec![]).unwrap();
        assert!(o.records().is_empty());
        assert_eq!(o.unlisted_count(Gender::Female), 317);
    }
}
