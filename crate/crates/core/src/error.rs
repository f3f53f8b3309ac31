use alloc::string::String;

use crate::onomasticon::Gender;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(String),
    #[error("duplicate {gender} name `{name}`")]
    DuplicateName { name: String, gender: Gender },
    #[error("renditions of `{name}` sum to {sum}, exceeding its count {count}")]
    RenditionsExceedCount { name: String, count: u64, sum: u64 },
    #[error("{gender} total must be positive")]
    NonPositiveTotal { gender: Gender },
    #[error("{gender} total {total} is smaller than the listed counts ({listed})")]
    TotalBelowListed {
        gender: Gender,
        total: u64,
        listed: u64,
    },
    #[error("overlap threshold must be at least 1")]
    ZeroThreshold,
    #[error("compound anchor requires a second name")]
    MissingCompoundName,
    #[error("tomb population needs at least one tomb with at least one ossuary")]
    EmptyPopulation,
    #[error("prior t/N = {0} must be below 1")]
    PriorNotBelowOne(String),
    #[error("prior t must lie in [0, 1]")]
    PriorTOutOfRange,
    #[error("negative weight for `{0}`")]
    NegativeWeight(String),
    #[error("duplicate person `{0}` in weight table")]
    DuplicatePerson(String),
    #[error("subset index {index} out of range for {len} weights")]
    SubsetIndex { index: usize, len: usize },
    #[error("remaining draw mass is not positive after {drawn} draws")]
    ExhaustedMass { drawn: usize },
    #[error("null rendition probability must be positive")]
    ZeroNullRendition,
    #[error("rendition probabilities must lie in (0, 1]")]
    RenditionOutOfRange,
    #[error("null and alternative likelihoods are both zero")]
    DegenerateLikelihoods,
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("outcome `{0}` appears twice")]
    DuplicateOutcome(String),
    #[error("outcome probabilities must be nonnegative and sum to 1, got {0}")]
    NotADistribution(String),
    #[error("split fractions must be positive and sum to 1, got {0}")]
    BadSplit(String),
    #[error("cannot make {draws} draws: {reason}")]
    InfeasibleDraw { draws: usize, reason: &'static str },
}
