//! Scenario configuration: a TOML file naming the data files and the runs
//! to perform. Relative paths resolve against the config file's directory.
//!
//! ```toml
//! onomasticon = "talpiyot_onomasticon.txt"
//! format = "text"
//!
//! [[target_set]]
//! label = "small"
//! threshold = 3
//! male = ["joseph", "james"]
//! female = ["mariam", "salome"]
//!
//! [population]
//! tombs = 100
//! ossuaries = 6
//!
//! [[freq]]
//! target_set = "small"
//! ratio = "empirical"
//! anchor = ["jesus", "joseph"]
//! tombs = 1000
//!
//! [bayes]
//! inscriptions = "talpiyot_inscriptions.txt"
//! neutral = "weights_neutral.txt"
//! optimistic = "weights_optimistic.txt"
//!
//! [prior]
//! tombs = 1100
//! t = "1"
//!
//! [rendition]
//! p_new_null = "1/80"
//! p_new_alt = "1/10"
//! interpretations = 3
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use coincidence_core::bayesian::{
    BayesFixtures, BayesScenario, PriorSpec, RenditionAdjustment, TombInscriptions, WeightTable,
};
use coincidence_core::frequentist::{AnchorSpec, FreqScenario, TargetSetSpec, TombPopulation};
use coincidence_core::{Gender, Onomasticon, RatioModel};
use serde::Deserialize;

use crate::formats::{self, parse_rational, FormatError};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Toml {
        path: PathBuf,
        source: Box<toml::de::Error>,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] coincidence_core::Error),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Delimited,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    onomasticon: PathBuf,
    format: Option<String>,
    #[serde(default, rename = "target_set")]
    target_sets: Vec<RawTargetSet>,
    population: Option<RawPopulation>,
    #[serde(default)]
    freq: Vec<RawFreq>,
    bayes: Option<RawBayes>,
    prior: Option<RawPrior>,
    rendition: Option<RawRendition>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTargetSet {
    label: String,
    #[serde(default = "default_threshold")]
    threshold: u32,
    #[serde(default)]
    male: Vec<String>,
    #[serde(default)]
    female: Vec<String>,
}

fn default_threshold() -> u32 {
    3
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPopulation {
    tombs: usize,
    ossuaries: u64,
    #[serde(default)]
    overrides: Vec<(usize, u64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFreq {
    target_set: String,
    ratio: String,
    anchor: Anchor,
    tombs: Option<usize>,
    ossuaries: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Anchor {
    Single(String),
    Names(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBayes {
    inscriptions: PathBuf,
    neutral: Option<PathBuf>,
    optimistic: Option<PathBuf>,
    scenarios: Option<Vec<String>>,
    #[serde(default)]
    custom: Vec<RawCustom>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCustom {
    label: String,
    weights: PathBuf,
    #[serde(default)]
    rendition: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrior {
    tombs: u64,
    t: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRendition {
    p_new_null: String,
    p_new_alt: String,
    #[serde(default = "default_interpretations")]
    interpretations: u32,
}

fn default_interpretations() -> u32 {
    1
}

/// One Bayesian run: a weight table and whether the rendition factor
/// applies.
#[derive(Debug, Clone)]
pub struct BayesRun {
    pub label: String,
    pub table: WeightTable,
    pub rendition: bool,
    pub preset: Option<BayesScenario>,
}

#[derive(Debug, Clone)]
pub struct BayesConfig {
    pub inscriptions: TombInscriptions,
    pub prior: PriorSpec,
    pub rendition: RenditionAdjustment,
    pub neutral: Option<WeightTable>,
    pub optimistic: Option<WeightTable>,
    pub runs: Vec<BayesRun>,
}

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub onomasticon: Onomasticon,
    pub output_format: OutputFormat,
    pub freq: Vec<FreqScenario>,
    pub bayes: Option<BayesConfig>,
}

impl ScenarioConfig {
    /// Fixtures for the three preset scenarios, when both preset tables are
    /// configured.
    pub fn bayes_fixtures(&self) -> Option<BayesFixtures> {
        let b = self.bayes.as_ref()?;
        Some(BayesFixtures {
            onomasticon: self.onomasticon.clone(),
            inscriptions: b.inscriptions.clone(),
            neutral: b.neutral.clone()?,
            optimistic: b.optimistic.clone()?,
            prior: b.prior.clone(),
            rendition: b.rendition.clone(),
        })
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_ratio_model(s: &str) -> Result<RatioModel, ConfigError> {
    match s {
        "equal" => Ok(RatioModel::Equal),
        "empirical" | "unequal" => Ok(RatioModel::Empirical),
        other => Err(invalid(format!("unknown ratio model `{other}`"))),
    }
}

pub fn parse_format(s: &str) -> Result<OutputFormat, ConfigError> {
    match s {
        "text" => Ok(OutputFormat::Text),
        "delimited" => Ok(OutputFormat::Delimited),
        other => Err(invalid(format!("unknown output format `{other}`"))),
    }
}

fn rational_field(name: &str, value: &str) -> Result<coincidence_core::Rational, ConfigError> {
    parse_rational(value).ok_or_else(|| invalid(format!("`{name}` is not a number: `{value}`")))
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_config(&text, base).map_err(|e| match e {
        ConfigError::Toml { source, .. } => ConfigError::Toml {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

/// Parse config text; file references resolve against `base`.
pub fn parse_config(text: &str, base: &Path) -> Result<ScenarioConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Toml {
        path: PathBuf::from("<config>"),
        source: Box::new(e),
    })?;
    let resolve = |p: &Path| base.join(p);

    let onomasticon_path = resolve(&raw.onomasticon);
    let onomasticon = formats::parse_onomasticon(&read(&onomasticon_path)?).map_err(|source| {
        ConfigError::Format {
            path: onomasticon_path.clone(),
            source,
        }
    })?;
    let output_format = raw
        .format
        .as_deref()
        .map(parse_format)
        .transpose()?
        .unwrap_or_default();

    let mut sets = BTreeMap::new();
    for ts in raw.target_sets {
        let names = ts
            .male
            .iter()
            .map(|n| (n.clone(), Gender::Male))
            .chain(ts.female.iter().map(|n| (n.clone(), Gender::Female)));
        let spec = TargetSetSpec::new(ts.label.clone(), names, ts.threshold)?;
        if sets.insert(ts.label.clone(), spec).is_some() {
            return Err(invalid(format!("target set `{}` defined twice", ts.label)));
        }
    }

    let mut freq = Vec::new();
    if !raw.freq.is_empty() {
        let pop = raw
            .population
            .as_ref()
            .ok_or_else(|| invalid("[[freq]] runs need a [population] section"))?;
        for f in raw.freq {
            let target = sets
                .get(&f.target_set)
                .ok_or_else(|| invalid(format!("unknown target set `{}`", f.target_set)))?
                .clone();
            let anchor = match f.anchor {
                Anchor::Single(name) => AnchorSpec::single(name),
                Anchor::Names(names) => match names.as_slice() {
                    [one] => AnchorSpec::single(one.clone()),
                    [a, b] => AnchorSpec::compound(a.clone(), b.clone()),
                    _ => return Err(invalid("anchor takes one name or two")),
                },
            };
            let population = TombPopulation::with_overrides(
                f.tombs.unwrap_or(pop.tombs),
                f.ossuaries.unwrap_or(pop.ossuaries),
                if f.tombs.is_some() {
                    Vec::new()
                } else {
                    pop.overrides.clone()
                },
            )?;
            freq.push(FreqScenario {
                target,
                ratio: parse_ratio_model(&f.ratio)?,
                anchor,
                population,
            });
        }
    }

    let bayes = match raw.bayes {
        None => None,
        Some(b) => {
            let insc_path = resolve(&b.inscriptions);
            let inscriptions =
                formats::parse_inscriptions(&read(&insc_path)?).map_err(|source| {
                    ConfigError::Format {
                        path: insc_path,
                        source,
                    }
                })?;
            let load_table = |label: &str, p: &Path| -> Result<WeightTable, ConfigError> {
                let path = resolve(p);
                formats::parse_weight_table(label, &read(&path)?)
                    .map_err(|source| ConfigError::Format { path, source })
            };
            let neutral = b
                .neutral
                .as_deref()
                .map(|p| load_table("neutral", p))
                .transpose()?;
            let optimistic = b
                .optimistic
                .as_deref()
                .map(|p| load_table("optimistic", p))
                .transpose()?;

            let prior = match raw.prior {
                Some(p) => PriorSpec::new(p.tombs, rational_field("prior.t", &p.t)?)?,
                None => return Err(invalid("[bayes] needs a [prior] section")),
            };
            let rendition = match raw.rendition {
                Some(r) => RenditionAdjustment::new(
                    rational_field("rendition.p_new_null", &r.p_new_null)?,
                    rational_field("rendition.p_new_alt", &r.p_new_alt)?,
                    r.interpretations,
                )?,
                None => {
                    let one = coincidence_core::rational::ratio(1, 1);
                    RenditionAdjustment::new(one.clone(), one, 1)?
                }
            };

            let wanted: Vec<String> = match b.scenarios {
                Some(list) => list,
                None => BayesScenario::ALL
                    .iter()
                    .filter(|sc| match sc {
                        BayesScenario::Optimistic => optimistic.is_some(),
                        _ => neutral.is_some(),
                    })
                    .map(|sc| sc.label().to_string())
                    .collect(),
            };
            let mut runs = Vec::new();
            for label in wanted {
                let preset = BayesScenario::parse(&label)
                    .ok_or_else(|| invalid(format!("unknown bayes scenario `{label}`")))?;
                let table = match preset {
                    BayesScenario::Optimistic => optimistic.clone(),
                    _ => neutral.clone(),
                }
                .ok_or_else(|| invalid(format!("scenario `{label}` needs its weight table")))?;
                runs.push(BayesRun {
                    label,
                    table,
                    rendition: preset == BayesScenario::NeutralRenditions,
                    preset: Some(preset),
                });
            }
            for c in b.custom {
                let table = load_table(&c.label, &c.weights)?;
                runs.push(BayesRun {
                    label: c.label,
                    table,
                    rendition: c.rendition,
                    preset: None,
                });
            }
            Some(BayesConfig {
                inscriptions,
                prior,
                rendition,
                neutral,
                optimistic,
                runs,
            })
        }
    };

    if freq.is_empty() && bayes.as_ref().is_none_or(|b| b.runs.is_empty()) {
        return Err(invalid(
            "config requests no [[freq]] runs and no [bayes] scenarios",
        ));
    }
    Ok(ScenarioConfig {
        onomasticon,
        output_format,
        freq,
        bayes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn dir_with(files: &[(&str, &str)]) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for (name, body) in files {
            let mut f = fs::File::create(dir.path().join(name)).unwrap();
            f.write_all(body.as_bytes()).unwrap();
        }
        dir
    }

    #[test]
    fn minimal_freq_config() {
        let dir = dir_with(&[("o.txt", "totals|10|10\na|m|2\nb|f|3\n")]);
        let cfg = parse_config(
            r#"
onomasticon = "o.txt"
[[target_set]]
label = "s"
female = ["b"]
[population]
tombs = 5
ossuaries = 4
[[freq]]
target_set = "s"
ratio = "equal"
anchor = "a"
[[freq]]
target_set = "s"
ratio = "unequal"
anchor = ["a", "a"]
tombs = 50
"#,
            dir.path(),
        )
        .unwrap();
        assert_eq!(cfg.freq.len(), 2);
        assert_eq!(cfg.freq[0].population.tombs(), 5);
        assert_eq!(cfg.freq[1].population.tombs(), 50);
        assert_eq!(cfg.freq[1].ratio, RatioModel::Empirical);
        assert!(matches!(cfg.freq[1].anchor, AnchorSpec::Compound { .. }));
        assert_eq!(cfg.freq[0].target.threshold(), 3);
    }

    #[test]
    fn errors_are_reported() {
        let dir = dir_with(&[("o.txt", "totals|10|10\n")]);
        let no_task = parse_config("onomasticon = \"o.txt\"\n", dir.path()).unwrap_err();
        assert!(matches!(no_task, ConfigError::Invalid(_)));
        let missing = parse_config("onomasticon = \"nope.txt\"\n", dir.path()).unwrap_err();
        assert!(matches!(missing, ConfigError::Io { .. }));
        let unknown = parse_config("onomasticon = \"o.txt\"\nbogus = 1\n", dir.path()).unwrap_err();
        assert!(matches!(unknown, ConfigError::Toml { .. }));
        let bad_set = parse_config(
            "onomasticon = \"o.txt\"\n[population]\ntombs = 1\nossuaries = 2\n[[freq]]\ntarget_set = \"x\"\nratio = \"equal\"\nanchor = \"a\"\n",
            dir.path(),
        )
        .unwrap_err();
        assert!(matches!(bad_set, ConfigError::Invalid(_)));
    }
}
