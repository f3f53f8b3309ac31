//! Command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coincidence_core::bayesian::evaluate;
use coincidence_core::frequentist::run_scenario_grid;
use coincidence_core::rr::{demo_fixture, demo_split, split_rendition};
use coincidence_core::Rational;
use num_traits::One;

use crate::check::{run_checks, CheckOptions, CheckTarget};
use crate::config::{load_config, OutputFormat, ScenarioConfig};
use crate::formats::parse_rational;
use crate::montecarlo::SimConfig;
use crate::report::{render_checks, render_grid, render_posteriors, render_rr, RrTable};

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_TRIALS: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    version,
    about = "Exact and simulated surprise measures for names found together in a tomb"
)]
pub struct Cli {
    /// Scenario configuration (TOML)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format; overrides the config's `format`
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Monte Carlo seed
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Monte Carlo trials
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiple-tomb p-values for every [[freq]] run
    Freq,
    /// Posterior probabilities for the configured scenarios
    Bayes,
    /// Relevance-and-rareness p-value before and after splitting a name
    RrDemo {
        /// Only show the unsplit space
        #[arg(long)]
        no_split: bool,
        /// Split fractions for outcome A, e.g. `1/4,3/4`
        #[arg(long, value_delimiter = ',')]
        fractions: Option<Vec<String>>,
    },
    /// Compare Monte Carlo estimates with the exact values
    Check {
        #[arg(long, value_enum, default_value_t = CheckTarget::All)]
        target: CheckTarget,
        /// Shift every exact value by this amount (harness self-test)
        #[arg(
            long,
            default_value_t = 0.0,
            hide = true,
            allow_negative_numbers = true
        )]
        corrupt_exact: f64,
    },
    /// Load the configuration and its files, then report what they contain
    Validate,
}

#[derive(Debug)]
pub enum Outcome {
    Ok(String),
    /// Report printed, but at least one check failed.
    CheckFailed(String),
    /// Bad input; nothing computed.
    Invalid(String),
}

impl Outcome {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Outcome::Ok(_) => ExitCode::SUCCESS,
            Outcome::CheckFailed(_) => ExitCode::from(1),
            Outcome::Invalid(_) => ExitCode::from(2),
        }
    }
}

fn config(cli: &Cli) -> Result<ScenarioConfig, String> {
    let path = cli
        .config
        .as_ref()
        .ok_or("this command needs --config <path>")?;
    load_config(path).map_err(|e| e.to_string())
}

fn format_of(cli: &Cli, cfg: Option<&ScenarioConfig>) -> OutputFormat {
    cli.format
        .or(cfg.map(|c| c.output_format))
        .unwrap_or_default()
}

fn rr_tables(no_split: bool, fractions: Option<&[String]>) -> Result<Vec<RrTable>, String> {
    let (space, relevant) = demo_fixture();
    let mut tables = vec![RrTable {
        label: "broad".into(),
        space: space.clone(),
        relevant: relevant.clone(),
        observed: "A".into(),
    }];
    if no_split {
        return Ok(tables);
    }
    let parts: Vec<(String, Rational)> = match fractions {
        None => demo_split(),
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, f)| {
                parse_rational(f)
                    .map(|r| (format!("A{}", i + 1), r))
                    .ok_or_else(|| format!("bad fraction `{f}`"))
            })
            .collect::<Result<_, _>>()?,
    };
    let (space, relevant) =
        split_rendition(&space, &relevant, "A", &parts, None).map_err(|e| e.to_string())?;
    tables.push(RrTable {
        label: "renditions".into(),
        space,
        relevant,
        observed: "A1".into(),
    });
    Ok(tables)
}

fn validate(cfg: &ScenarioConfig) -> String {
    let o = &cfg.onomasticon;
    let mut out = format!(
        "onomasticon: {} names, totals {} male / {} female\n",
        o.records().len(),
        o.male_total(),
        o.female_total()
    );
    out.push_str(&format!("frequentist runs: {}\n", cfg.freq.len()));
    match &cfg.bayes {
        Some(b) => {
            let labels: Vec<&str> = b.runs.iter().map(|r| r.label.as_str()).collect();
            out.push_str(&format!(
                "bayes scenarios: {} [{}]\ninscriptions: {} male, {} female\n",
                labels.len(),
                labels.join(", "),
                b.inscriptions.names(coincidence_core::Gender::Male).len(),
                b.inscriptions.names(coincidence_core::Gender::Female).len()
            ));
        }
        None => out.push_str("bayes scenarios: 0\n"),
    }
    out
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::RrDemo {
            no_split,
            fractions,
        } => rr_tables(*no_split, fractions.as_deref())
            .and_then(|t| render_rr(&t, format_of(cli, None)).map_err(|e| e.to_string()))
            .map(Outcome::Ok),
        command => config(cli).and_then(|cfg| {
            let format = format_of(cli, Some(&cfg));
            match command {
                Command::Freq => {
                    if cfg.freq.is_empty() {
                        return Err("config has no [[freq]] runs".into());
                    }
                    run_scenario_grid(&cfg.onomasticon, &cfg.freq)
                        .map(|grid| Outcome::Ok(render_grid(&grid, format)))
                        .map_err(|e| e.to_string())
                }
                Command::Bayes => {
                    let b = cfg.bayes.as_ref().ok_or("config has no [bayes] section")?;
                    let factor = coincidence_core::bayesian::rendition_odds_factor(&b.rendition);
                    let results = b
                        .runs
                        .iter()
                        .map(|run| {
                            let f = if run.rendition {
                                factor.clone()
                            } else {
                                Rational::one()
                            };
                            evaluate(
                                &run.label,
                                &b.inscriptions,
                                &run.table,
                                &cfg.onomasticon,
                                &b.prior,
                                &f,
                            )
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| e.to_string())?;
                    Ok(Outcome::Ok(render_posteriors(&results, format)))
                }
                Command::Check {
                    target,
                    corrupt_exact,
                } => {
                    let sim = SimConfig::new(cli.trials, cli.seed);
                    let opts = CheckOptions {
                        sim,
                        target: *target,
                        corrupt: *corrupt_exact,
                    };
                    let rows = run_checks(&cfg, &opts).map_err(|e| e.to_string())?;
                    if rows.is_empty() {
                        return Err("nothing to check for this target".into());
                    }
                    let text = render_checks(&rows, &sim, format);
                    Ok(if rows.iter().all(|r| r.pass) {
                        Outcome::Ok(text)
                    } else {
                        Outcome::CheckFailed(text)
                    })
                }
                Command::Validate => Ok(Outcome::Ok(validate(&cfg))),
                Command::RrDemo { .. } => unreachable!(),
            }
        }),
    };
    result.unwrap_or_else(Outcome::Invalid)
}
