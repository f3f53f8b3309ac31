//! Text and delimited renderings of the result types.
//!
//! Text mode rounds probabilities to three significant figures and shows
//! the exact rational next to them when it is short enough to read.
//! Delimited mode writes tab-separated rows with full-precision floats and
//! the complete rational; it contains nothing that varies between runs.

use std::fmt::Write as _;

use coincidence_core::bayesian::{LikelihoodRatio, PosteriorResult};
use coincidence_core::frequentist::PValueGrid;
use coincidence_core::rational::to_f64;
use coincidence_core::rr::{
    rr_pvalue, rr_statistic, DiscreteOutcomeSpace, RelevanceSpec, RrPValue,
};
use coincidence_core::Rational;

use crate::check::{CheckRow, TOLERANCE_SE};
use crate::config::OutputFormat;
use crate::montecarlo::SimConfig;

/// Longest rational shown inline in text mode.
const MAX_INLINE_RATIONAL: usize = 24;

/// Round to three significant figures; scientific notation below 1e-4.
pub fn sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if mag < -4 {
        return format!("{x:.2e}");
    }
    let decimals = (2 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn percent(x: f64) -> String {
    format!("{}%", sig3(100.0 * x))
}

/// A rational in text mode: `0.393` or `0.393 (= 2/3)`.
pub fn approx(value: &Rational) -> String {
    let shown = sig3(to_f64(value));
    let exact = value.to_string();
    if exact.len() <= MAX_INLINE_RATIONAL && exact != shown {
        format!("{shown} (= {exact})")
    } else {
        shown
    }
}

fn exact_or_digits(value: &Rational) -> String {
    let exact = value.to_string();
    if exact.len() <= MAX_INLINE_RATIONAL {
        exact
    } else {
        format!("[{} digits]", exact.len())
    }
}

/// Left-aligned columns separated by two spaces.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (cell, w) in cells.zip(&widths) {
            let pad = w - cell.chars().count();
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', pad + 2));
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn delimited(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn float(value: &Rational) -> String {
    format!("{}", to_f64(value))
}

pub fn render_grid(grid: &PValueGrid, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let rows: Vec<Vec<String>> = grid
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.variant.clone(),
                        r.ratio.label().to_string(),
                        r.anchor.to_string(),
                        r.tombs.to_string(),
                        r.ossuaries.to_string(),
                        sig3(to_f64(&r.nu)),
                        sig3(to_f64(&r.anchor_probability)),
                        sig3(to_f64(&r.pi)),
                        sig3(to_f64(&r.p_value)),
                    ]
                })
                .collect();
            let mut out = aligned(
                &[
                    "S", "ratio", "anchor", "N", "n", "nu", "p_anchor", "pi", "p",
                ],
                &rows,
            );
            out.push_str("\nexact values\n");
            let rows: Vec<Vec<String>> = grid
                .rows
                .iter()
                .map(|r| {
                    vec![
                        format!(
                            "{}/{}/{}/N={}",
                            r.variant,
                            r.ratio.label(),
                            r.anchor,
                            r.tombs
                        ),
                        exact_or_digits(&r.nu),
                        exact_or_digits(&r.anchor_probability),
                        exact_or_digits(&r.pi),
                        exact_or_digits(&r.p_value),
                    ]
                })
                .collect();
            out.push_str(&aligned(&["row", "nu", "p_anchor", "pi", "p"], &rows));
            out
        }
        OutputFormat::Delimited => {
            let rows: Vec<Vec<String>> = grid
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.variant.clone(),
                        r.ratio.label().to_string(),
                        r.anchor.to_string(),
                        r.tombs.to_string(),
                        r.ossuaries.to_string(),
                        float(&r.nu),
                        float(&r.anchor_probability),
                        float(&r.pi),
                        float(&r.p_value),
                        r.nu.to_string(),
                        r.anchor_probability.to_string(),
                        r.pi.to_string(),
                        r.p_value.to_string(),
                    ]
                })
                .collect();
            delimited(
                &[
                    "set",
                    "ratio",
                    "anchor",
                    "tombs",
                    "ossuaries",
                    "nu",
                    "p_anchor",
                    "pi",
                    "p_value",
                    "nu_exact",
                    "p_anchor_exact",
                    "pi_exact",
                    "p_value_exact",
                ],
                &rows,
            )
        }
    }
}

fn lr_text(lr: &LikelihoodRatio) -> String {
    match lr {
        LikelihoodRatio::Finite(r) => approx(r),
        LikelihoodRatio::Infinite => "inf".to_string(),
    }
}

pub fn render_posteriors(results: &[PosteriorResult], format: OutputFormat) -> String {
    let opt = |v: &Option<Rational>, f: &dyn Fn(&Rational) -> String| {
        v.as_ref().map_or("inf".to_string(), f)
    };
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for r in results {
                let _ = writeln!(out, "scenario {}", r.scenario);
                let rows = [
                    ("prior odds", approx(&r.prior_odds)),
                    ("null likelihood", opt(&r.null_likelihood, &approx)),
                    ("alt likelihood", opt(&r.alt_likelihood, &approx)),
                    ("likelihood ratio", lr_text(&r.likelihood_ratio)),
                    ("rendition factor", approx(&r.rendition_factor)),
                    ("posterior odds", opt(&r.odds, &approx)),
                    ("posterior", percent(to_f64(&r.posterior))),
                ];
                for (name, value) in rows {
                    let _ = writeln!(out, "  {name:<18}{value}");
                }
                let _ = writeln!(
                    out,
                    "  {:<18}{}",
                    "exact posterior",
                    exact_or_digits(&r.posterior)
                );
                out.push('\n');
            }
            out.pop();
            out
        }
        OutputFormat::Delimited => {
            let lr_exact = |lr: &LikelihoodRatio| lr.to_string();
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        r.scenario.clone(),
                        r.prior_odds.to_string(),
                        opt(&r.null_likelihood, &|v| v.to_string()),
                        opt(&r.alt_likelihood, &|v| v.to_string()),
                        lr_exact(&r.likelihood_ratio),
                        r.rendition_factor.to_string(),
                        opt(&r.odds, &|v| v.to_string()),
                        r.posterior.to_string(),
                        float(&r.posterior),
                    ]
                })
                .collect();
            delimited(
                &[
                    "scenario",
                    "prior_odds",
                    "null_likelihood",
                    "alt_likelihood",
                    "likelihood_ratio",
                    "rendition_factor",
                    "posterior_odds",
                    "posterior_exact",
                    "posterior",
                ],
                &rows,
            )
        }
    }
}

/// One outcome space of the relevance-and-rareness demo.
#[derive(Debug, Clone)]
pub struct RrTable {
    pub label: String,
    pub space: DiscreteOutcomeSpace,
    pub relevant: RelevanceSpec,
    pub observed: String,
}

impl RrTable {
    pub fn p_value(&self) -> coincidence_core::Result<RrPValue> {
        rr_pvalue(&self.space, &self.relevant, &self.observed)
    }
}

fn rr_value(p: &RrPValue) -> String {
    match p {
        RrPValue::PValue(v) => v.to_string(),
        RrPValue::NotRelevant => "not relevant".to_string(),
    }
}

pub fn render_rr(tables: &[RrTable], format: OutputFormat) -> coincidence_core::Result<String> {
    let mut rows = Vec::new();
    for t in tables {
        let p = t.p_value()?;
        for (id, prob) in t.space.outcomes() {
            let rr = rr_statistic(&t.space, &t.relevant, id)?;
            let marker = if *id == t.observed { "observed" } else { "" };
            rows.push(vec![
                t.label.clone(),
                id.clone(),
                prob.to_string(),
                t.relevant.is_relevant(id).to_string(),
                rr.to_string(),
                marker.to_string(),
            ]);
        }
        let summary = match (&p, format) {
            (RrPValue::PValue(v), OutputFormat::Text) => format!("{} ({})", v, sig3(to_f64(v))),
            _ => rr_value(&p),
        };
        rows.push(vec![
            t.label.clone(),
            "p-value".into(),
            summary,
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    let header = ["space", "outcome", "P0", "relevant", "RR", "note"];
    Ok(match format {
        OutputFormat::Text => aligned(&header, &rows),
        OutputFormat::Delimited => delimited(&header, &rows),
    })
}

pub fn render_checks(rows: &[CheckRow], sim: &SimConfig, format: OutputFormat) -> String {
    let verdict = |pass: bool| if pass { "PASS" } else { "FAIL" };
    let z = |r: &CheckRow| {
        let se = r.estimate.standard_error;
        if se > 0.0 {
            format!("{:.2}", (r.estimate.point - r.exact_value) / se)
        } else {
            "-".to_string()
        }
    };
    match format {
        OutputFormat::Text => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.target.to_string(),
                        r.label.clone(),
                        r.exact.as_ref().map_or_else(|| sig3(r.exact_value), approx),
                        sig3(r.estimate.point),
                        sig3(r.estimate.standard_error),
                        z(r),
                        verdict(r.pass).to_string(),
                    ]
                })
                .collect();
            let mut out = format!(
                "trials {}  seed {}  tolerance {TOLERANCE_SE} SE\n",
                sim.trials, sim.seed
            );
            out.push_str(&aligned(
                &["target", "quantity", "exact", "estimate", "se", "z", ""],
                &body,
            ));
            let failed = rows.iter().filter(|r| !r.pass).count();
            let _ = writeln!(out, "{} checks, {} failed", rows.len(), failed);
            out
        }
        OutputFormat::Delimited => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.target.to_string(),
                        r.label.clone(),
                        format!("{}", r.exact_value),
                        r.exact.as_ref().map_or_else(String::new, |e| e.to_string()),
                        format!("{}", r.estimate.point),
                        format!("{}", r.estimate.standard_error),
                        r.estimate.hits.to_string(),
                        r.estimate.trials.to_string(),
                        r.estimate.seed.to_string(),
                        verdict(r.pass).to_string(),
                    ]
                })
                .collect();
            delimited(
                &[
                    "target",
                    "quantity",
                    "exact",
                    "exact_rational",
                    "estimate",
                    "se",
                    "hits",
                    "trials",
                    "seed",
                    "result",
                ],
                &body,
            )
        }
    }
}
