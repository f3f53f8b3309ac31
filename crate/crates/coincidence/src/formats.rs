//! Pipe-delimited text formats for onomasticons, weight tables and
//! inscription lists.
//!
//! All three share the same lexical rules: UTF-8, `|` separators, lines
//! starting with `#` are comments and blank lines are ignored.

use std::io::Read;

use coincidence_core::bayesian::{PersonWeight, TombInscriptions, Weight, WeightTable};
use coincidence_core::{Gender, NameRecord, Onomasticon, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `totals|<male>|<female>` header")]
    MissingHeader,
    #[error(transparent)]
    Model(#[from] coincidence_core::Error),
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
}

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_count(field: &str, line: usize) -> Result<u64, FormatError> {
    field
        .trim()
        .parse::<u64>()
        .map_err(|_| line_err(line, format!("`{field}` is not a nonnegative integer")))
}

fn parse_gender(field: &str, line: usize) -> Result<Gender, FormatError> {
    Gender::from_code(field.trim())
        .ok_or_else(|| line_err(line, format!("gender must be `m` or `f`, got `{field}`")))
}

/// Parse `p/q`, an integer, or a plain decimal like `0.125` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10u8), frac_part.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

pub fn parse_weight(text: &str) -> Option<Weight> {
    match text.trim() {
        "inf" | "INF" | "∞" => Some(Weight::Infinite),
        other => parse_rational(other).map(Weight::Finite),
    }
}

/// Parse the onomasticon format:
///
/// ```text
/// totals|<male_total>|<female_total>
/// <name>|<m|f>|<count>[|<rendition>:<count>;<rendition>:<count>...]
/// ```
pub fn parse_onomasticon(text: &str) -> Result<Onomasticon, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let fields: Vec<&str> = header.split('|').collect();
    if fields.len() != 3 || fields[0].trim() != "totals" {
        return Err(line_err(header_line, "expected `totals|<male>|<female>`"));
    }
    let male_total = parse_count(fields[1], header_line)?;
    let female_total = parse_count(fields[2], header_line)?;

    let mut records = Vec::new();
    for (line, body) in lines {
        let fields: Vec<&str> = body.split('|').collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(line_err(
                line,
                "expected `<name>|<m|f>|<count>[|renditions]`",
            ));
        }
        let name = fields[0].trim();
        if name.is_empty() {
            return Err(line_err(line, "empty name"));
        }
        let gender = parse_gender(fields[1], line)?;
        let count = parse_count(fields[2], line)?;
        let mut renditions = Vec::new();
        if let Some(list) = fields.get(3) {
            for item in list.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let (id, c) = item.split_once(':').ok_or_else(|| {
                    line_err(line, format!("rendition `{item}` needs `id:count`"))
                })?;
                renditions.push((id.trim().to_string(), parse_count(c, line)?));
            }
        }
        records.push(NameRecord::new(name, gender, count).with_renditions(renditions));
    }
    // Map model errors back to the offending line.
    let lines_of = |name: &str, gender: Option<Gender>| -> Vec<usize> {
        content_lines(text)
            .skip(1)
            .filter(|(_, l)| {
                let f: Vec<&str> = l.split('|').collect();
                f.len() >= 2
                    && f[0].trim() == name
                    && gender.is_none_or(|g| Gender::from_code(f[1].trim()) == Some(g))
            })
            .map(|(n, _)| n)
            .collect()
    };
    Onomasticon::new(male_total, female_total, records).map_err(|e| {
        use coincidence_core::Error as E;
        let line = match &e {
            E::DuplicateName { name, gender } => lines_of(name, Some(*gender)).last().copied(),
            E::RenditionsExceedCount { name, .. } => lines_of(name, None).first().copied(),
            E::NonPositiveTotal { .. } | E::TotalBelowListed { .. } => Some(header_line),
            _ => None,
        };
        match line {
            Some(l) => line_err(l, e.to_string()),
            None => FormatError::Model(e),
        }
    })
}

pub fn load_onomasticon(mut source: impl Read) -> Result<Onomasticon, FormatError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    parse_onomasticon(&text)
}

pub fn write_onomasticon(o: &Onomasticon) -> String {
    let mut out = format!("totals|{}|{}\n", o.male_total(), o.female_total());
    for r in o.records() {
        out.push_str(&format!("{}|{}|{}", r.name, r.gender.code(), r.count));
        if !r.renditions.is_empty() {
            let list: Vec<String> = r
                .renditions
                .iter()
                .map(|(id, c)| format!("{id}:{c}"))
                .collect();
            out.push('|');
            out.push_str(&list.join(";"));
        }
        out.push('\n');
    }
    out
}

/// Parse a weight table:
///
/// ```text
/// <person>|<m|f>|<broad_name>|<weight>
/// others|<m|f>|<weight>
/// ```
///
/// Weights are `p/q`, decimals, integers or `inf`. A missing `others` row
/// means weight 0.
pub fn parse_weight_table(label: &str, text: &str) -> Result<WeightTable, FormatError> {
    let mut persons = Vec::new();
    let mut others = [Rational::zero(), Rational::zero()];
    let mut others_seen = [false, false];
    for (line, body) in content_lines(text) {
        let fields: Vec<&str> = body.split('|').map(str::trim).collect();
        if fields.first() == Some(&"others") {
            if fields.len() != 3 {
                return Err(line_err(line, "expected `others|<m|f>|<weight>`"));
            }
            let gender = parse_gender(fields[1], line)?;
            let w = parse_rational(fields[2])
                .ok_or_else(|| line_err(line, format!("bad weight `{}`", fields[2])))?;
            if w.is_negative() {
                return Err(line_err(line, "negative weight"));
            }
            if std::mem::replace(&mut others_seen[gender as usize], true) {
                return Err(line_err(line, format!("second `others` row for {gender}")));
            }
            others[gender as usize] = w;
            continue;
        }
        if fields.len() != 4 {
            return Err(line_err(
                line,
                "expected `<person>|<m|f>|<broad_name>|<weight>`",
            ));
        }
        let gender = parse_gender(fields[1], line)?;
        let weight = parse_weight(fields[3])
            .ok_or_else(|| line_err(line, format!("bad weight `{}`", fields[3])))?;
        if matches!(&weight, Weight::Finite(w) if w.is_negative()) {
            return Err(line_err(line, "negative weight"));
        }
        if fields[0].is_empty() || fields[2].is_empty() {
            return Err(line_err(line, "empty person or name"));
        }
        persons.push(PersonWeight::new(fields[0], gender, fields[2], weight));
    }
    let [male, female] = others;
    Ok(WeightTable::new(label, persons, male, female)?)
}

/// Parse an inscription list: `<broad_name>|<m|f>[|<note>]` per line. The
/// note (typically the original inscription text) is ignored.
pub fn parse_inscriptions(text: &str) -> Result<TombInscriptions, FormatError> {
    let mut insc = TombInscriptions::default();
    for (line, body) in content_lines(text) {
        let fields: Vec<&str> = body.split('|').map(str::trim).collect();
        if !(2..=3).contains(&fields.len()) || fields[0].is_empty() {
            return Err(line_err(line, "expected `<name>|<m|f>[|note]`"));
        }
        insc.push(fields[0], parse_gender(fields[1], line)?);
    }
    Ok(insc)
}
