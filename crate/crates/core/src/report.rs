//! Rule and frequency reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FrequencyMap;
use crate::itemset::{ItemCatalog, Itemset};
use crate::rules::{RuleCounts, RuleSet};
use crate::scalar::Scalar;

pub const RULE_COLUMNS: [&str; 8] = [
    "Antecedents",
    "Consequents",
    "Antecedent support",
    "Consequent support",
    "Support",
    "Confidence",
    "Lift",
    "Leverage",
];

pub const DEFAULT_DECIMALS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::Config(format!(
                "unknown format `{s}` (expected csv, json or md)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Markdown => "md",
        })
    }
}

/// One rule as written to JSON: full-precision metrics plus exact counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub antecedents: Vec<String>,
    pub consequents: Vec<String>,
    pub antecedent_support: f64,
    pub consequent_support: f64,
    pub support: f64,
    pub confidence: f64,
    pub lift: f64,
    pub leverage: f64,
    pub counts: CountRecord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub antecedent: u64,
    pub consequent: u64,
    pub joint: u64,
    pub transactions: u64,
}

impl From<RuleCounts> for CountRecord {
    fn from(c: RuleCounts) -> Self {
        CountRecord {
            antecedent: c.antecedent,
            consequent: c.consequent,
            joint: c.joint,
            transactions: c.transactions,
        }
    }
}

fn joined_names(catalog: &ItemCatalog, set: &Itemset) -> Result<String> {
    Ok(catalog.render(set)?.join(", "))
}

/// Renders `rs` with item names from `catalog`.
///
/// Human-readable formats round metrics half-to-even at `decimals` places;
/// JSON keeps full precision.
pub fn emit_report<T: Scalar>(
    rs: &RuleSet<T>,
    catalog: &ItemCatalog,
    format: Format,
    decimals: usize,
) -> Result<String> {
    match format {
        Format::Json => {
            let records = rs
                .iter()
                .map(|r| {
                    let names = |s: &Itemset| -> Result<Vec<String>> {
                        Ok(catalog.render(s)?.into_iter().map(str::to_string).collect())
                    };
                    let m = &r.metrics;
                    Ok(RuleRecord {
                        antecedents: names(&r.antecedent)?,
                        consequents: names(&r.consequent)?,
                        antecedent_support: m.antecedent_support.to_f64(),
                        consequent_support: m.consequent_support.to_f64(),
                        support: m.support.to_f64(),
                        confidence: m.confidence.to_f64(),
                        lift: m.lift.to_f64(),
                        leverage: m.leverage.to_f64(),
                        counts: r.counts.into(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut out = serde_json::to_string_pretty(&records).map_err(|e| Error::Contract(e.to_string()))?;
            out.push('\n');
            Ok(out)
        }
        Format::Csv | Format::Markdown => {
            let mut rows = Vec::with_capacity(rs.len());
            for r in rs {
                let m = &r.metrics;
                let mut row = vec![
                    joined_names(catalog, &r.antecedent)?,
                    joined_names(catalog, &r.consequent)?,
                ];
                row.extend(
                    [
                        &m.antecedent_support,
                        &m.consequent_support,
                        &m.support,
                        &m.confidence,
                        &m.lift,
                        &m.leverage,
                    ]
                    .map(|v| v.to_fixed(decimals)),
                );
                rows.push(row);
            }
            if format == Format::Csv {
                write_csv(&RULE_COLUMNS, &rows)
            } else {
                Ok(markdown(&RULE_COLUMNS, &rows))
            }
        }
    }
}

fn write_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Contract(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Contract(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Contract(e.to_string()))
}

fn markdown(header: &[&str], rows: &[Vec<String>]) -> String {
    let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
    let mut out = line(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    out.push_str(&line(
        &header.iter().map(|h| "-".repeat(h.len().max(3))).collect::<Vec<_>>(),
    ));
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// `item,count,fraction`, most frequent first.
pub fn frequency_csv(freq: &FrequencyMap) -> Result<String> {
    let rows = freq
        .ranked()
        .into_iter()
        .map(|f| {
            Ok(vec![
                freq.catalog().name(f.id)?.to_string(),
                f.count.to_string(),
                f.fraction.to_string(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    write_csv(&["item", "count", "fraction"], &rows)
}
