//! Seeded synthetic patient cohorts.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`. Demographics
//! draw from stream 0 and the k-th symptom column from stream k + 1; a
//! planted pair draws both of its columns from the stream of its first item.
//! Output is therefore identical across platforms for a given spec.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ingest::{AgeBucket, Column, LabResult, Outcome, PatientRecord, PatientTable, Sex, RESERVED_COLUMNS};

/// Oldest age drawn for the open-ended top bucket.
pub const MAX_AGE: u32 = 100;

const FRACTION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedPair {
    pub a: String,
    pub b: String,
    /// Target fraction of patients with both symptoms.
    pub joint: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CohortSpec {
    pub n: usize,
    /// Symptom columns, in output order, with their marginal frequencies.
    pub marginals: Vec<(String, f64)>,
    pub mortality: f64,
    pub male_fraction: f64,
    /// Weights for `<20`, `20-40`, `40-60`, `>60`; must sum to 1.
    pub age_weights: [f64; 4],
    pub planted_pairs: Vec<PlantedPair>,
    /// Emit a `lab_result` column with this positive fraction.
    pub lab_positive: Option<f64>,
    pub seed: u64,
}

impl CohortSpec {
    /// A cohort with the demographic shape of a 2875-patient hospital series
    /// (24% mortality, 59% male, median age in the 40-60 bucket) and no symptoms.
    pub fn new(n: usize, seed: u64) -> Self {
        CohortSpec {
            n,
            marginals: Vec::new(),
            mortality: 0.24,
            male_fraction: 0.59,
            age_weights: [0.05, 0.20, 0.30, 0.45],
            planted_pairs: Vec::new(),
            lab_positive: None,
            seed,
        }
    }

    pub fn with_marginal(mut self, name: impl Into<String>, fraction: f64) -> Self {
        self.marginals.push((name.into(), fraction));
        self
    }

    pub fn with_pair(mut self, a: impl Into<String>, b: impl Into<String>, joint: f64) -> Self {
        self.planted_pairs.push(PlantedPair {
            a: a.into(),
            b: b.into(),
            joint,
        });
        self
    }

    fn marginal(&self, name: &str) -> Option<(usize, f64)> {
        self.marginals
            .iter()
            .position(|(n, _)| n == name)
            .map(|i| (i, self.marginals[i].1))
    }

    pub fn validate(&self) -> Result<()> {
        let fraction = |what: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{what} {v} outside [0, 1]")))
            }
        };
        fraction("mortality", self.mortality)?;
        fraction("male fraction", self.male_fraction)?;
        if let Some(p) = self.lab_positive {
            fraction("lab positive fraction", p)?;
        }
        for w in self.age_weights {
            if w.is_nan() || w < 0.0 {
                return Err(Error::Config(format!("age weight {w} must be non-negative")));
            }
        }
        let total: f64 = self.age_weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("age weights sum to {total}, expected 1")));
        }

        let mut names = HashSet::new();
        for (name, p) in &self.marginals {
            if name.is_empty() || name.contains([',', '\n', '\r', '"']) {
                return Err(Error::Config(format!("invalid symptom name `{name}`")));
            }
            if RESERVED_COLUMNS.contains(&name.as_str()) {
                return Err(Error::Config(format!("`{name}` is a reserved column name")));
            }
            if !names.insert(name.as_str()) {
                return Err(Error::Config(format!("duplicate symptom `{name}`")));
            }
            fraction(&format!("marginal of `{name}`"), *p)?;
        }

        let mut planted = HashSet::new();
        for pair in &self.planted_pairs {
            let (_, pa) = self
                .marginal(&pair.a)
                .ok_or_else(|| Error::Config(format!("planted item `{}` has no marginal", pair.a)))?;
            let (_, pb) = self
                .marginal(&pair.b)
                .ok_or_else(|| Error::Config(format!("planted item `{}` has no marginal", pair.b)))?;
            if pair.a == pair.b {
                return Err(Error::Config(format!("planted pair repeats `{}`", pair.a)));
            }
            for item in [&pair.a, &pair.b] {
                if !planted.insert(item.as_str()) {
                    return Err(Error::Config(format!("`{item}` appears in more than one planted pair")));
                }
            }
            let lower = (pa + pb - 1.0).max(0.0);
            let upper = pa.min(pb);
            if pair.joint < lower - FRACTION_SLACK {
                return Err(Error::Config(format!(
                    "planted joint {} for ({}, {}) is below the lower Fréchet bound {lower}",
                    pair.joint, pair.a, pair.b
                )));
            }
            if pair.joint > upper + FRACTION_SLACK {
                return Err(Error::Config(format!(
                    "planted joint {} for ({}, {}) is above the upper Fréchet bound {upper}",
                    pair.joint, pair.a, pair.b
                )));
            }
        }
        Ok(())
    }
}

/// Parses `name:fraction`.
pub fn parse_marginal(s: &str) -> Result<(String, f64)> {
    let (name, p) = s
        .rsplit_once(':')
        .ok_or_else(|| Error::Config(format!("expected NAME:FRACTION, got `{s}`")))?;
    let p: f64 = p
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad fraction in `{s}`")))?;
    Ok((name.trim().to_string(), p))
}

/// Parses `a,b:joint`.
pub fn parse_pair(s: &str) -> Result<PlantedPair> {
    let (items, joint) = parse_marginal(s)?;
    let (a, b) = items
        .split_once(',')
        .ok_or_else(|| Error::Config(format!("expected A,B:JOINT, got `{s}`")))?;
    Ok(PlantedPair {
        a: a.trim().to_string(),
        b: b.trim().to_string(),
        joint,
    })
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn draw_age(rng: &mut ChaCha8Rng, weights: &[f64; 4]) -> u32 {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut bucket = AgeBucket::Over60;
    for (b, w) in AgeBucket::ALL.iter().zip(weights) {
        acc += w;
        if u < acc {
            bucket = *b;
            break;
        }
    }
    // skip zero-weight buckets reached only by rounding at the top end
    if weights[3] == 0.0 && bucket == AgeBucket::Over60 {
        let last = weights.iter().rposition(|&w| w > 0.0).unwrap_or(0);
        bucket = AgeBucket::ALL[last];
    }
    let (lo, hi) = bucket.bounds();
    let hi_inclusive = hi.map_or(MAX_AGE, |h| h - 1);
    rng.gen_range(lo..=hi_inclusive)
}

pub fn generate_cohort(spec: &CohortSpec) -> Result<PatientTable> {
    spec.validate()?;

    let mut columns = vec![Column::Id, Column::Age, Column::Sex, Column::Outcome];
    if spec.lab_positive.is_some() {
        columns.push(Column::LabResult);
    }
    columns.extend(spec.marginals.iter().map(|(name, _)| Column::Symptom(name.clone())));
    let mut table = PatientTable::new(columns)?;

    let n = spec.n;
    let k = spec.marginals.len();
    let mut flags = vec![vec![false; k]; n];
    let mut done = vec![false; k];

    for pair in &spec.planted_pairs {
        let (ia, pa) = spec.marginal(&pair.a).expect("validated");
        let (ib, pb) = spec.marginal(&pair.b).expect("validated");
        let both = pair.joint;
        let only_a = (pa - both).max(0.0);
        let only_b = (pb - both).max(0.0);
        let mut rng = stream(spec.seed, ia as u64 + 1);
        for row in flags.iter_mut() {
            let u: f64 = rng.gen();
            let (a, b) = if u < both {
                (true, true)
            } else if u < both + only_a {
                (true, false)
            } else if u < both + only_a + only_b {
                (false, true)
            } else {
                (false, false)
            };
            row[ia] = a;
            row[ib] = b;
        }
        done[ia] = true;
        done[ib] = true;
    }

    for (i, (_, p)) in spec.marginals.iter().enumerate() {
        if done[i] {
            continue;
        }
        let mut rng = stream(spec.seed, i as u64 + 1);
        for row in flags.iter_mut() {
            row[i] = rng.gen::<f64>() < *p;
        }
    }

    let mut demo = stream(spec.seed, 0);
    for (idx, symptoms) in flags.into_iter().enumerate() {
        let age = draw_age(&mut demo, &spec.age_weights);
        let sex = if demo.gen::<f64>() < spec.male_fraction {
            Sex::Male
        } else {
            Sex::Female
        };
        let outcome = if demo.gen::<f64>() < spec.mortality {
            Outcome::Deceased
        } else {
            Outcome::Recovered
        };
        let lab_result = spec.lab_positive.map(|p| {
            if demo.gen::<f64>() < p {
                LabResult::Positive
            } else {
                LabResult::Negative
            }
        });
        table.push(PatientRecord {
            id: Some((idx + 1).to_string()),
            age: Some(age),
            sex: Some(sex),
            outcome: Some(outcome),
            lab_result,
            symptoms,
        })?;
    }
    Ok(table)
}
