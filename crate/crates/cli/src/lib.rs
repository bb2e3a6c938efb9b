//! `armine` command-line interface.
//!
//! Exit status: 0 on success, 2 on usage errors, 1 on data errors.
//! Reports go to stdout (or `--output`), diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use armine_core::ingest::DerivationConfig;
use armine_core::pipeline::{self, PipelineConfig};
use armine_core::report::{frequency_csv, DEFAULT_DECIMALS};
use armine_core::synth::{parse_marginal, parse_pair, CohortSpec};
use armine_core::{
    catalog_for, derive_items, emit_report, filter_cohort, generate_cohort, item_frequencies, parse_patient_csv,
    CohortSelector, Format, ItemCatalog, ItemId, MiningConfig, PatientTable, TransactionSet,
};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "armine",
    version,
    about = "Apriori association-rule mining for patient symptom tables"
)]
pub struct Cli {
    /// File of `key=value` lines supplying long flags; flags on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-symptom frequencies as `item,count,fraction`.
    Freq(FreqArgs),
    /// Symptoms kept by dual-threshold feature selection.
    Select(SelectArgs),
    /// Full pipeline: cohort, selection, mining, ranked rules.
    Mine(MineArgs),
    /// Write a synthetic patient cohort as CSV.
    Synth(SynthArgs),
    /// Cross-check Apriori against brute-force enumeration.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// `all`, `deceased`, `recovered` or `age:LO-HI` (half-open).
    #[arg(long, default_value = "all", value_parser = parse_cohort)]
    pub cohort: CohortSelector,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FreqArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SelectionArgs {
    /// Frequency a symptom must exceed over the cohort.
    #[arg(long, default_value_t = pipeline::ALL_PATIENTS_THRESHOLD, value_parser = parse_fraction)]
    pub feature_threshold: f64,

    /// Frequency a symptom must exceed among deceased patients.
    #[arg(long, default_value_t = pipeline::DECEASED_THRESHOLD, value_parser = parse_fraction)]
    pub deceased_threshold: f64,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub selection: SelectionArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeriveItem {
    Age,
    Sex,
    Outcome,
    Lab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Md,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
            OutputFormat::Md => Format::Markdown,
        }
    }
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value_t = 0.001, value_parser = parse_fraction)]
    pub min_support: f64,

    #[arg(long, default_value_t = 0.0, value_parser = parse_fraction)]
    pub min_confidence: f64,

    /// Rules need lift strictly above this.
    #[arg(long, default_value_t = 1.0, value_parser = parse_non_negative)]
    pub min_lift: f64,
}

#[derive(Debug, Args)]
pub struct TransactionArgs {
    /// Skip feature selection and keep every symptom column.
    #[arg(long)]
    pub no_select: bool,

    #[command(flatten)]
    pub selection: SelectionArgs,

    /// Derived items to add to each transaction.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub derive: Vec<DeriveItem>,

    /// Drop patients with fewer than this many selected symptoms.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub min_symptoms: Option<u32>,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub transactions: TransactionArgs,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,

    /// Largest itemset size to mine.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_len: Option<u32>,

    /// Keep only rules with exactly this consequent (comma-separated item names).
    #[arg(long, value_delimiter = ',')]
    pub target: Vec<String>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    /// Decimal places for csv and md output.
    #[arg(long, default_value_t = DEFAULT_DECIMALS as u32, value_parser = clap::value_parser!(u32).range(0..=12))]
    pub decimals: u32,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 2875)]
    pub n: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 0.24, value_parser = parse_fraction)]
    pub mortality: f64,

    #[arg(long, default_value_t = 0.59, value_parser = parse_fraction)]
    pub male_fraction: f64,

    /// Weights for the <20, 20-40, 40-60 and >60 age groups.
    #[arg(long, value_delimiter = ',', num_args = 4, value_parser = parse_non_negative)]
    pub age_weights: Option<Vec<f64>>,

    /// Symptom column with its frequency, `NAME:FRACTION`. Repeatable.
    #[arg(long = "marginal", value_name = "NAME:FRACTION")]
    pub marginals: Vec<String>,

    /// Planted co-occurrence, `A,B:JOINT`. Repeatable.
    #[arg(long = "pair", value_name = "A,B:JOINT")]
    pub pairs: Vec<String>,

    /// Emit a `lab_result` column with this positive fraction.
    #[arg(long, value_parser = parse_fraction)]
    pub lab_positive: Option<f64>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Patient CSV to cross-check; mutually exclusive with `--random`.
    #[arg(
        long,
        value_name = "PATH",
        conflicts_with = "random",
        required_unless_present = "random"
    )]
    pub input: Option<PathBuf>,

    #[arg(long, default_value = "all", value_parser = parse_cohort)]
    pub cohort: CohortSelector,

    #[command(flatten)]
    pub transactions: TransactionArgs,

    #[command(flatten)]
    pub thresholds: ThresholdArgs,

    /// Cross-check this many random transaction sets instead of a file.
    #[arg(long, value_name = "CASES")]
    pub random: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=24))]
    pub max_items: u32,

    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_transactions: u32,
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn parse_non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be a non-negative number"))
    }
}

fn parse_cohort(s: &str) -> Result<CohortSelector, String> {
    s.parse().map_err(|e: armine_core::Error| e.to_string())
}

/// Splices `key=value` lines from `--config` into the argument list, right
/// after the subcommand name. Keys already given on the command line are
/// skipped so explicit flags take precedence.
pub fn expand_config(args: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let strings: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut path = None;
    for (i, a) in strings.iter().enumerate() {
        if a == "--config" {
            path = strings.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let Some(sub_pos) = strings
        .iter()
        .position(|a| matches!(a.as_str(), "freq" | "select" | "mine" | "synth" | "verify"))
    else {
        return Ok(args);
    };
    let sub = Cli::command();
    let sub = sub
        .find_subcommand(&strings[sub_pos])
        .expect("known subcommand")
        .clone();

    let text = fs::read_to_string(&path).with_context(|| format!("cannot read config file `{path}`"))?;
    let given: Vec<&str> = strings
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a))
        .collect();

    let mut injected = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{path}:{}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if given.contains(&key) {
            continue;
        }
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key))
            .ok_or_else(|| anyhow!("{path}:{}: unknown option `{key}`", lineno + 1))?;
        if arg.get_action().takes_values() {
            injected.push(OsString::from(format!("--{key}")));
            injected.push(OsString::from(value));
        } else {
            match value {
                "true" => injected.push(OsString::from(format!("--{key}"))),
                "false" => {}
                _ => bail!("{path}:{}: `{key}` expects true or false", lineno + 1),
            }
        }
    }
    let mut out = args;
    out.splice(sub_pos + 1..sub_pos + 1, injected);
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{rendered}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_DATA
        }
    }
}

fn read_table(path: &Path) -> anyhow::Result<PatientTable> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read input `{}`", path.display()))?;
    parse_patient_csv(&text).with_context(|| format!("invalid input `{}`", path.display()))
}

fn emit(output: &OutputArgs, stdout: &mut dyn Write, body: &str) -> anyhow::Result<()> {
    match &output.output {
        Some(path) => fs::write(path, body).with_context(|| format!("cannot write `{}`", path.display())),
        None => stdout.write_all(body.as_bytes()).context("cannot write to stdout"),
    }
}

fn derivation(items: &[DeriveItem]) -> DerivationConfig {
    DerivationConfig {
        age_buckets: items.contains(&DeriveItem::Age),
        sex: items.contains(&DeriveItem::Sex),
        outcome: items.contains(&DeriveItem::Outcome),
        lab: items.contains(&DeriveItem::Lab),
    }
}

fn mining_config(t: &ThresholdArgs, max_len: Option<u32>) -> MiningConfig {
    MiningConfig {
        min_support: t.min_support,
        min_confidence: t.min_confidence,
        min_lift: t.min_lift,
        max_len: max_len.map(|m| m as usize),
        target_consequent: None,
    }
}

fn pipeline_config(cohort: CohortSelector, tx: &TransactionArgs, mining: MiningConfig) -> PipelineConfig {
    PipelineConfig {
        cohort,
        select: !tx.no_select,
        feature_threshold: tx.selection.feature_threshold,
        deceased_threshold: tx.selection.deceased_threshold,
        derive: derivation(&tx.derive),
        min_symptoms: tx.min_symptoms.map(|m| m as usize),
        mining,
        target: None,
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Freq(args) => {
            let table = filter_cohort(&read_table(&args.input.input)?, args.input.cohort)?;
            let cfg = DerivationConfig::symptoms_only();
            let ts = derive_items(&table, &cfg, &catalog_for(&table, &cfg)?)?;
            let freq = item_frequencies(&ts).context("cohort has no patients")?;
            emit(&args.output, stdout, &frequency_csv(&freq)?)?;
        }
        Command::Select(args) => {
            let table = filter_cohort(&read_table(&args.input.input)?, args.input.cohort)?;
            let cfg = PipelineConfig {
                feature_threshold: args.selection.feature_threshold,
                deceased_threshold: args.selection.deceased_threshold,
                ..Default::default()
            };
            let names = pipeline::select_feature_names(&table, &cfg).context("cohort has no patients")?;
            let mut body = String::from("item\n");
            for n in names {
                body.push_str(&n);
                body.push('\n');
            }
            emit(&args.output, stdout, &body)?;
        }
        Command::Mine(args) => {
            let table = read_table(&args.input.input)?;
            let mut cfg = pipeline_config(
                args.input.cohort,
                &args.transactions,
                mining_config(&args.thresholds, args.max_len),
            );
            if !args.target.is_empty() {
                cfg.target = Some(args.target.clone());
            }
            let run = pipeline::run(&table, &cfg)?;
            let body = emit_report(
                &run.rules,
                run.transactions.catalog(),
                args.format.into(),
                args.decimals as usize,
            )?;
            emit(&args.output, stdout, &body)?;
        }
        Command::Synth(args) => {
            let mut spec = CohortSpec::new(args.n, args.seed);
            spec.mortality = args.mortality;
            spec.male_fraction = args.male_fraction;
            spec.lab_positive = args.lab_positive;
            if let Some(w) = &args.age_weights {
                spec.age_weights = [w[0], w[1], w[2], w[3]];
            }
            for m in &args.marginals {
                spec.marginals.push(parse_marginal(m)?);
            }
            for p in &args.pairs {
                spec.planted_pairs.push(parse_pair(p)?);
            }
            let table = generate_cohort(&spec)?;
            emit(&args.output, stdout, &table.to_csv())?;
        }
        Command::Verify(args) => return verify(args, stdout, stderr),
    }
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    let mining = mining_config(&args.thresholds, None);
    if let Some(cases) = args.random {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut failures = 0;
        for case in 0..cases {
            let ts = random_transactions(&mut rng, args.max_items as usize, args.max_transactions as usize);
            let min_support = f64::from(rng.gen_range(1u32..=10)) * 0.05;
            let cfg = MiningConfig {
                min_support,
                ..mining.clone()
            };
            let v = pipeline::verify(&ts, &cfg)?;
            if !v.passed() {
                failures += 1;
                writeln!(stderr, "case {case}: mismatch at min_support {min_support}: {v:?}")?;
            }
        }
        writeln!(stdout, "random cases: {cases}, mismatches: {failures}")?;
        return Ok(if failures == 0 { EXIT_OK } else { EXIT_DATA });
    }

    let path = args.input.expect("clap requires --input without --random");
    let table = read_table(&path)?;
    let cfg = pipeline_config(args.cohort, &args.transactions, mining.clone());
    let (_, ts) = pipeline::prepare(&table, &cfg)?;
    let v = pipeline::verify(&ts, &mining)?;
    let verdict = |ok: bool| if ok { "match" } else { "MISMATCH" };
    writeln!(
        stdout,
        "frequent itemsets: {} (oracle {}) {}",
        v.frequent_itemsets,
        v.oracle_frequent_itemsets,
        verdict(v.frequent_match)
    )?;
    writeln!(
        stdout,
        "rules: {} (oracle {}) {}",
        v.rules,
        v.oracle_rules,
        verdict(v.rules_match)
    )?;
    Ok(if v.passed() { EXIT_OK } else { EXIT_DATA })
}

/// Random transaction set with 1..=max_items items and 1..=max_transactions rows.
pub fn random_transactions(rng: &mut ChaCha8Rng, max_items: usize, max_transactions: usize) -> TransactionSet {
    let n_items = rng.gen_range(1..=max_items);
    let n_rows = rng.gen_range(1..=max_transactions);
    let density: f64 = rng.gen_range(0.1..0.9);
    let catalog = ItemCatalog::from_names((0..n_items).map(|i| format!("i{i}"))).expect("distinct names");
    let rows: Vec<Vec<ItemId>> = (0..n_rows)
        .map(|_| {
            (0..n_items as u32)
                .filter(|_| rng.gen::<f64>() < density)
                .map(ItemId)
                .collect()
        })
        .collect();
    TransactionSet::from_rows(catalog, &rows).expect("ids within catalog")
}
