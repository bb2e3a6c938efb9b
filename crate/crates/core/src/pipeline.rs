//! End-to-end mining runs: cohort split, dual-threshold feature selection,
//! projection, optional sparse-patient removal, mining and rule generation.

use crate::apriori::{mine_frequent, FrequentItemsets, MiningConfig};
use crate::error::Result;
use crate::features::{item_frequencies, project, select_features, union_features};
use crate::ingest::{
    catalog_for, derive_items, drop_sparse_patients, filter_cohort, CohortSelector, Column, DerivationConfig,
    PatientTable,
};
use crate::itemset::Itemset;
use crate::oracle::{brute_frequent, brute_rules};
use crate::rules::{generate_rules, RuleSet};
use crate::transactions::TransactionSet;

pub const ALL_PATIENTS_THRESHOLD: f64 = 0.15;
pub const DECEASED_THRESHOLD: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub cohort: CohortSelector,
    /// Run frequency-threshold feature selection; otherwise keep every symptom.
    pub select: bool,
    pub feature_threshold: f64,
    pub deceased_threshold: f64,
    pub derive: DerivationConfig,
    /// Drop transactions with fewer selected symptoms than this.
    pub min_symptoms: Option<usize>,
    /// Thresholds for mining. `target_consequent` is ignored in favour of
    /// [`PipelineConfig::target`], since ids are only known after projection.
    pub mining: MiningConfig,
    pub target: Option<Vec<String>>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            cohort: CohortSelector::All,
            select: true,
            feature_threshold: ALL_PATIENTS_THRESHOLD,
            deceased_threshold: DECEASED_THRESHOLD,
            derive: DerivationConfig::symptoms_only(),
            min_symptoms: None,
            mining: MiningConfig::default(),
            target: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MiningRun {
    pub features: Vec<String>,
    pub transactions: TransactionSet,
    pub frequent: FrequentItemsets,
    pub rules: RuleSet<f64>,
}

fn symptom_transactions(table: &PatientTable) -> Result<TransactionSet> {
    let cfg = DerivationConfig::symptoms_only();
    derive_items(table, &cfg, &catalog_for(table, &cfg)?)
}

fn selected_names(table: &PatientTable, threshold: f64) -> Result<Vec<String>> {
    let ts = symptom_transactions(table)?;
    let freq = item_frequencies(&ts)?;
    select_features(&freq, threshold)?
        .into_iter()
        .map(|id| ts.catalog().name(id).map(str::to_string))
        .collect()
}

/// Symptoms above `feature_threshold` over `table`, unioned with those above
/// `deceased_threshold` among its deceased patients (when outcomes are known).
pub fn select_feature_names(table: &PatientTable, cfg: &PipelineConfig) -> Result<Vec<String>> {
    let all = selected_names(table, cfg.feature_threshold)?;
    if !table.has_column(&Column::Outcome) {
        return Ok(all);
    }
    let deceased = filter_cohort(table, CohortSelector::Deceased)?;
    if deceased.is_empty() {
        return Ok(all);
    }
    let dead = selected_names(&deceased, cfg.deceased_threshold)?;
    Ok(union_features(&all, &dead))
}

/// Builds the mining substrate for `table` under `cfg`: cohort rows, selected
/// symptoms plus derived items, sparse patients removed.
pub fn prepare(table: &PatientTable, cfg: &PipelineConfig) -> Result<(Vec<String>, TransactionSet)> {
    let cohort = filter_cohort(table, cfg.cohort)?;
    let features = if cfg.select {
        select_feature_names(&cohort, cfg)?
    } else {
        cohort.symptom_names().to_vec()
    };
    let catalog = catalog_for(&cohort, &cfg.derive)?;
    let full = derive_items(&cohort, &cfg.derive, &catalog)?;
    let mut keep = features.iter().map(|n| catalog.id(n)).collect::<Result<Vec<_>>>()?;
    for name in cfg.derive.item_names() {
        keep.push(catalog.id(name)?);
    }
    let mut ts = project(&full, &keep)?;
    if let Some(min) = cfg.min_symptoms {
        let clinical = ts.catalog().itemset(&features)?;
        ts = drop_sparse_patients(&ts, &clinical, min)?;
    }
    Ok((features, ts))
}

fn resolve_target(ts: &TransactionSet, cfg: &PipelineConfig) -> Result<MiningConfig> {
    let mut mining = cfg.mining.clone();
    mining.target_consequent = match &cfg.target {
        Some(names) => Some(ts.catalog().itemset(names)?),
        None => None,
    };
    Ok(mining)
}

pub fn run(table: &PatientTable, cfg: &PipelineConfig) -> Result<MiningRun> {
    let (features, transactions) = prepare(table, cfg)?;
    let mining = resolve_target(&transactions, cfg)?;
    let frequent = mine_frequent(&transactions, &mining)?;
    let rules = generate_rules(&frequent, &mining)?;
    Ok(MiningRun {
        features,
        transactions,
        frequent,
        rules,
    })
}

/// Outcome of cross-checking the Apriori path against the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub frequent_itemsets: usize,
    pub oracle_frequent_itemsets: usize,
    pub rules: usize,
    pub oracle_rules: usize,
    pub frequent_match: bool,
    pub rules_match: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.frequent_match && self.rules_match
    }
}

pub fn verify(ts: &TransactionSet, mining: &MiningConfig) -> Result<Verification> {
    let apriori_cfg = MiningConfig {
        max_len: None,
        ..mining.clone()
    };
    let fast = mine_frequent(ts, &apriori_cfg)?;
    let slow = brute_frequent(ts, mining.min_support)?;
    let fast_rules: RuleSet = generate_rules(&fast, &apriori_cfg)?;
    let slow_rules: RuleSet = brute_rules(ts, &apriori_cfg)?;
    Ok(Verification {
        frequent_itemsets: fast.len(),
        oracle_frequent_itemsets: slow.len(),
        rules: fast_rules.len(),
        oracle_rules: slow_rules.len(),
        frequent_match: fast == slow,
        rules_match: fast_rules == slow_rules,
    })
}

/// Resolves consequent names against a transaction set's catalog.
pub fn target_itemset(ts: &TransactionSet, names: &[String]) -> Result<Itemset> {
    ts.catalog().itemset(names)
}
