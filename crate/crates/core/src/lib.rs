//! Frequent-itemset and association-rule mining for binary patient tables.
//!
//! The pipeline turns a patient CSV into one transaction per patient
//! (present symptoms plus optional age, sex, outcome and lab items), selects
//! the symptoms that clear a frequency threshold, mines frequent itemsets
//! level by level with Apriori, and ranks the resulting rules by support and
//! then confidence.
//!
//! ```
//! use armine_core::{generate_rules, mine_frequent, MiningConfig, RuleSet, TransactionSet};
//!
//! let ts = TransactionSet::from_named_rows(&[
//!     vec!["fever", "cough"],
//!     vec!["fever", "cough", "apnea"],
//!     vec!["apnea"],
//!     vec!["fever", "cough"],
//! ]);
//! let cfg = MiningConfig { min_support: 0.5, ..Default::default() };
//! let frequent = mine_frequent(&ts, &cfg).unwrap();
//! let rules: RuleSet = generate_rules(&frequent, &cfg).unwrap();
//! assert_eq!(rules.len(), 2); // fever => cough and cough => fever
//! ```
//!
//! Metric types are generic over [`Scalar`]; the aliases below name the
//! common instantiations.

pub mod apriori;
pub mod cover;
pub mod error;
pub mod features;
pub mod ingest;
pub mod itemset;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod rules;
pub mod scalar;
pub mod synth;
pub mod transactions;

pub use apriori::{
    count_support, generate_candidates, min_support_count, mine_frequent, FrequentItemsets, MiningConfig,
};
pub use cover::Cover;
pub use error::{Error, Result};
pub use features::{item_frequencies, project, select_features, union_features, FrequencyMap};
pub use ingest::{
    catalog_for, derive_items, drop_sparse_patients, filter_cohort, parse_patient_csv, CohortSelector,
    DerivationConfig, PatientTable,
};
pub use itemset::{canonical_itemset, ItemCatalog, ItemId, Itemset};
pub use oracle::{brute_frequent, brute_rules};
pub use report::{emit_report, Format};
pub use rules::{dedup_rules, filter_rules, generate_rules, metrics, sort_rules, MetricSet, Rule, RuleCounts, RuleSet};
pub use scalar::{Rational, Scalar};
pub use synth::{generate_cohort, CohortSpec};
pub use transactions::{SupportRatio, TransactionSet};

pub type MetricSetF32 = MetricSet<f32>;
pub type MetricSetF64 = MetricSet<f64>;
pub type ExactMetricSet = MetricSet<Rational>;

pub type RuleF32 = Rule<f32>;
pub type RuleF64 = Rule<f64>;
pub type ExactRule = Rule<Rational>;

pub type RuleSetF32 = RuleSet<f32>;
pub type RuleSetF64 = RuleSet<f64>;
pub type ExactRuleSet = RuleSet<Rational>;
