//! Frequency-threshold feature selection.

use crate::error::{Error, Result};
use crate::itemset::{ItemCatalog, ItemId, Itemset};
use crate::transactions::{SupportRatio, TransactionSet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency {
    pub id: ItemId,
    pub count: u64,
    pub fraction: f64,
}

/// Single-item frequencies for every catalog item, indexed by id.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyMap {
    catalog: ItemCatalog,
    n_transactions: u64,
    entries: Vec<Frequency>,
}

impl FrequencyMap {
    /// Builds from raw per-item counts (one per catalog item, in id order).
    pub fn from_counts(catalog: ItemCatalog, n_transactions: u64, counts: &[u64]) -> Result<Self> {
        if n_transactions == 0 {
            return Err(Error::UndefinedSupport);
        }
        if counts.len() != catalog.len() {
            return Err(Error::Contract(format!(
                "{} counts for {} catalog items",
                counts.len(),
                catalog.len()
            )));
        }
        if let Some(&c) = counts.iter().find(|&&c| c > n_transactions) {
            return Err(Error::Contract(format!(
                "count {c} exceeds {n_transactions} transactions"
            )));
        }
        let entries = counts
            .iter()
            .enumerate()
            .map(|(i, &count)| Frequency {
                id: ItemId(i as u32),
                count,
                fraction: SupportRatio {
                    count,
                    n: n_transactions,
                }
                .to_f64(),
            })
            .collect();
        Ok(FrequencyMap {
            catalog,
            n_transactions,
            entries,
        })
    }

    pub fn catalog(&self) -> &ItemCatalog {
        &self.catalog
    }

    pub fn n_transactions(&self) -> u64 {
        self.n_transactions
    }

    pub fn get(&self, id: ItemId) -> Option<&Frequency> {
        self.entries.get(id.index())
    }

    pub fn by_name(&self, name: &str) -> Result<&Frequency> {
        let id = self.catalog.id(name)?;
        Ok(&self.entries[id.index()])
    }

    /// Entries in id order.
    pub fn entries(&self) -> &[Frequency] {
        &self.entries
    }

    /// Entries by descending fraction, ties by ascending id.
    pub fn ranked(&self) -> Vec<Frequency> {
        let mut out = self.entries.clone();
        out.sort_by(|a, b| b.count.cmp(&a.count).then(a.id.cmp(&b.id)));
        out
    }
}

pub fn item_frequencies(ts: &TransactionSet) -> Result<FrequencyMap> {
    if ts.is_empty() {
        return Err(Error::UndefinedSupport);
    }
    let counts: Vec<u64> = ts
        .item_ids()
        .map(|id| ts.cover(id).map(|c| c.count()))
        .collect::<Result<_>>()?;
    FrequencyMap::from_counts(ts.catalog().clone(), ts.n_transactions() as u64, &counts)
}

/// Items whose frequency is strictly above `threshold`, most frequent first.
pub fn select_features(freq: &FrequencyMap, threshold: f64) -> Result<Vec<ItemId>> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::Config(format!("feature threshold {threshold} outside [0, 1]")));
    }
    let mut kept: Vec<&Frequency> = freq.entries.iter().filter(|f| f.fraction > threshold).collect();
    kept.sort_by(|a, b| {
        b.fraction
            .partial_cmp(&a.fraction)
            .expect("fractions are finite")
            .then(a.id.cmp(&b.id))
    });
    Ok(kept.into_iter().map(|f| f.id).collect())
}

/// Order-preserving union: all of `a`, then the items of `b` not already present.
pub fn union_features<T: PartialEq + Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = a.to_vec();
    for x in b {
        if !out.contains(x) {
            out.push(x.clone());
        }
    }
    out
}

/// Restricts `ts` to the given items. Transactions are kept (possibly empty).
///
/// Retained items keep their relative catalog order and are renumbered
/// densely, so the result does not depend on the order of `features`.
pub fn project(ts: &TransactionSet, features: &[ItemId]) -> Result<TransactionSet> {
    for id in features {
        ts.cover(*id)?;
    }
    let keep = Itemset::new(features.to_vec());
    let catalog = ItemCatalog::from_names(
        keep.iter()
            .map(|id| ts.catalog().name(id).map(str::to_string))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let covers = keep
        .iter()
        .map(|id| ts.cover(id).cloned())
        .collect::<Result<Vec<_>>>()?;
    Ok(TransactionSet::from_parts(catalog, ts.n_transactions(), covers))
}
