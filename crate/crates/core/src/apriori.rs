//! Level-wise Apriori mining over the vertical transaction store.
//!
//! Level k candidates come from joining frequent (k-1)-itemsets that share
//! their first k-2 items, then pruning any candidate with an infrequent
//! (k-1)-subset. The cover of a candidate is the intersection of its two
//! parents' covers, so each level only keeps the covers of the level below.

use std::collections::{BTreeMap, HashSet};

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::itemset::{ItemId, Itemset};
use crate::transactions::{SupportRatio, TransactionSet};

/// Absolute slack used when `min_support * n` should land on an integer.
pub const COUNT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MiningConfig {
    pub min_support: f64,
    pub min_confidence: f64,
    /// Rules need lift strictly above this.
    pub min_lift: f64,
    /// Largest itemset size to mine; `None` mines until a level is empty.
    pub max_len: Option<usize>,
    /// Keep only rules whose consequent is exactly this itemset.
    pub target_consequent: Option<Itemset>,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            min_support: 0.001,
            min_confidence: 0.0,
            min_lift: 1.0,
            max_len: None,
            target_consequent: None,
        }
    }
}

impl MiningConfig {
    pub fn validate(&self) -> Result<()> {
        let fraction = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} {v} outside [0, 1]")))
            }
        };
        fraction("min_support", self.min_support)?;
        fraction("min_confidence", self.min_confidence)?;
        if self.min_lift.is_nan() || self.min_lift < 0.0 {
            return Err(Error::Config(format!(
                "min_lift {} must be non-negative",
                self.min_lift
            )));
        }
        if self.max_len == Some(0) {
            return Err(Error::Config("max_len must be positive".into()));
        }
        if self.target_consequent.as_ref().is_some_and(Itemset::is_empty) {
            return Err(Error::Config("target consequent must be non-empty".into()));
        }
        Ok(())
    }
}

/// Smallest transaction count that satisfies `support >= min_support`.
///
/// Computed in integer terms so that, e.g., 0.05 * 20 is treated as exactly 1.
pub fn min_support_count(min_support: f64, n_transactions: u64) -> u64 {
    let exact = min_support * n_transactions as f64;
    let nearest = exact.round();
    if (exact - nearest).abs() <= COUNT_TOLERANCE {
        nearest as u64
    } else {
        exact.ceil() as u64
    }
}

/// Frequent itemsets grouped by size, each with its exact support count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequentItemsets {
    n_transactions: u64,
    /// `levels[k - 1]` holds the frequent k-itemsets.
    levels: Vec<BTreeMap<Itemset, u64>>,
}

impl FrequentItemsets {
    /// Groups `(itemset, count)` pairs by size. Trailing empty levels are dropped.
    pub fn from_counts<I>(n_transactions: u64, counts: I) -> Self
    where
        I: IntoIterator<Item = (Itemset, u64)>,
    {
        let mut levels: Vec<BTreeMap<Itemset, u64>> = Vec::new();
        for (set, count) in counts {
            if set.is_empty() {
                continue;
            }
            let k = set.len();
            if levels.len() < k {
                levels.resize_with(k, BTreeMap::new);
            }
            levels[k - 1].insert(set, count);
        }
        while levels.last().is_some_and(BTreeMap::is_empty) {
            levels.pop();
        }
        FrequentItemsets { n_transactions, levels }
    }

    pub fn n_transactions(&self) -> u64 {
        self.n_transactions
    }

    pub fn levels(&self) -> &[BTreeMap<Itemset, u64>] {
        &self.levels
    }

    /// Frequent itemsets of size `k` (empty map past the last level).
    pub fn level(&self, k: usize) -> Option<&BTreeMap<Itemset, u64>> {
        k.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    /// Support count; the empty itemset counts every transaction.
    pub fn count(&self, set: &Itemset) -> Option<u64> {
        if set.is_empty() {
            return Some(self.n_transactions);
        }
        self.level(set.len())?.get(set).copied()
    }

    pub fn support(&self, set: &Itemset) -> Option<SupportRatio> {
        self.count(set).map(|count| SupportRatio {
            count,
            n: self.n_transactions,
        })
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All itemsets, by size then canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Itemset, u64)> {
        self.levels.iter().flat_map(|l| l.iter().map(|(s, &c)| (s, c)))
    }

    /// True when every (k-1)-subset of every stored k-itemset is stored too.
    pub fn is_downward_closed(&self) -> bool {
        self.iter().all(|(set, count)| {
            set.len() == 1 || (0..set.len()).all(|i| self.count(&set.without_index(i)).is_some_and(|c| c >= count))
        })
    }
}

/// Index pairs `(i, j)` of `sorted` whose itemsets share all but the last item.
fn prefix_join_pairs(sorted: &[Itemset]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let k = sorted[start].len();
        let prefix = &sorted[start].as_slice()[..k - 1];
        let mut end = start + 1;
        while end < sorted.len() && &sorted[end].as_slice()[..k - 1] == prefix {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                pairs.push((i, j));
            }
        }
        start = end;
    }
    pairs
}

fn joined(a: &Itemset, b: &Itemset) -> Itemset {
    let mut items: Vec<ItemId> = a.as_slice().to_vec();
    items.push(*b.as_slice().last().expect("non-empty"));
    Itemset::from_sorted_unchecked(items)
}

/// The two subsets obtained by dropping the last or second-to-last item are
/// the join parents, so only the remaining k-2 subsets need checking.
fn survives_prune(candidate: &Itemset, frequent: &HashSet<&Itemset>) -> bool {
    let k = candidate.len();
    (0..k.saturating_sub(2)).all(|i| frequent.contains(&candidate.without_index(i)))
}

/// Apriori join + prune over frequent (k-1)-itemsets.
pub fn generate_candidates(frequent_prev: &[Itemset]) -> Result<Vec<Itemset>> {
    let Some(first) = frequent_prev.first() else {
        return Ok(Vec::new());
    };
    let k_prev = first.len();
    if k_prev == 0 || frequent_prev.iter().any(|s| s.len() != k_prev) {
        return Err(Error::Contract(
            "candidate generation needs non-empty itemsets of one size".into(),
        ));
    }
    let mut sorted = frequent_prev.to_vec();
    sorted.sort();
    sorted.dedup();
    let lookup: HashSet<&Itemset> = sorted.iter().collect();
    Ok(prefix_join_pairs(&sorted)
        .into_iter()
        .map(|(i, j)| joined(&sorted[i], &sorted[j]))
        .filter(|c| survives_prune(c, &lookup))
        .collect())
}

/// Exact support count of each candidate by cover intersection.
pub fn count_support(ts: &TransactionSet, candidates: &[Itemset]) -> Result<BTreeMap<Itemset, u64>> {
    candidates.iter().map(|c| Ok((c.clone(), ts.count_of(c)?))).collect()
}

pub fn mine_frequent(ts: &TransactionSet, cfg: &MiningConfig) -> Result<FrequentItemsets> {
    cfg.validate()?;
    if ts.is_empty() {
        return Err(Error::UndefinedSupport);
    }
    let n = ts.n_transactions() as u64;
    let min_count = min_support_count(cfg.min_support, n);
    let max_len = cfg.max_len.unwrap_or(usize::MAX);

    let mut current: Vec<(Itemset, Cover)> = Vec::new();
    for id in ts.item_ids() {
        let cover = ts.cover(id)?;
        if cover.count() >= min_count {
            current.push((Itemset::from_sorted_unchecked(vec![id]), cover.clone()));
        }
    }

    let mut levels = Vec::new();
    let mut k = 1;
    while !current.is_empty() {
        levels.push(
            current
                .iter()
                .map(|(s, c)| (s.clone(), c.count()))
                .collect::<BTreeMap<_, _>>(),
        );
        if k >= max_len {
            break;
        }
        current = next_level(&current, min_count);
        k += 1;
    }
    Ok(FrequentItemsets {
        n_transactions: n,
        levels,
    })
}

/// `prev` is in canonical order, which `next_level` preserves.
fn next_level(prev: &[(Itemset, Cover)], min_count: u64) -> Vec<(Itemset, Cover)> {
    let sets: Vec<Itemset> = prev.iter().map(|(s, _)| s.clone()).collect();
    let lookup: HashSet<&Itemset> = sets.iter().collect();
    let mut next = Vec::new();
    for (i, j) in prefix_join_pairs(&sets) {
        let candidate = joined(&sets[i], &sets[j]);
        if !survives_prune(&candidate, &lookup) {
            continue;
        }
        let (a, b) = (&prev[i].1, &prev[j].1);
        if a.intersection_count(b) >= min_count {
            next.push((candidate, a.intersection(b)));
        }
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> TransactionSet {
        TransactionSet::from_named_rows(&[vec!["A", "B"], vec!["A", "C"], vec!["A", "B"], vec!["B"]])
    }

    fn cfg(min_support: f64) -> MiningConfig {
        MiningConfig {
            min_support,
            ..Default::default()
        }
    }

    fn sets(v: &[&[u32]]) -> Vec<Itemset> {
        v.iter().map(|s| Itemset::from_ids(s.iter().copied())).collect()
    }

    #[test]
    fn toy_mining() {
        let fi = mine_frequent(&toy(), &cfg(0.5)).unwrap();
        let got: Vec<(Vec<u32>, u64)> = fi.iter().map(|(s, c)| (s.iter().map(|id| id.0).collect(), c)).collect();
        // A=0, B=1, C=2
        assert_eq!(got, vec![(vec![0], 3), (vec![1], 3), (vec![0, 1], 2)]);
        assert!(fi.is_downward_closed());
    }

    #[test]
    fn full_support_needs_universal_item() {
        let fi = mine_frequent(&toy(), &cfg(1.0)).unwrap();
        assert!(fi.is_empty());
        assert!(fi.levels().is_empty());
    }

    #[test]
    fn max_len_caps_levels() {
        let c = MiningConfig {
            max_len: Some(1),
            ..cfg(0.25)
        };
        let fi = mine_frequent(&toy(), &c).unwrap();
        assert_eq!(fi.levels().len(), 1);
        assert_eq!(fi.len(), 3);
    }

    #[test]
    fn empty_transactions_rejected() {
        let ts = toy().retain_transactions(&[]).unwrap();
        assert_eq!(mine_frequent(&ts, &cfg(0.5)), Err(Error::UndefinedSupport));
    }

    #[test]
    fn invalid_config_rejected() {
        assert!(mine_frequent(&toy(), &cfg(1.5)).is_err());
        assert!(mine_frequent(
            &toy(),
            &MiningConfig {
                max_len: Some(0),
                ..cfg(0.5)
            }
        )
        .is_err());
        assert!(MiningConfig {
            min_lift: -1.0,
            ..cfg(0.5)
        }
        .validate()
        .is_err());
        assert!(MiningConfig {
            min_lift: f64::NAN,
            ..cfg(0.5)
        }
        .validate()
        .is_err());
    }

    #[test]
    fn candidate_examples() {
        // A=0 B=1 C=2 D=3
        assert_eq!(
            generate_candidates(&sets(&[&[0, 1], &[0, 2], &[1, 2]])).unwrap(),
            sets(&[&[0, 1, 2]])
        );
        assert!(generate_candidates(&sets(&[&[0, 1], &[2, 3]])).unwrap().is_empty());
        assert!(generate_candidates(&sets(&[&[0, 1], &[0, 2]])).unwrap().is_empty());
        assert_eq!(
            generate_candidates(&sets(&[&[0], &[2], &[1]])).unwrap(),
            sets(&[&[0, 1], &[0, 2], &[1, 2]])
        );
        assert!(generate_candidates(&[]).unwrap().is_empty());
    }

    #[test]
    fn mixed_sizes_violate_contract() {
        assert!(matches!(
            generate_candidates(&sets(&[&[0, 1], &[2]])),
            Err(Error::Contract(_))
        ));
        assert!(matches!(generate_candidates(&sets(&[&[]])), Err(Error::Contract(_))));
    }

    #[test]
    fn count_support_examples() {
        let ts = toy();
        let counts = count_support(&ts, &sets(&[&[0, 1], &[0, 2]])).unwrap();
        assert_eq!(counts[&Itemset::from_ids([0, 1])], 2);
        assert_eq!(counts[&Itemset::from_ids([0, 2])], 1);
        assert_eq!(count_support(&ts, &[Itemset::empty()]).unwrap()[&Itemset::empty()], 4);
        let ts2 = TransactionSet::from_rows(
            crate::itemset::ItemCatalog::from_names(["A", "Z"]).unwrap(),
            &[vec![ItemId(0)]],
        )
        .unwrap();
        assert_eq!(
            count_support(&ts2, &sets(&[&[0, 1]])).unwrap()[&Itemset::from_ids([0, 1])],
            0
        );
        assert_eq!(count_support(&ts, &sets(&[&[0, 9]])), Err(Error::InvalidItem(9)));
    }

    #[test]
    fn support_count_threshold() {
        assert_eq!(min_support_count(0.5, 4), 2);
        assert_eq!(min_support_count(0.05, 20), 1);
        assert_eq!(min_support_count(0.3, 10), 3);
        assert_eq!(min_support_count(0.001, 2875), 3);
        assert_eq!(min_support_count(0.0, 10), 0);
        assert_eq!(min_support_count(1.0, 7), 7);
        assert_eq!(min_support_count(0.26, 10), 3);
    }

    #[test]
    fn frequent_itemsets_from_counts_groups_by_size() {
        let fi = FrequentItemsets::from_counts(
            4,
            vec![
                (Itemset::from_ids([0, 1]), 2),
                (Itemset::from_ids([0]), 3),
                (Itemset::empty(), 4),
            ],
        );
        assert_eq!(fi.levels().len(), 2);
        assert_eq!(fi.count(&Itemset::empty()), Some(4));
        assert_eq!(fi.count(&Itemset::from_ids([1])), None);
        assert!(!fi.is_downward_closed());
    }
}
