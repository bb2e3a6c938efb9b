//! Brute-force reference miner.
//!
//! Enumerates every non-empty itemset as a bitmask and counts it with a full
//! row scan. Nothing here goes through the cover index or the Apriori
//! threshold helper, so disagreements point at the fast path.

use crate::apriori::{FrequentItemsets, MiningConfig};
use crate::error::{Error, Result};
use crate::itemset::{ItemId, Itemset};
use crate::rules::{dedup_rules, sort_rules, Rule, RuleCounts, RuleSet};
use crate::scalar::Scalar;
use crate::transactions::TransactionSet;

/// Largest item alphabet the oracle will enumerate (2^24 − 1 itemsets).
pub const MAX_ORACLE_ITEMS: usize = 24;

fn row_masks(ts: &TransactionSet) -> Result<Vec<u32>> {
    if ts.n_items() > MAX_ORACLE_ITEMS {
        return Err(Error::Capacity {
            n_items: ts.n_items(),
            limit: MAX_ORACLE_ITEMS,
        });
    }
    Ok((0..ts.n_transactions())
        .map(|t| ts.row(t).iter().fold(0u32, |m, id| m | 1 << id.0))
        .collect())
}

/// Count for every mask in `0..2^n_items` by direct scan.
fn count_table(rows: &[u32], n_items: usize) -> Vec<u64> {
    (0..1u32 << n_items)
        .map(|mask| rows.iter().filter(|&&r| r & mask == mask).count() as u64)
        .collect()
}

/// `count / n >= min_support`, allowing for `min_support * n` landing a hair
/// away from an integer.
fn meets_min_support(count: u64, n: u64, min_support: f64) -> bool {
    let needed = min_support * n as f64;
    let have = count as f64;
    have > needed || (have - needed).abs() <= 1e-9
}

fn mask_itemset(mask: u32) -> Itemset {
    Itemset::new((0..32).filter(|b| mask >> b & 1 == 1).map(ItemId).collect())
}

pub fn brute_frequent(ts: &TransactionSet, min_support: f64) -> Result<FrequentItemsets> {
    if !(0.0..=1.0).contains(&min_support) {
        return Err(Error::Config(format!("min_support {min_support} outside [0, 1]")));
    }
    let rows = row_masks(ts)?;
    if rows.is_empty() {
        return Err(Error::UndefinedSupport);
    }
    let n = rows.len() as u64;
    let table = count_table(&rows, ts.n_items());
    Ok(FrequentItemsets::from_counts(
        n,
        table
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| meets_min_support(c, n, min_support))
            .map(|(mask, &c)| (mask_itemset(mask as u32), c)),
    ))
}

pub fn brute_rules<T: Scalar>(ts: &TransactionSet, cfg: &MiningConfig) -> Result<RuleSet<T>> {
    cfg.validate()?;
    let rows = row_masks(ts)?;
    if rows.is_empty() {
        return Err(Error::UndefinedSupport);
    }
    let n = rows.len() as u64;
    let table = count_table(&rows, ts.n_items());
    let max_len = cfg.max_len.unwrap_or(usize::MAX);

    let mut rules = Vec::new();
    for z in 1..table.len() as u32 {
        let size = z.count_ones() as usize;
        if size < 2 || size > max_len || !meets_min_support(table[z as usize], n, cfg.min_support) {
            continue;
        }
        // every non-empty proper submask of z
        let mut x = (z - 1) & z;
        while x != 0 {
            let y = z ^ x;
            let counts = RuleCounts {
                antecedent: table[x as usize],
                consequent: table[y as usize],
                joint: table[z as usize],
                transactions: n,
            };
            if counts.antecedent > 0 && counts.consequent > 0 {
                let rule: Rule<T> = Rule::from_counts(mask_itemset(x), mask_itemset(y), counts)?;
                let keep = rule.metrics.confidence.to_f64() >= cfg.min_confidence
                    && rule.metrics.lift.to_f64() > cfg.min_lift
                    && match &cfg.target_consequent {
                        Some(target) => &rule.consequent == target,
                        None => true,
                    };
                if keep {
                    rules.push(rule);
                }
            }
            x = (x - 1) & z;
        }
    }
    Ok(sort_rules(dedup_rules(RuleSet::new(rules))))
}
