//! Association rules and their interestingness metrics.
//!
//! For a rule `X => Y` over `n` transactions:
//!
//! * support    = supp(X ∪ Y)
//! * confidence = supp(X ∪ Y) / supp(X)
//! * lift       = supp(X ∪ Y) / (supp(X) · supp(Y))
//! * leverage   = supp(X ∪ Y) − supp(X) · supp(Y)
//!
//! When built from integer counts each metric is formed as a single ratio of
//! integers, so for floating scalars `lift == 1` holds exactly when
//! `leverage == 0`, and exact scalars carry no rounding at all.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::apriori::{FrequentItemsets, MiningConfig};
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSet<T = f64> {
    pub antecedent_support: T,
    pub consequent_support: T,
    pub support: T,
    pub confidence: T,
    pub lift: T,
    pub leverage: T,
}

/// Exact transaction counts behind a rule's metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleCounts {
    pub antecedent: u64,
    pub consequent: u64,
    pub joint: u64,
    pub transactions: u64,
}

/// Metrics from (possibly rounded) support fractions.
pub fn metrics<T: Scalar>(supp_xy: T, supp_x: T, supp_y: T) -> Result<MetricSet<T>> {
    let zero = T::zero();
    if supp_x <= zero {
        return Err(Error::UndefinedMetric("antecedent support is zero"));
    }
    if supp_y <= zero {
        return Err(Error::UndefinedMetric("consequent support is zero"));
    }
    if supp_xy > supp_x || supp_xy > supp_y || supp_xy < zero {
        return Err(Error::InconsistentSupport {
            joint: supp_xy.to_f64(),
            antecedent: supp_x.to_f64(),
            consequent: supp_y.to_f64(),
        });
    }
    let expected = supp_x.clone() * supp_y.clone();
    Ok(MetricSet {
        confidence: supp_xy.clone() / supp_x.clone(),
        lift: supp_xy.clone() / expected.clone(),
        leverage: supp_xy.clone() - expected,
        antecedent_support: supp_x,
        consequent_support: supp_y,
        support: supp_xy,
    })
}

impl<T: Scalar> MetricSet<T> {
    pub fn from_counts(c: RuleCounts) -> Result<Self> {
        if c.transactions == 0 {
            return Err(Error::UndefinedSupport);
        }
        if c.antecedent == 0 {
            return Err(Error::UndefinedMetric("antecedent support is zero"));
        }
        if c.consequent == 0 {
            return Err(Error::UndefinedMetric("consequent support is zero"));
        }
        if c.joint > c.antecedent.min(c.consequent) || c.antecedent.max(c.consequent) > c.transactions {
            let n = c.transactions as f64;
            return Err(Error::InconsistentSupport {
                joint: c.joint as f64 / n,
                antecedent: c.antecedent as f64 / n,
                consequent: c.consequent as f64 / n,
            });
        }
        let (a, y, j, n) = (
            c.antecedent as i128,
            c.consequent as i128,
            c.joint as i128,
            c.transactions as i128,
        );
        Ok(MetricSet {
            antecedent_support: T::from_ratio(a, n),
            consequent_support: T::from_ratio(y, n),
            support: T::from_ratio(j, n),
            confidence: T::from_ratio(j, a),
            lift: T::from_ratio(j * n, a * y),
            leverage: T::from_ratio(j * n - a * y, n * n),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T = f64> {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub metrics: MetricSet<T>,
    pub counts: RuleCounts,
}

impl<T: Scalar> Rule<T> {
    /// Antecedent and consequent must be non-empty and disjoint.
    pub fn from_counts(antecedent: Itemset, consequent: Itemset, counts: RuleCounts) -> Result<Self> {
        if antecedent.is_empty() || consequent.is_empty() {
            return Err(Error::Contract("rule sides must be non-empty".into()));
        }
        if !antecedent.is_disjoint(&consequent) {
            return Err(Error::Contract(format!(
                "rule sides overlap: {antecedent} => {consequent}"
            )));
        }
        Ok(Rule {
            antecedent,
            consequent,
            metrics: MetricSet::from_counts(counts)?,
            counts,
        })
    }

    /// All items of the rule.
    pub fn itemset(&self) -> Itemset {
        self.antecedent.union(&self.consequent)
    }
}

/// Ordered rule list.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSet<T = f64> {
    rules: Vec<Rule<T>>,
}

impl<T> Default for RuleSet<T> {
    fn default() -> Self {
        RuleSet { rules: Vec::new() }
    }
}

impl<T> RuleSet<T> {
    pub fn new(rules: Vec<Rule<T>>) -> Self {
        RuleSet { rules }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule<T>> {
        self.rules.iter()
    }

    pub fn rules(&self) -> &[Rule<T>] {
        &self.rules
    }

    pub fn into_vec(self) -> Vec<Rule<T>> {
        self.rules
    }
}

impl<T> FromIterator<Rule<T>> for RuleSet<T> {
    fn from_iter<I: IntoIterator<Item = Rule<T>>>(iter: I) -> Self {
        RuleSet::new(iter.into_iter().collect())
    }
}

impl<T> IntoIterator for RuleSet<T> {
    type Item = Rule<T>;
    type IntoIter = std::vec::IntoIter<Rule<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.into_iter()
    }
}

impl<'a, T> IntoIterator for &'a RuleSet<T> {
    type Item = &'a Rule<T>;
    type IntoIter = std::slice::Iter<'a, Rule<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

/// Confidence, lift and consequent filters from `cfg`.
pub(crate) fn passes_filters<T: Scalar>(rule: &Rule<T>, cfg: &MiningConfig) -> bool {
    rule.metrics.confidence.to_f64() >= cfg.min_confidence
        && rule.metrics.lift.to_f64() > cfg.min_lift
        && cfg.target_consequent.as_ref().is_none_or(|t| *t == rule.consequent)
}

/// Every `X => Y` with `X ⊎ Y` frequent, filtered by `cfg`, deduplicated and sorted.
///
/// Partitions whose antecedent or consequent never occurs (possible only at
/// `min_support = 0`) have undefined metrics and are skipped.
pub fn generate_rules<T: Scalar>(fi: &FrequentItemsets, cfg: &MiningConfig) -> Result<RuleSet<T>> {
    cfg.validate()?;
    let n = fi.n_transactions();
    let mut rules = Vec::new();
    for (z, joint) in fi.iter() {
        let k = z.len();
        if k < 2 {
            continue;
        }
        if k >= 64 {
            return Err(Error::Contract(format!("itemset of size {k} is too large to split")));
        }
        let lookup = |s: &Itemset| {
            fi.count(s)
                .ok_or_else(|| Error::Contract(format!("support of subset {s} is missing")))
        };
        for mask in 1..(1u64 << k) - 1 {
            let (antecedent, consequent) = z.split_by_mask(mask);
            let counts = RuleCounts {
                antecedent: lookup(&antecedent)?,
                consequent: lookup(&consequent)?,
                joint,
                transactions: n,
            };
            if counts.antecedent == 0 || counts.consequent == 0 {
                continue;
            }
            let rule = Rule::from_counts(antecedent, consequent, counts)?;
            if passes_filters(&rule, cfg) {
                rules.push(rule);
            }
        }
    }
    Ok(sort_rules(dedup_rules(RuleSet::new(rules))))
}

/// Rules whose consequent is exactly `target`, order preserved.
pub fn filter_rules<T: Clone>(rs: &RuleSet<T>, target: &Itemset) -> RuleSet<T> {
    rs.iter().filter(|r| r.consequent == *target).cloned().collect()
}

/// Keeps the first rule for each (antecedent, consequent) pair.
pub fn dedup_rules<T>(rs: RuleSet<T>) -> RuleSet<T> {
    let mut seen = HashSet::new();
    rs.into_iter()
        .filter(|r| seen.insert((r.antecedent.clone(), r.consequent.clone())))
        .collect()
}

/// Descending support, then descending confidence, then antecedent and
/// consequent in canonical order.
pub fn rule_order<T: Scalar>(a: &Rule<T>, b: &Rule<T>) -> Ordering {
    let desc = |x: &T, y: &T| y.partial_cmp(x).unwrap_or(Ordering::Equal);
    desc(&a.metrics.support, &b.metrics.support)
        .then_with(|| desc(&a.metrics.confidence, &b.metrics.confidence))
        .then_with(|| a.antecedent.cmp(&b.antecedent))
        .then_with(|| a.consequent.cmp(&b.consequent))
}

pub fn sort_rules<T: Scalar>(rs: RuleSet<T>) -> RuleSet<T> {
    let mut rules = rs.into_vec();
    rules.sort_by(rule_order);
    RuleSet::new(rules)
}
