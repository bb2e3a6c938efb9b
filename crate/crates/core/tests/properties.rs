use std::collections::BTreeSet;

use armine_core::{
    brute_frequent, brute_rules, dedup_rules, generate_candidates, generate_rules, mine_frequent, sort_rules,
    ExactRuleSet, ItemCatalog, ItemId, Itemset, MiningConfig, RuleSet, TransactionSet,
};
use proptest::prelude::*;

fn build(n_items: usize, rows: &[Vec<u32>]) -> TransactionSet {
    let catalog = ItemCatalog::from_names((0..n_items).map(|i| format!("i{i}"))).unwrap();
    let rows: Vec<Vec<ItemId>> = rows
        .iter()
        .map(|r| r.iter().map(|&i| ItemId(i % n_items as u32)).collect())
        .collect();
    TransactionSet::from_rows(catalog, &rows).unwrap()
}

fn arb_dataset() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1usize..=8).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(0..n as u32, 0..=n), 1..40),
        )
    })
}

fn cfg(min_support: f64, min_confidence: f64, min_lift: f64) -> MiningConfig {
    MiningConfig {
        min_support,
        min_confidence,
        min_lift,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn apriori_matches_brute_force((n, rows) in arb_dataset(), support_step in 1u32..=10) {
        let ts = build(n, &rows);
        let min_support = f64::from(support_step) * 0.05;
        let c = cfg(min_support, 0.0, 0.0);
        let fast = mine_frequent(&ts, &c).unwrap();
        let slow = brute_frequent(&ts, min_support).unwrap();
        prop_assert_eq!(&fast, &slow);
        prop_assert!(fast.is_downward_closed());

        let fast_rules: RuleSet = generate_rules(&fast, &c).unwrap();
        let slow_rules: RuleSet = brute_rules(&ts, &c).unwrap();
        prop_assert_eq!(&fast_rules, &slow_rules);

        let exact_fast: ExactRuleSet = generate_rules(&fast, &c).unwrap();
        let exact_slow: ExactRuleSet = brute_rules(&ts, &c).unwrap();
        prop_assert_eq!(exact_fast, exact_slow);
    }

    #[test]
    fn max_len_matches_truncated_brute_force((n, rows) in arb_dataset(), max_len in 1usize..4) {
        let ts = build(n, &rows);
        let c = MiningConfig { max_len: Some(max_len), ..cfg(0.1, 0.0, 0.0) };
        let fast = mine_frequent(&ts, &c).unwrap();
        let slow = brute_frequent(&ts, 0.1).unwrap();
        let truncated: BTreeSet<(Itemset, u64)> =
            slow.iter().filter(|(s, _)| s.len() <= max_len).map(|(s, c)| (s.clone(), c)).collect();
        let got: BTreeSet<(Itemset, u64)> = fast.iter().map(|(s, c)| (s.clone(), c)).collect();
        prop_assert_eq!(got, truncated);
        let fr: RuleSet = generate_rules(&fast, &c).unwrap();
        let br: RuleSet = brute_rules(&ts, &c).unwrap();
        prop_assert_eq!(fr, br);
    }

    #[test]
    fn rule_invariants((n, rows) in arb_dataset()) {
        let ts = build(n, &rows);
        let c = cfg(0.05, 0.0, 0.0);
        let rules: RuleSet = generate_rules(&mine_frequent(&ts, &c).unwrap(), &c).unwrap();
        for r in &rules {
            let m = &r.metrics;
            prop_assert!(!r.antecedent.is_empty() && !r.consequent.is_empty());
            prop_assert!(r.antecedent.is_disjoint(&r.consequent));
            prop_assert!((m.confidence - m.lift * m.consequent_support).abs() <= 1e-12 * m.confidence.abs().max(1e-300));
            prop_assert_eq!(m.leverage > 0.0, m.lift > 1.0);
            prop_assert_eq!(m.leverage == 0.0, m.lift == 1.0);
            prop_assert!(m.leverage.abs() <= 0.25);
            prop_assert!(m.support <= m.antecedent_support.min(m.consequent_support));
        }
        let again = sort_rules(dedup_rules(rules.clone()));
        prop_assert_eq!(&again, &rules);
    }

    #[test]
    fn mining_ignores_transaction_order((n, rows) in arb_dataset(), rot in 0usize..40) {
        let ts = build(n, &rows);
        let mut shuffled = rows.clone();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        shuffled.reverse();
        let c = cfg(0.1, 0.0, 0.0);
        prop_assert_eq!(mine_frequent(&ts, &c).unwrap(), mine_frequent(&build(n, &shuffled), &c).unwrap());
    }

    #[test]
    fn mining_commutes_with_relabeling((n, rows) in arb_dataset(), shift in 0u32..8) {
        let ts = build(n, &rows);
        let perm = |i: u32| (i + shift) % n as u32;
        let relabeled: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&i| perm(i % n as u32)).collect()).collect();
        let c = cfg(0.1, 0.0, 0.0);
        let base: BTreeSet<(Itemset, u64)> = mine_frequent(&ts, &c).unwrap()
            .iter()
            .map(|(s, k)| (Itemset::from_ids(s.iter().map(|id| perm(id.0))), k))
            .collect();
        let moved: BTreeSet<(Itemset, u64)> = mine_frequent(&build(n, &relabeled), &c).unwrap()
            .iter()
            .map(|(s, k)| (s.clone(), k))
            .collect();
        prop_assert_eq!(base, moved);
    }

    #[test]
    fn candidates_sound_and_complete(
        prev in prop::collection::btree_set(prop::collection::btree_set(0u32..7, 2), 0..15)
    ) {
        let prev: Vec<Itemset> = prev.into_iter().map(Itemset::from_ids).collect();
        let lookup: BTreeSet<&Itemset> = prev.iter().collect();
        let got: BTreeSet<Itemset> = generate_candidates(&prev).unwrap().into_iter().collect();
        // every 3-itemset over 0..7 whose 2-subsets are all in prev
        let mut expected = BTreeSet::new();
        for a in 0..7u32 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    let cand = Itemset::from_ids([a, b, c]);
                    if (0..3).all(|i| lookup.contains(&cand.without_index(i))) {
                        expected.insert(cand);
                    }
                }
            }
        }
        prop_assert_eq!(got, expected);
    }
}
