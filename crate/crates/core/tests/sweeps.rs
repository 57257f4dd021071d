mod common;

use std::collections::BTreeMap;

use common::gf;
use spreadbent_core::analysis::{rank_histogram, support_collisions, sweep, FunctionRecord};
use spreadbent_core::boolfun::{is_bent, walsh_transform};
use spreadbent_core::families::{
    bucket_families, candidate_pool, enumerate_families, enumerate_family_indices, FamilyBuckets,
};
use spreadbent_core::rank2::ds_rank_bounds;
use spreadbent_core::{FamilyRule, SpreadType};

fn run(l: u32, b: usize, t: SpreadType, rule: FamilyRule) -> Vec<FunctionRecord> {
    let pool = candidate_pool(gf(l), b, false).unwrap();
    let families = enumerate_families(&pool, t, rule).unwrap();
    sweep(&families, 0).unwrap()
}

fn hist(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

fn check_universal(records: &[FunctionRecord], m: usize, plus: bool) {
    let n = 2 * m;
    let half = 1usize << (n - 1);
    let expected_weight = if plus { half + (1 << (m - 1)) } else { half - (1 << (m - 1)) };
    for r in records {
        assert!(is_bent(&r.tt).unwrap());
        assert_eq!(walsh_transform(&r.tt).parseval_sum(), 1u64 << (2 * n));
        assert_eq!(r.weight, expected_weight, "family {}", r.family_id);
        assert_eq!(r.degree as usize, m, "family {}", r.family_id);
        assert_eq!(r.nonlinearity as usize, half - (1 << (m - 1)));
    }
    assert!(support_collisions(records).is_empty());
}

#[test]
fn rank_distribution_b1_n8() {
    let records = run(4, 1, SpreadType::Minus, FamilyRule::default());
    assert_eq!(records.len(), 12870);
    assert_eq!(rank_histogram(&records), hist(&[(30, 270), (36, 2160), (40, 1080), (42, 9360)]));
    assert!(records.iter().all(|r| r.rank as u64 <= ds_rank_bounds(4).1));
    check_universal(&records, 4, false);
}

#[test]
fn b1_n8_plus_type() {
    let records = run(4, 1, SpreadType::Plus, FamilyRule::default());
    assert_eq!(records.len(), 11440);
    check_universal(&records, 4, true);
}

#[test]
fn rank_distribution_b2_n8() {
    let minus = run(2, 2, SpreadType::Minus, FamilyRule::default());
    assert_eq!(minus.len(), 174);
    assert_eq!(rank_histogram(&minus), hist(&[(36, 20), (40, 24), (42, 10), (44, 60), (46, 60)]));
    check_universal(&minus, 4, false);
    let plus = run(2, 2, SpreadType::Plus, FamilyRule::default());
    assert_eq!(plus.len(), 64);
    assert_eq!(rank_histogram(&plus), hist(&[(40, 45), (44, 19)]));
    check_universal(&plus, 4, true);
}

#[test]
fn b2_family_buckets() {
    let pool = candidate_pool(gf(2), 2, false).unwrap();
    let minus = enumerate_family_indices(&pool, 8, FamilyRule::default()).unwrap();
    assert_eq!(
        bucket_families(&pool, &minus),
        FamilyBuckets { without_products: 165, product_with_square: 3, product_without_square: 6 }
    );
    let plus = enumerate_family_indices(&pool, 9, FamilyRule::default()).unwrap();
    assert_eq!(
        bucket_families(&pool, &plus),
        FamilyBuckets { without_products: 55, product_with_square: 6, product_without_square: 3 }
    );
}

#[test]
fn b2_all_coprime_extension() {
    let minus = run(2, 2, SpreadType::Minus, FamilyRule::AllCoprime);
    assert_eq!(minus.len(), 273);
    assert_eq!(rank_histogram(&minus), hist(&[(36, 20), (40, 24), (42, 28), (44, 123), (46, 78)]));
    check_universal(&minus, 4, false);
    let plus = run(2, 2, SpreadType::Plus, FamilyRule::AllCoprime);
    assert_eq!(plus.len(), 82);
    assert_eq!(rank_histogram(&plus), hist(&[(40, 45), (44, 19), (46, 18)]));
    check_universal(&plus, 4, true);
}

#[test]
fn smaller_arities() {
    for (l, b, m) in [(2, 1, 2), (1, 2, 2), (3, 1, 3), (1, 3, 3)] {
        for (t, plus) in [(SpreadType::Minus, false), (SpreadType::Plus, true)] {
            let records = run(l, b, t, FamilyRule::default());
            assert!(!records.is_empty());
            check_universal(&records, m, plus);
        }
    }
}

#[test]
fn gf2_cubic_pool_counts() {
    let minus = run(1, 3, SpreadType::Minus, FamilyRule::default());
    let plus = run(1, 3, SpreadType::Plus, FamilyRule::default());
    assert_eq!((minus.len(), plus.len()), (5, 1));
}

#[test]
fn sweep_independent_of_jobs() {
    let pool = candidate_pool(gf(2), 2, false).unwrap();
    let families = enumerate_families(&pool, SpreadType::Minus, FamilyRule::default()).unwrap();
    assert_eq!(sweep(&families, 1).unwrap(), sweep(&families, 8).unwrap());
}
