use std::collections::HashSet;

use bitmine::oracle::{enumerate_frequent, OracleConfig};
use bitmine::{
    code_len, cond_code_len, frequency, joint_code_len, joint_code_len_canonical, mine, Backend, BitString,
    MiningConfig, OccurrenceParams, Support, TransactionSet,
};
use proptest::collection::vec;
use proptest::prelude::*;

fn bits(max: usize) -> impl Strategy<Value = BitString> {
    vec(any::<bool>(), 1..=max).prop_map(|v| v.into_iter().collect())
}

fn backend() -> impl Strategy<Value = Backend> {
    prop_oneof![(0u8..=3).prop_map(|order| Backend::Kt { order }), Just(Backend::LzParse)]
}

fn params() -> impl Strategy<Value = OccurrenceParams> {
    prop_oneof![
        (0.3f64..0.8, 0.1f64..0.5).prop_map(|(c1, c2)| OccurrenceParams::scale_free(c1, c2).unwrap()),
        (1.0f64..12.0, 0.5f64..8.0).prop_map(|(c3, c4)| OccurrenceParams::additive(c3, c4).unwrap()),
    ]
}

fn transactions(count: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = Vec<BitString>> {
    vec(vec(any::<bool>(), 8..=max_len).prop_map(|v| v.into_iter().collect()), count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn code_length_is_monotone_under_extension(b in backend(), x in bits(40), e in bits(24)) {
        let lx = code_len(&b, &x).unwrap().bits();
        let lxe = code_len(&b, &x.concat(&e)).unwrap().bits();
        prop_assert!(lxe >= lx, "{} -> {}", lx, lxe);
    }

    #[test]
    fn joint_is_monotone_in_the_appended_part(b in backend(), y in bits(40), x in bits(20), e in bits(12)) {
        let short = joint_code_len(&b, &y, &x).unwrap().bits();
        let long = joint_code_len(&b, &y, &x.concat(&e)).unwrap().bits();
        prop_assert!(long >= short);
    }

    #[test]
    fn conditional_is_nonnegative(b in backend(), x in bits(40), y in bits(40)) {
        prop_assert!(cond_code_len(&b, &x, &y).unwrap() >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn code_length_is_deterministic(b in backend(), x in bits(64)) {
        let first = code_len(&b, &x).unwrap().bits();
        prop_assert_eq!(first.to_bits(), code_len(&b, &x).unwrap().bits().to_bits());
    }

    #[test]
    fn canonical_joint_is_exactly_symmetric(b in backend(), x in bits(48), y in bits(48)) {
        let ab = joint_code_len_canonical(&b, &x, &y).unwrap().bits();
        let ba = joint_code_len_canonical(&b, &y, &x).unwrap().bits();
        prop_assert_eq!(ab.to_bits(), ba.to_bits());
    }

    #[test]
    fn frequency_is_monotone_under_extension(
        b in backend(),
        p in params(),
        t in transactions(1..=6, 40),
        x in bits(10),
        e in bits(6),
    ) {
        let t = TransactionSet::new(t).unwrap();
        let fx = frequency(&b, &p, &t, &x).unwrap();
        let fxe = frequency(&b, &p, &t, &x.concat(&e)).unwrap();
        prop_assert!(fxe <= fx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mining_matches_exhaustive_enumeration(
        order in 0u8..=1,
        c1 in 0.4f64..0.7,
        c2 in 0.15f64..0.35,
        step in prop_oneof![Just(1usize), Just(2), Just(3)],
        t in transactions(3..=6, 20),
        eps in 2u64..=4,
    ) {
        let b = Backend::Kt { order };
        let p = OccurrenceParams::scale_free(c1, c2).unwrap();
        let t = TransactionSet::new(t).unwrap();
        let mined = mine(&b, &p, &t, &MiningConfig::new(Support::Count(eps)).with_step_bits(step)).unwrap();
        prop_assert!(!mined.truncated);
        let oracle = enumerate_frequent(&b, &p, &t, Support::Count(eps), &OracleConfig::new(16)).unwrap();
        let mut got: Vec<(BitString, u64)> = mined.patterns.iter().map(|f| (f.pattern.clone(), f.count)).collect();
        got.sort();
        let mut want = oracle.patterns;
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn mined_patterns_are_prefix_closed_and_counted_exactly(
        b in backend(),
        p in params(),
        step in 1usize..=4,
        t in transactions(3..=8, 32),
        eps in 1u64..=4,
    ) {
        let t = TransactionSet::new(t).unwrap();
        let r = mine(&b, &p, &t, &MiningConfig::new(Support::Count(eps)).with_step_bits(step).with_max_level(6)).unwrap();
        let present: HashSet<(usize, &BitString)> = r.patterns.iter().map(|f| (f.level, &f.pattern)).collect();
        for f in &r.patterns {
            prop_assert!(f.count >= eps);
            prop_assert_eq!(f.count, frequency(&b, &p, &t, &f.pattern).unwrap());
            if f.level > 0 {
                let parent = f.pattern.prefix(f.pattern.len() - step);
                prop_assert!(present.contains(&(f.level - 1, &parent)));
            }
        }
    }

    #[test]
    fn output_ignores_transaction_order(
        b in backend(),
        p in params(),
        t in transactions(2..=8, 32),
        rotate in 0usize..8,
        eps in 1u64..=3,
    ) {
        let config = MiningConfig::new(Support::Count(eps)).with_step_bits(2).with_max_level(6);
        let mut shuffled = t.clone();
        shuffled.reverse();
        let k = rotate % shuffled.len();
        shuffled.rotate_left(k);
        let a = mine(&b, &p, &TransactionSet::new(t).unwrap(), &config).unwrap();
        let c = mine(&b, &p, &TransactionSet::new(shuffled).unwrap(), &config).unwrap();
        prop_assert_eq!(a.patterns, c.patterns);
    }
}
