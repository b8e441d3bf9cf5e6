use oslcm::format::{
    parse_instance, parse_order, write_instance, write_instance_with_comments, write_order,
};
use oslcm_core::generators::{random_instance, DegreeSampler};
use oslcm_core::{heuristic_order, MedianRule, TieBreak};
use proptest::prelude::*;

proptest! {
    #[test]
    fn instances_round_trip(x in 1u32..40, y in 0u32..30, max in 1u32..8, seed: u64) {
        let net = random_instance(x, y, DegreeSampler::Uniform { min: 1, max: max.min(x) }, seed).unwrap();
        prop_assert_eq!(&parse_instance(&write_instance(&net)).unwrap(), &net);
        let commented = write_instance_with_comments(&net, &[format!("seed {seed}")]);
        prop_assert_eq!(&parse_instance(&commented).unwrap(), &net);
    }

    #[test]
    fn orders_round_trip(x in 1u32..20, y in 0u32..20, seed: u64) {
        let net = random_instance(x, y, DegreeSampler::Uniform { min: 1, max: x.min(4) }, seed).unwrap();
        let order = heuristic_order(&net, MedianRule::HeuristicA, TieBreak::Paper).reversed();
        prop_assert_eq!(parse_order(&write_order(&net, &order), &net).unwrap(), order);
    }
}
