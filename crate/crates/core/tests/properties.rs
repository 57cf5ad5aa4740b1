mod common;

use mutclass::classify::{decide_finite_type, scan};
use mutclass::io::{emit_dot, emit_matrix, parse_matrix};
use mutclass::{Diagram, ExtendedMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn extended(seed: u64, n: usize) -> ExtendedMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    common::random_extended(&mut rng, n, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutation_is_an_involution(seed in any::<u64>(), n in 1usize..6, k in 0usize..6) {
        let b = extended(seed, n);
        let k = k % n;
        prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
    }

    #[test]
    fn diagram_of_mutation_is_mutation_of_diagram(seed in any::<u64>(), n in 1usize..6, walk in prop::collection::vec(0usize..6, 0..8)) {
        let b = extended(seed, n);
        let walk: Vec<usize> = walk.into_iter().map(|k| k % n).collect();
        let by_matrix = Diagram::of_extended(&b.mutate_seq(&walk).unwrap());
        let by_diagram = Diagram::of_extended(&b).mutate_seq(&walk).unwrap();
        prop_assert_eq!(by_matrix, by_diagram);
    }

    #[test]
    fn symmetrizer_is_preserved(seed in any::<u64>(), n in 1usize..6, walk in prop::collection::vec(0usize..6, 0..8)) {
        let b = extended(seed, n);
        let walk: Vec<usize> = walk.into_iter().map(|k| k % n).collect();
        let c = b.mutate_seq(&walk).unwrap();
        prop_assert_eq!(c.symmetrizer(), b.symmetrizer());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..6, walk in prop::collection::vec(0usize..6, 0..12)) {
        let b = extended(seed, n);
        let walk: Vec<usize> = walk.into_iter().map(|k| k % n).collect();
        let c = b.mutate_seq(&walk).unwrap();
        prop_assert_eq!(parse_matrix(&emit_matrix(&c)).unwrap(), c);
    }

    #[test]
    fn canonical_key_ignores_labels(seed in any::<u64>(), n in 1usize..6, shift in 0usize..6) {
        let b = extended(seed, n);
        let d = Diagram::of_exchange(b.principal());
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        prop_assert_eq!(d.relabel(&perm).canonical_key(), d.canonical_key());
    }

    #[test]
    fn dot_output_is_deterministic(seed in any::<u64>(), n in 1usize..6) {
        let d = Diagram::of_extended(&extended(seed, n));
        prop_assert_eq!(emit_dot(&d), emit_dot(&d.clone()));
    }

    /// A certificate pattern anywhere in the class rules out finite type of the principal part.
    #[test]
    fn pattern_implies_infinite_type(seed in any::<u64>(), n in 2usize..5) {
        let b = extended(seed, n);
        if scan(&b).is_some() {
            let gamma = Diagram::of_exchange(b.principal());
            prop_assert!(!decide_finite_type(&gamma).unwrap().is_finite());
        }
    }
}
