//! Identifies the Dynkin type of mutated diagrams.
//!
//! cargo run --example dynkin_identify

use mutclass::catalog::{self, Orientation};
use mutclass::classify::identify_dynkin_type;

fn main() {
    for label in catalog::dynkin_labels(6) {
        let d = catalog::diagram(label, &Orientation::Drawing).unwrap();
        // scramble with a few mutations; the type is a class invariant
        let walk: Vec<usize> = (0..5).map(|i| (3 * i + 1) % d.size()).collect();
        let scrambled = d.mutate_seq(&walk).unwrap();
        let found = identify_dynkin_type(&scrambled).unwrap();
        println!("{label:>3} -> {found}");
    }
}
