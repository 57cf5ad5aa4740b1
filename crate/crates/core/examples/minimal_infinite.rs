//! Minimal infinite diagrams: extended Dynkin diagrams and the extra shapes.
//!
//! cargo run --example minimal_infinite

use mutclass::catalog::{self, Orientation};
use mutclass::classify::{is_minimal_infinite_cached, FiniteTypeCache};

fn main() {
    let mut cache = FiniteTypeCache::new();
    for label in catalog::extended_labels(5) {
        let d = catalog::diagram(label, &Orientation::Drawing).unwrap();
        println!("{label:>4}: minimal infinite = {}", is_minimal_infinite_cached(&d, &mut cache).unwrap());
    }
    for shape in catalog::extra_shapes(6) {
        let all = shape
            .acyclic_orientations()
            .iter()
            .all(|d| is_minimal_infinite_cached(d, &mut cache).unwrap());
        println!("{}: every acyclic orientation minimal infinite = {all}", shape.name);
    }
    println!("{} searches, {} cached keys", cache.searches(), cache.len());
}
