//! Compares the finite-type decision with exploration of the principal extension.
//!
//! cargo run --release --example verify_theorem

use mutclass::catalog::{self, Orientation};
use mutclass::classify::{verify_theorem, Budget, ExploreOptions};

fn main() {
    let opts = ExploreOptions {
        budget: Budget::nodes(200_000),
        ..ExploreOptions::default()
    };
    let labels = catalog::dynkin_labels(4).into_iter().chain(catalog::extended_labels(3));
    for label in labels {
        let b = catalog::diagram(label, &Orientation::Drawing).unwrap().realize().unwrap();
        let report = verify_theorem(&b, &opts).unwrap();
        let rhs = match report.rhs.certificate() {
            Some(c) => c.kind.to_string(),
            None => format!("{} nodes", report.rhs.visited),
        };
        println!("{label:>4}: finite={:<5} {rhs:<28} {}", report.lhs.is_finite(), report.verdict);
    }
}
