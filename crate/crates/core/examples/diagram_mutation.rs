//! Diagram of a matrix, diagram mutation, and DOT output.
//!
//! cargo run --example diagram_mutation | dot -Tsvg > out.svg

use mutclass::io::emit_dot;
use mutclass::{Diagram, ExchangeMatrix};

fn main() {
    let b = ExchangeMatrix::from_rows([[0, 2, 0], [-1, 0, 1], [0, -2, 0]]).unwrap();
    let gamma = Diagram::of_exchange(&b);
    for e in gamma.edges() {
        eprintln!("{} -> {} weight {}", e.from + 1, e.to + 1, e.weight);
    }
    let mu = gamma.mutate(1).unwrap();
    // functoriality: mutating the matrix first gives the same diagram
    assert_eq!(mu, Diagram::of_exchange(&b.mutate(1).unwrap()));
    eprintln!("max weight after mu_2: {}", mu.max_weight());
    print!("{}", emit_dot(&mu));
}
