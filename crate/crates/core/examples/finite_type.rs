//! Finite-type decision by search over the diagram mutation class.
//!
//! cargo run --example finite_type

use mutclass::classify::{decide_finite_type, finite_type_via_companion, FiniteType};
use mutclass::Diagram;

fn main() {
    let cases = [
        ("A3 path", Diagram::from_edges(3, 3, &[(0, 1, 1), (1, 2, 1)]).unwrap()),
        ("B3 path", Diagram::from_edges(3, 3, &[(0, 1, 1), (1, 2, 2)]).unwrap()),
        ("~C2 path", Diagram::from_edges(3, 3, &[(0, 1, 2), (1, 2, 2)]).unwrap()),
        ("oriented square", Diagram::from_edges(4, 4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap()),
    ];
    for (name, d) in cases {
        match decide_finite_type(&d).unwrap() {
            FiniteType::Finite(class) => println!("{name}: finite, {} diagrams up to isomorphism", class.len()),
            FiniteType::Infinite { path, edge, diagram } => println!(
                "{name}: infinite, mutating at {:?} gives weight {} on {{{}, {}}}",
                path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                diagram.weight(edge.0, edge.1),
                edge.0 + 1,
                edge.1 + 1
            ),
        }
        println!("  companion criterion agrees: {}", finite_type_via_companion(&d) == decide_finite_type(&d).unwrap().is_finite());
    }
}
