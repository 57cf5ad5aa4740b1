//! Explores the mutation class of an extended matrix under a node budget.
//!
//! cargo run --release --example explore_class -- 100000

use mutclass::classify::{explore_extended_class, Budget, Outcome};
use mutclass::{ExchangeMatrix, ExtendedMatrix};

fn main() {
    let nodes: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let cases = [
        ("A3", ExchangeMatrix::from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap()),
        ("B3", ExchangeMatrix::from_rows([[0, 1, 0], [-1, 0, 1], [0, -2, 0]]).unwrap()),
        ("~C2", ExchangeMatrix::from_rows([[0, 2, 0], [-1, 0, 1], [0, -2, 0]]).unwrap()),
    ];
    for (name, b0) in cases {
        let report = explore_extended_class(&ExtendedMatrix::principal_extension(&b0), Budget::nodes(nodes));
        match &report.outcome {
            Outcome::Closed { labeled, up_to_iso, .. } => {
                println!("{name}: closed, {labeled} labeled matrices, {up_to_iso} diagrams up to isomorphism")
            }
            Outcome::Infinite(c) => println!(
                "{name}: {} after {} nodes, path {:?}",
                c.kind,
                report.visited,
                c.original_path().iter().map(|k| k + 1).collect::<Vec<_>>()
            ),
            Outcome::BudgetExhausted { visited } => println!("{name}: budget exhausted at {visited}"),
        }
    }
}
