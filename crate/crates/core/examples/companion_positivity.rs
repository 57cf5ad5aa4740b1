//! Admissible quasi-Cartan companions and their semidefiniteness.
//!
//! cargo run --example companion_positivity

use mutclass::catalog::{self, Label, Orientation};
use mutclass::companion::admissible_companions;

fn main() {
    for name in ["A3", "D4", "~A2", "~D4", "G2"] {
        let label = Label::parse(name).unwrap();
        let host = catalog::diagram(label, &Orientation::Drawing).unwrap().realize().unwrap();
        let companions = admissible_companions(&host);
        let c = &companions[0];
        println!(
            "{name}: {} admissible companions, first is {:?}, rank {}",
            companions.len(),
            c.semidefiniteness(),
            c.rank()
        );
        for r in c.radical_basis() {
            println!("  radical {:?} sincere={}", r.u, r.is_sincere());
        }
    }
}
