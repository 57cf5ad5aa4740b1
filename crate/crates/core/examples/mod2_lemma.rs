//! Tracks the parity of a radical vector along random mutation walks.
//!
//! cargo run --example mod2_lemma

use mutclass::catalog::{self, Orientation};
use mutclass::forms::lemma_mod2_invariant;

fn main() {
    for entry in catalog::affine_entries(4) {
        let (_, companion) = entry.host(&Orientation::Drawing).unwrap();
        let n = entry.u.len();
        let walk: Vec<usize> = (0..30).map(|i| (7 * i + 3) % n).collect();
        match lemma_mod2_invariant(&companion, &entry.u, entry.odd_index, &walk) {
            Ok(check) => println!("{:>4}: holds={} witness trail {:?}", entry.label, check.holds, &check.trail[..8.min(check.trail.len())]),
            // mutation can leave the admissible companions for cyclic hosts
            Err(e) => println!("{:>4}: stopped: {e}", entry.label),
        }
    }
}
