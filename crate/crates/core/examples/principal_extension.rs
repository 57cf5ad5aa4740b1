//! Builds the principal extension of an exchange matrix and walks its mutation class.
//!
//! cargo run --example principal_extension

use mutclass::io::emit_matrix;
use mutclass::{ExchangeMatrix, ExtendedMatrix};

fn main() {
    let b0 = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
    let mut b = ExtendedMatrix::principal_extension(&b0);
    println!("start: {}", emit_matrix(&b));
    // the A2 principal class has period 5 under alternating mutation
    for step in 0..10 {
        b = b.mutate(step % 2).unwrap();
        println!("mu_{}: {}", step % 2 + 1, emit_matrix(&b));
    }
    assert_eq!(b, ExtendedMatrix::principal_extension(&b0));
    println!("frozen rows after the walk:\n{}", b.frozen_rows());
}
