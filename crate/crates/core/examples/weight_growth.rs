//! Replays the weight growth of a 3x2 certificate matrix.
//!
//! cargo run --example weight_growth -- [matrix.json] [steps]

use mutclass::classify::{local_matrix, replay_growth, scan};
use mutclass::io::{self, parse_matrix};
use mutclass::{ExtendedMatrix, IntMatrix};
use num_bigint::BigInt;

fn main() {
    let mut args = std::env::args().skip(1);
    let b = match args.next() {
        Some(path) => parse_matrix(&std::fs::read_to_string(path).unwrap()).unwrap(),
        // triangle with weights (5, 1, 5)
        None => ExtendedMatrix::with_symmetrizer(
            IntMatrix::from_rows([[0, 5], [-1, 0], [1, -5]]),
            [1, 5, 1].map(BigInt::from).to_vec(),
        )
        .unwrap(),
    };
    let steps = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let Some(pattern) = scan(&b) else {
        println!("no certificate pattern");
        return;
    };
    let local = local_matrix(&b, pattern.triangle).unwrap();
    let trace = replay_growth(&local, pattern.kind, steps).unwrap();
    println!("{}: initial weights {:?}", pattern.kind, trace.initial);
    for (n, s) in trace.steps.iter().enumerate() {
        println!("step {n:>2}: mu_{} weights {:?} sum {}", s.vertex + 1, s.weights, s.sum);
    }
    if let Some(last) = io::growth_json(&trace)["steps"].as_array().and_then(|s| s.last()) {
        // numbers past 2^53 are strings
        println!("last sum as JSON: {}", last["sum"]);
    }
}
