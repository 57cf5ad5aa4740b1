//! Reads a matrix document, mutates it, and writes JSON and DOT.
//!
//! echo '{"m":3,"n":2,"rows":[[0,2],[-1,0],[1,0]]}' | cargo run --example json_io -- 1 2

use std::io::Read;

use mutclass::io::{emit_dot, MatrixDocument};
use mutclass::Diagram;

fn main() {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).unwrap();
    let doc = match MatrixDocument::parse(&text) {
        Ok(doc) => doc,
        Err(e) => {
            println!("{}", e.to_json());
            std::process::exit(1);
        }
    };
    let b = match doc.to_extended() {
        Ok(b) => b,
        Err(e) => {
            println!("{}", e.to_json());
            std::process::exit(1);
        }
    };
    let seq: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse::<usize>().ok()).map(|k| k - 1).collect();
    let out = b.mutate_seq(&seq).unwrap();
    println!("{}", MatrixDocument::from_extended(&out, doc.name).to_value());
    print!("{}", emit_dot(&Diagram::of_extended(&out)));
}
