//! Writes DOT files for catalog diagrams.
//!
//! cargo run --example catalog_dot -- ~E6 out.dot

use mutclass::catalog::{self, Label, Orientation};
use mutclass::io::emit_dot;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "~D4".to_string());
    let Some(label) = Label::parse(&name) else {
        eprintln!("not a label: {name}");
        std::process::exit(2);
    };
    let d = match catalog::diagram(label, &Orientation::Drawing) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let dot = emit_dot(&d);
    match args.next() {
        Some(path) => std::fs::write(&path, dot).unwrap(),
        None => print!("{dot}"),
    }
}
