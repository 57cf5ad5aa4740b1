#![allow(dead_code)]

use std::collections::HashSet;

use mutclass::catalog::{self, Orientation};
use mutclass::{CanonicalKey, Diagram, ExchangeMatrix, ExtendedMatrix, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;

/// Random skew-symmetrizable matrix: symmetrizer entries in `1..=3`, each pair
/// filled with probability 1/2, entries bounded by `max` in absolute value.
pub fn random_exchange(rng: &mut impl Rng, n: usize, max: i64) -> ExchangeMatrix {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if !rng.gen_bool(0.5) {
                continue;
            }
            // d_i b_ij = c·lcm = -d_j b_ji
            let l = d[i].lcm(&d[j]);
            let bound = max * d[i].min(d[j]) / l;
            if bound == 0 {
                continue;
            }
            let mut c = rng.gen_range(1..=bound);
            if rng.gen_bool(0.5) {
                c = -c;
            }
            b[i][j] = c * l / d[i];
            b[j][i] = -c * l / d[j];
        }
    }
    ExchangeMatrix::new(IntMatrix::from_rows(b)).expect("generated matrix is skew-symmetrizable")
}

/// Random extended matrix with up to three frozen rows of entries in `-max..=max`.
pub fn random_extended(rng: &mut impl Rng, n: usize, max: i64) -> ExtendedMatrix {
    let b = random_exchange(rng, n, max);
    let frozen = rng.gen_range(0..=3);
    let mut rows = b.matrix().to_rows();
    for _ in 0..frozen {
        rows.push((0..n).map(|_| BigInt::from(rng.gen_range(-max..=max))).collect());
    }
    ExtendedMatrix::new(IntMatrix::try_from_rows(rows).unwrap()).expect("frozen rows always admit a completion")
}

pub fn random_walk(rng: &mut impl Rng, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

/// Every connected diagram on `n` vertices with weights at most `max_weight`
/// and perfect-square cycle products, one per isomorphism class.
pub fn diagrams_up_to_iso(n: usize, max_weight: i64) -> Vec<Diagram> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let choices = (2 * max_weight + 1) as u64;
    let total = choices.pow(pairs.len() as u32);
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut edges = Vec::new();
        for &(i, j) in &pairs {
            let v = (c % choices) as i64 - max_weight;
            c /= choices;
            if v > 0 {
                edges.push((i, j, v));
            } else if v < 0 {
                edges.push((j, i, -v));
            }
        }
        if edges.len() + 1 < n {
            continue;
        }
        let d = Diagram::from_edges(n, n, &edges).unwrap();
        if !d.is_connected() || !d.has_perfect_square_cycles() {
            continue;
        }
        if seen.insert(d.canonical_key()) {
            out.push(d);
        }
    }
    out
}

/// Every connected skew-symmetrizable `n×n` matrix with entries in `-max..=max`.
pub fn exchange_matrices(n: usize, max: i64) -> Vec<ExchangeMatrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let choices = (2 * max + 1) as u64;
    let total = choices.pow(2 * pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut b = vec![vec![0i64; n]; n];
        for &(i, j) in &pairs {
            b[i][j] = (c % choices) as i64 - max;
            c /= choices;
            b[j][i] = (c % choices) as i64 - max;
            c /= choices;
        }
        if let Ok(m) = ExchangeMatrix::new(IntMatrix::from_rows(b)) {
            if m.is_connected() {
                out.push(m);
            }
        }
    }
    out
}

/// Catalog diagrams of rank at most `max_rank` in their listed orientation:
/// Dynkin `X_n` and extended `~X_n` with `n ≤ max_rank`, and the non-extended
/// minimal infinite shapes with at most `max_rank` vertices.
pub fn catalog_representatives(max_rank: usize, max_a: u32) -> Vec<(String, Diagram)> {
    let mut out = Vec::new();
    for label in catalog::dynkin_labels(max_rank).into_iter().chain(catalog::extended_labels(max_rank)) {
        out.push((label.to_string(), catalog::diagram(label, &Orientation::Drawing).unwrap()));
    }
    for shape in catalog::extra_shapes(max_a) {
        if shape.size <= max_rank {
            out.push((shape.name.clone(), shape.diagram()));
        }
    }
    out
}
