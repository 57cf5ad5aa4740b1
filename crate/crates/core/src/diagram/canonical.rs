//! Canonical labeling by color refinement and individualization.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use super::Diagram;

/// Byte string equal for two diagrams exactly when they are isomorphic by a
/// relabeling that maps mutable vertices to mutable ones and frozen to frozen.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

struct Graph<'a> {
    n: usize,
    mutable: usize,
    d: &'a Diagram,
    undirected: bool,
}

impl Graph<'_> {
    fn entry(&self, i: usize, j: usize) -> BigInt {
        if self.undirected {
            self.d.weight(i, j)
        } else {
            self.d.signed(i, j).clone()
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        self.entry(u, v) == self.entry(v, u)
            && (0..self.n)
                .filter(|&x| x != u && x != v)
                .all(|x| self.entry(u, x) == self.entry(v, x))
    }
}

pub(super) fn key(d: &Diagram, undirected: bool) -> CanonicalKey {
    let n = d.size();
    let g = Graph {
        n,
        mutable: d.mutable_count(),
        d,
        undirected,
    };
    let colors: Vec<usize> = (0..n).map(|v| usize::from(d.is_frozen(v))).collect();
    let mut best = None;
    search(&g, colors, &mut best);
    CanonicalKey(best.unwrap_or_else(|| encode(&g, &[])))
}

/// Refines until stable; colors are returned as dense ranks.
fn refine(g: &Graph, colors: &mut [usize]) {
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<(usize, BigInt)>)> = (0..g.n)
            .map(|v| {
                let mut nb: Vec<(usize, BigInt)> = (0..g.n)
                    .filter(|&w| w != v)
                    .filter_map(|w| {
                        let x = g.entry(v, w);
                        (!x.is_zero()).then(|| (colors[w], x))
                    })
                    .collect();
                nb.sort();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<(usize, BigInt)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        for v in 0..g.n {
            colors[v] = sorted.binary_search(&&sigs[v]).unwrap();
        }
        if sorted.len() == classes {
            return;
        }
        classes = sorted.len();
    }
}

fn search(g: &Graph, mut colors: Vec<usize>, best: &mut Option<Vec<u8>>) {
    refine(g, &mut colors);
    let mut sizes = vec![0usize; g.n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..g.n)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c));
    let Some(cell) = target else {
        let mut order = vec![0; g.n];
        for (v, &c) in colors.iter().enumerate() {
            order[c] = v;
        }
        let enc = encode(g, &order);
        if best.as_ref().is_none_or(|b| enc < *b) {
            *best = Some(enc);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for v in (0..g.n).filter(|&v| colors[v] == cell) {
        if tried.iter().any(|&u| g.twins(u, v)) {
            continue;
        }
        tried.push(v);
        let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
        next[v] = 2 * colors[v];
        search(g, next, best);
    }
}

fn encode(g: &Graph, order: &[usize]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&(g.n as u32).to_le_bytes());
    out.extend_from_slice(&(g.mutable as u32).to_le_bytes());
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            let x = g.entry(order[a], order[b]);
            let (sign, mag) = x.to_bytes_be();
            out.push(match sign {
                Sign::NoSign => 0,
                Sign::Plus => 1,
                Sign::Minus => 2,
            });
            if sign != Sign::NoSign {
                out.extend_from_slice(&(mag.len() as u32).to_le_bytes());
                out.extend_from_slice(&mag);
            }
        }
    }
    out
}
