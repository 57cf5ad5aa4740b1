use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};

use super::Diagram;
use crate::exchange::{ExchangeMatrix, ExtendedMatrix};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("weight {0} is too large to factor")]
    WeightTooLarge(BigInt),
    #[error("no skew-symmetrizable matrix has this diagram (edge {0}-{1})")]
    NotRealizable(usize, usize),
    #[error("edge between frozen vertices {0} and {1}")]
    FrozenEdge(usize, usize),
}

fn squarefree_part(mut x: u128) -> u128 {
    let mut out = 1;
    let mut p = 2u128;
    while p * p <= x {
        let mut e = 0;
        while x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out * x
}

fn small(w: &BigInt) -> Result<u128, RealizeError> {
    w.to_u64()
        .map(u128::from)
        .ok_or_else(|| RealizeError::WeightTooLarge(w.clone()))
}

/// Builds `B` with `d_i·|B_ij| = d_j·|B_ji|` and `|B_ij·B_ji| = w` on every edge.
///
/// Symmetrizer values are chosen squarefree along a spanning forest, which makes
/// every tree edge integral; off-tree edges are then checked.
pub(super) fn realize(diagram: &Diagram) -> Result<ExchangeMatrix, RealizeError> {
    let n = diagram.size();
    let mut d = vec![0u128; n];
    let mut b = IntMatrix::zeros(n, n);
    let mut tree = vec![false; n * n];
    let place = |b: &mut IntMatrix, i: usize, j: usize, x_ij: u128, x_ji: u128| {
        let (x_ij, x_ji) = (BigInt::from(x_ij), BigInt::from(x_ji));
        if diagram.has_arrow(i, j) {
            b[(j, i)] = x_ji;
            b[(i, j)] = -x_ij;
        } else {
            b[(i, j)] = x_ij;
            b[(j, i)] = -x_ji;
        }
    };
    for root in 0..n {
        if d[root] != 0 {
            continue;
        }
        d[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in diagram.neighbors(i).collect::<Vec<_>>() {
                if d[j] != 0 {
                    continue;
                }
                let w = small(&diagram.weight(i, j))?;
                let dw = d[i] * w;
                d[j] = squarefree_part(dw);
                let s = (dw / d[j]).sqrt();
                place(&mut b, i, j, d[j] * s / d[i], s);
                tree[i * n + j] = true;
                tree[j * n + i] = true;
                queue.push_back(j);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !diagram.adjacent(i, j) || tree[i * n + j] {
                continue;
            }
            let w = small(&diagram.weight(i, j))?;
            let num = w * d[j];
            if !num.is_multiple_of(d[i]) {
                return Err(RealizeError::NotRealizable(i, j));
            }
            let q = num / d[i];
            let x_ij = q.sqrt();
            if x_ij * x_ij != q || x_ij.is_zero() || w % x_ij != 0 {
                return Err(RealizeError::NotRealizable(i, j));
            }
            place(&mut b, i, j, x_ij, w / x_ij);
        }
    }
    let d = d.into_iter().map(BigInt::from).collect();
    Ok(ExchangeMatrix::with_symmetrizer(b, d).expect("realization is skew-symmetrizable by construction"))
}

pub(super) fn realize_extended(diagram: &Diagram) -> Result<ExtendedMatrix, RealizeError> {
    let (m, n) = (diagram.size(), diagram.mutable_count());
    for i in n..m {
        for j in i + 1..m {
            if diagram.adjacent(i, j) {
                return Err(RealizeError::FrozenEdge(i, j));
            }
        }
    }
    let square = realize(diagram)?;
    let rows: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (0..n).collect();
    let left = square.matrix().submatrix(&rows, &cols);
    Ok(ExtendedMatrix::with_symmetrizer(left, square.symmetrizer().to_vec())
        .expect("left block of a skew-symmetrizable matrix"))
}
