//! Quasi-Cartan companions.
//!
//! A companion of an exchange matrix `B` is a symmetrizable matrix `A` with
//! diagonal entries `2` and `|A_ij| = |B_ij|` off the diagonal. It shares the
//! symmetrizer of `B`, so `D·A` is a symmetric Gram matrix.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::diagram::{Cycle, Diagram};
use crate::exchange::ExchangeMatrix;
use crate::linalg::{self, Semidefiniteness};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompanionError {
    #[error("companion is {found}x{found}, host is {expected}x{expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("diagonal entry {0} is not 2")]
    DiagonalNotTwo(usize),
    #[error("|A_ij| differs from |B_ij| at ({0},{1})")]
    AbsoluteValueMismatch(usize, usize),
    #[error("entries ({0},{1}) and ({1},{0}) differ in sign")]
    NotSignSymmetric(usize, usize),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("companion is not admissible on cycle {0:?}")]
    NonAdmissible(Vec<usize>),
}

/// A primitive integer vector in the kernel of a companion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadicalVector {
    pub u: Vec<BigInt>,
}

impl RadicalVector {
    /// Every coordinate is nonzero.
    pub fn is_sincere(&self) -> bool {
        self.u.iter().all(|x| !x.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Companion {
    a: IntMatrix,
    host: ExchangeMatrix,
}

impl Companion {
    pub fn new(a: IntMatrix, host: ExchangeMatrix) -> Result<Companion, CompanionError> {
        let n = host.size();
        if !a.is_square() || a.rows() != n {
            return Err(CompanionError::SizeMismatch {
                expected: n,
                found: a.rows(),
            });
        }
        for i in 0..n {
            if a[(i, i)] != BigInt::from(2) {
                return Err(CompanionError::DiagonalNotTwo(i));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[(i, j)].abs() != host.entry(i, j).abs() {
                    return Err(CompanionError::AbsoluteValueMismatch(i, j));
                }
                if a[(i, j)].sign() != a[(j, i)].sign() {
                    return Err(CompanionError::NotSignSymmetric(i, j));
                }
            }
        }
        Ok(Companion { a, host })
    }

    /// The companion with every off-diagonal entry `-|B_ij|`.
    pub fn cartan(host: &ExchangeMatrix) -> Companion {
        let a = IntMatrix::from_fn(host.size(), host.size(), |i, j| {
            if i == j {
                BigInt::from(2)
            } else {
                -host.entry(i, j).abs()
            }
        });
        Companion {
            a,
            host: host.clone(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn host(&self) -> &ExchangeMatrix {
        &self.host
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        self.host.symmetrizer()
    }

    /// The symmetric Gram matrix `D·A`.
    pub fn gram(&self) -> IntMatrix {
        self.a.scale_rows(self.host.symmetrizer())
    }

    /// An induced cycle of the host diagram on which the sign condition fails.
    ///
    /// On an oriented cycle the product of `-A_ij` over its edges must be negative,
    /// on a non-oriented one positive.
    pub fn admissibility_violation(&self) -> Option<Cycle> {
        let diagram = Diagram::of_exchange(&self.host);
        diagram
            .induced_cycles()
            .into_iter()
            .find(|c| !cycle_sign_ok(&self.a, c))
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility_violation().is_none()
    }

    /// Mutation at `k`, defined for admissible companions only.
    pub fn mutate(&self, k: usize) -> Result<Companion, CompanionError> {
        let n = self.size();
        if k >= n {
            return Err(CompanionError::IndexOutOfRange { index: k, size: n });
        }
        if let Some(c) = self.admissibility_violation() {
            return Err(CompanionError::NonAdmissible(c.vertices));
        }
        let b = self.host.matrix();
        let sgn = |x: &BigInt| x.signum();
        let a = &self.a;
        let next = IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                a[(i, i)].clone()
            } else if j == k {
                sgn(&b[(i, k)]) * &a[(i, k)]
            } else if i == k {
                -sgn(&b[(k, j)]) * &a[(k, j)]
            } else {
                let p = &b[(i, k)] * &b[(k, j)];
                if p.is_positive() {
                    &a[(i, j)] - sgn(&(&a[(i, k)] * &a[(k, j)])) * p
                } else {
                    a[(i, j)].clone()
                }
            }
        });
        let host = self.host.mutate(k).expect("index checked");
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert_eq!(
                        next[(i, j)].abs(),
                        host.entry(i, j).abs(),
                        "mutated companion lost the companion property at ({i},{j})"
                    );
                }
            }
        }
        Ok(Companion { a: next, host })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Companion, CompanionError> {
        seq.iter().try_fold(self.clone(), |c, &k| c.mutate(k))
    }

    /// Negates row and column `i` off the diagonal.
    pub fn sign_change(&self, i: usize) -> Companion {
        let n = self.size();
        let a = IntMatrix::from_fn(n, n, |r, c| {
            let x = &self.a[(r, c)];
            if (r == i) != (c == i) {
                -x
            } else {
                x.clone()
            }
        });
        Companion {
            a,
            host: self.host.clone(),
        }
    }

    pub fn semidefiniteness(&self) -> Semidefiniteness {
        linalg::classify_symmetric(&self.gram())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.a)
    }

    pub fn radical_basis(&self) -> Vec<RadicalVector> {
        linalg::kernel_basis(&self.a)
            .into_iter()
            .map(|u| RadicalVector { u })
            .collect()
    }

    /// Principal restriction to `indices`, keeping the restricted symmetrizer.
    pub fn restrict(&self, indices: &[usize]) -> Companion {
        Companion {
            a: self.a.submatrix(indices, indices),
            host: self.host.restrict(indices),
        }
    }
}

fn cycle_sign_ok(a: &IntMatrix, cycle: &Cycle) -> bool {
    let positives = cycle.edges().filter(|&(i, j)| a[(i, j)].is_positive()).count();
    // product of -A_ij is negative exactly when an odd number of A_ij are positive
    let negative_product = positives % 2 == 1;
    negative_product == cycle.oriented
}

/// Every admissible companion whose entries are negative on a fixed spanning forest.
///
/// Each sign-change class of admissible companions meets this set exactly once.
/// Off-forest signs are enumerated exhaustively.
pub fn admissible_companions(host: &ExchangeMatrix) -> Vec<Companion> {
    let diagram = Diagram::of_exchange(host);
    let n = host.size();
    let mut in_tree = vec![false; n];
    let mut tree_edge = vec![false; n * n];
    for comp in diagram.components() {
        let mut stack = vec![comp[0]];
        in_tree[comp[0]] = true;
        while let Some(v) = stack.pop() {
            for w in diagram.neighbors(v).collect::<Vec<_>>() {
                if !in_tree[w] {
                    in_tree[w] = true;
                    tree_edge[v * n + w] = true;
                    tree_edge[w * n + v] = true;
                    stack.push(w);
                }
            }
        }
    }
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| diagram.adjacent(i, j) && !tree_edge[i * n + j])
        .collect();
    assert!(free.len() < 24, "too many independent cycles to enumerate signs");
    let cycles = diagram.induced_cycles();
    let base = Companion::cartan(host);
    let mut out = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let mut a = base.a.clone();
        for (t, &(i, j)) in free.iter().enumerate() {
            if mask >> t & 1 == 1 {
                a[(i, j)] = -&a[(i, j)];
                a[(j, i)] = -&a[(j, i)];
            }
        }
        if cycles.iter().all(|c| cycle_sign_ok(&a, c)) {
            out.push(Companion {
                a,
                host: host.clone(),
            });
        }
    }
    out
}

pub fn find_admissible_companion(host: &ExchangeMatrix) -> Option<Companion> {
    admissible_companions(host).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(oriented: bool) -> ExchangeMatrix {
        // 0 → 1 → 2, closed by 2 → 0 (oriented) or 0 → 2
        let c = if oriented { 1 } else { -1 };
        ExchangeMatrix::from_rows([[0, -1, c], [1, 0, -1], [-c, 1, 0]]).unwrap()
    }

    #[test]
    fn tree_companion_is_cartan() {
        let b = ExchangeMatrix::from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap();
        let c = find_admissible_companion(&b).unwrap();
        assert_eq!(
            c.matrix(),
            &IntMatrix::from_rows([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        );
        assert_eq!(c.semidefiniteness(), Semidefiniteness::Positive);
        assert!(c.radical_basis().is_empty());
    }

    #[test]
    fn triangle_admissibility() {
        let oriented = triangle(true);
        assert!(!Companion::cartan(&oriented).is_admissible());
        let flipped = Companion::cartan(&oriented).sign_change(0).sign_change(1);
        // one positive pair on the cycle
        let c = Companion::new(
            IntMatrix::from_rows([[2, 1, -1], [1, 2, -1], [-1, -1, 2]]),
            oriented.clone(),
        )
        .unwrap();
        assert!(c.is_admissible());
        assert!(!flipped.is_admissible());
        assert_eq!(admissible_companions(&oriented).len(), 1);

        let plain = triangle(false);
        assert!(Companion::cartan(&plain).is_admissible());
        assert_eq!(admissible_companions(&plain).len(), 1);
    }

    #[test]
    fn mutation_example() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let c = Companion::cartan(&b);
        let mu = c.mutate(0).unwrap();
        assert_eq!(mu.matrix(), &IntMatrix::from_rows([[2, 1], [1, 2]]));
        // twice is the sign change at the mutated index
        assert_eq!(mu.mutate(0).unwrap(), c.sign_change(0));
    }

    #[test]
    fn non_admissible_mutation_refused() {
        let c = Companion::cartan(&triangle(true));
        assert!(matches!(c.mutate(0), Err(CompanionError::NonAdmissible(_))));
    }

    #[test]
    fn affine_rank_two() {
        let b = ExchangeMatrix::from_rows([[0, 2], [-2, 0]]).unwrap();
        let c = Companion::cartan(&b);
        assert_eq!(c.semidefiniteness(), Semidefiniteness::SemipositiveCorank(1));
        let rad = c.radical_basis();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0].u, vec![BigInt::from(1), BigInt::from(1)]);
        assert!(rad[0].is_sincere());
        assert_eq!(c.restrict(&[0]).matrix(), &IntMatrix::from_rows([[2]]));
    }

    #[test]
    fn sign_change_properties() {
        let b = ExchangeMatrix::from_rows([[0, 2, 0], [-1, 0, 1], [0, -1, 0]]).unwrap();
        let c = Companion::cartan(&b);
        assert_eq!(c.sign_change(1).sign_change(1), c);
        assert_eq!(c.sign_change(1).semidefiniteness(), c.semidefiniteness());
        assert_eq!(
            c.sign_change(1).restrict(&[1, 2]),
            c.restrict(&[1, 2]).sign_change(0)
        );
    }

    #[test]
    fn rejects_non_companions() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        assert_eq!(
            Companion::new(IntMatrix::from_rows([[2, -2], [-2, 2]]), b.clone()),
            Err(CompanionError::AbsoluteValueMismatch(0, 1))
        );
        assert_eq!(
            Companion::new(IntMatrix::from_rows([[2, 1], [-1, 2]]), b.clone()),
            Err(CompanionError::NotSignSymmetric(0, 1))
        );
        assert_eq!(
            Companion::new(IntMatrix::from_rows([[1, 1], [1, 2]]), b),
            Err(CompanionError::DiagonalNotTwo(0))
        );
    }
}
