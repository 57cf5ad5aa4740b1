//! Exact rational elimination for the spectral questions asked of companions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;

/// Definiteness class of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Semidefiniteness {
    Positive,
    /// Positive semidefinite with a kernel of the given (nonzero) dimension.
    SemipositiveCorank(usize),
    Indefinite,
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Classifies a symmetric integer matrix by symmetric Gaussian elimination.
///
/// A positive diagonal pivot is eliminated through its Schur complement, which
/// preserves inertia. A negative diagonal entry, or a zero diagonal entry with a
/// nonzero row, exhibits a negative direction.
pub fn classify_symmetric(c: &IntMatrix) -> Semidefiniteness {
    assert!(c.is_symmetric(), "form must be symmetric");
    let mut m = to_rational(c);
    let mut active: Vec<usize> = (0..c.rows()).collect();
    let mut corank = 0;
    while !active.is_empty() {
        if active.iter().any(|&i| m[i][i].is_negative()) {
            return Semidefiniteness::Indefinite;
        }
        let Some(pos) = active.iter().position(|&i| m[i][i].is_positive()) else {
            // every remaining diagonal entry vanishes
            let nonzero = active
                .iter()
                .any(|&i| active.iter().any(|&j| !m[i][j].is_zero()));
            if nonzero {
                return Semidefiniteness::Indefinite;
            }
            corank += active.len();
            break;
        };
        let p = active.remove(pos);
        let pivot = m[p][p].clone();
        for &i in &active {
            if m[i][p].is_zero() {
                continue;
            }
            let factor = &m[i][p] / &pivot;
            for &j in &active {
                let delta = &factor * &m[p][j];
                m[i][j] -= delta;
            }
        }
    }
    if corank == 0 {
        Semidefiniteness::Positive
    } else {
        Semidefiniteness::SemipositiveCorank(corank)
    }
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &IntMatrix) -> usize {
    let mut m = to_rational(a);
    rref(&mut m, a.cols()).len()
}

/// Clears denominators and divides by the content; the first nonzero entry is made positive.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|x| &sign * x / &g).collect()
}

/// A basis of the integer kernel of `a`, each vector primitive.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let cols = a.cols();
    let mut m = to_rational(a);
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definiteness_of_small_forms() {
        let a2 = IntMatrix::from_rows([[2, -1], [-1, 2]]);
        assert_eq!(classify_symmetric(&a2), Semidefiniteness::Positive);
        let affine = IntMatrix::from_rows([[2, -2], [-2, 2]]);
        assert_eq!(classify_symmetric(&affine), Semidefiniteness::SemipositiveCorank(1));
        let hyperbolic = IntMatrix::from_rows([[2, -3], [-3, 2]]);
        assert_eq!(classify_symmetric(&hyperbolic), Semidefiniteness::Indefinite);
        let off = IntMatrix::from_rows([[0, 1], [1, 0]]);
        assert_eq!(classify_symmetric(&off), Semidefiniteness::Indefinite);
        assert_eq!(
            classify_symmetric(&IntMatrix::zeros(3, 3)),
            Semidefiniteness::SemipositiveCorank(3)
        );
    }

    #[test]
    fn kernel_is_primitive() {
        let a = IntMatrix::from_rows([[2, -4], [-1, 2]]);
        let ker = kernel_basis(&a);
        assert_eq!(ker, vec![vec![BigInt::from(2), BigInt::from(1)]]);
        assert_eq!(rank(&a), 1);
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
    }
}
