//! Exchange matrices and their mutations.
//!
//! An [`ExchangeMatrix`] is a square integer matrix `B` with a positive diagonal
//! symmetrizer `D` such that `D·B` is skew-symmetric. An [`ExtendedMatrix`] is an
//! `m×n` matrix whose top `n×n` block is an exchange matrix and whose remaining
//! rows are frozen. Every extended matrix carries a symmetrizer for all `m`
//! indices, which fixes its square completion ([`BulletMatrix`]).
//!
//! Indices are zero-based throughout the library.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExchangeError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("diagonal entry {0} is nonzero")]
    NonZeroDiagonal(usize),
    #[error("entries ({0},{1}) and ({1},{0}) are not sign-skew-symmetric")]
    NotSignSkewSymmetric(usize, usize),
    #[error("cycle {0:?} violates the cycle product condition")]
    InconsistentCycle(Vec<usize>),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("index {index} is frozen; only indices below {mutable} can be mutated")]
    FrozenIndex { index: usize, mutable: usize },
    #[error("symmetrizer has length {found}, expected {expected}")]
    SymmetrizerLength { expected: usize, found: usize },
    #[error("symmetrizer entry {0} is not positive")]
    NonPositiveSymmetrizer(usize),
    #[error("symmetrizer does not skew-symmetrize entries ({0},{1})")]
    SymmetrizerMismatch(usize, usize),
    #[error("extended matrix has {rows} rows but {cols} columns")]
    TooFewRows { rows: usize, cols: usize },
    #[error("square completion is not integral at ({row},{col})")]
    NonIntegralCompletion { row: usize, col: usize },
}

fn sgn(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Applies the mutation formula at column `k` to every entry of an `m×n` matrix.
///
/// Entries in row or column `k` change sign; any other entry becomes
/// `b_ij + sgn(b_ik)·[b_ik·b_kj]_+`. Requires `k < n ≤ m`.
pub(crate) fn mutate_entries(b: &IntMatrix, k: usize) -> IntMatrix {
    debug_assert!(k < b.cols() && k < b.rows());
    IntMatrix::from_fn(b.rows(), b.cols(), |i, j| {
        let x = &b[(i, j)];
        if i == k || j == k {
            return -x;
        }
        let bik = &b[(i, k)];
        let bkj = &b[(k, j)];
        let prod = bik * bkj;
        if prod.is_positive() {
            match sgn(bik) {
                1 => x + prod,
                _ => x - prod,
            }
        } else {
            x.clone()
        }
    })
}

fn check_sign_pattern(m: &IntMatrix) -> Result<(), ExchangeError> {
    if !m.is_square() {
        return Err(ExchangeError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    for i in 0..n {
        if !m[(i, i)].is_zero() {
            return Err(ExchangeError::NonZeroDiagonal(i));
        }
        for j in i + 1..n {
            let (a, b) = (&m[(i, j)], &m[(j, i)]);
            let ok = (a.is_zero() && b.is_zero()) || sgn(a) * sgn(b) == -1;
            if !ok {
                return Err(ExchangeError::NotSignSkewSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// Connected components of the nonzero pattern of a square matrix, each sorted.
pub(crate) fn components(m: &IntMatrix) -> Vec<Vec<usize>> {
    let n = m.rows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if !seen[w] && !m[(v, w)].is_zero() {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Finds the minimal symmetrizer of a square integer matrix, or reports why none exists.
///
/// Ratios `d_j / d_i = -b_ij / b_ji` are propagated along a breadth-first spanning
/// tree of each component of the nonzero pattern; every off-tree edge is then
/// verified. On success each component is scaled to the smallest positive integer
/// vector, and isolated indices get `1`.
pub fn check_skew_symmetrizable(m: &IntMatrix) -> Result<Vec<BigInt>, ExchangeError> {
    check_sign_pattern(m)?;
    let n = m.rows();
    let mut ratio: Vec<Option<BigRational>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut d = vec![BigInt::zero(); n];
    for comp in components(m) {
        let root = comp[0];
        ratio[root] = Some(BigRational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if m[(i, j)].is_zero() || ratio[j].is_some() {
                    continue;
                }
                let r = ratio[i].as_ref().unwrap()
                    * BigRational::new(-m[(i, j)].clone(), m[(j, i)].clone());
                ratio[j] = Some(r);
                parent[j] = Some(i);
                depth[j] = depth[i] + 1;
                queue.push_back(j);
            }
        }
        for &i in &comp {
            for &j in &comp {
                if i >= j || m[(i, j)].is_zero() {
                    continue;
                }
                let lhs = ratio[i].as_ref().unwrap() * BigRational::from_integer(m[(i, j)].clone());
                let rhs = ratio[j].as_ref().unwrap() * BigRational::from_integer(m[(j, i)].clone());
                if lhs + rhs != BigRational::zero() {
                    return Err(ExchangeError::InconsistentCycle(tree_cycle(
                        &parent, &depth, i, j,
                    )));
                }
            }
        }
        let lcm = comp.iter().fold(BigInt::one(), |acc, &i| {
            acc.lcm(ratio[i].as_ref().unwrap().denom())
        });
        let scaled: Vec<BigInt> = comp
            .iter()
            .map(|&i| (ratio[i].as_ref().unwrap() * &lcm).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, x) in comp.iter().zip(scaled) {
            d[i] = x / &g;
        }
    }
    Ok(d)
}

/// The cycle closed by the off-tree edge `{i, j}`: `i`, up to the common ancestor, down to `j`.
fn tree_cycle(parent: &[Option<usize>], depth: &[usize], i: usize, j: usize) -> Vec<usize> {
    let (mut a, mut b) = (i, j);
    let mut up = vec![a];
    let mut down = vec![b];
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a].expect("tree path");
            up.push(a);
        } else {
            b = parent[b].expect("tree path");
            down.push(b);
        }
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up
}

/// Evaluates both sides of the cycle product identity
/// `b_{i1 i2} b_{i2 i3} ... b_{ik i1} = (-1)^k b_{i2 i1} b_{i3 i2} ... b_{i1 ik}`.
pub fn cycle_condition_holds(m: &IntMatrix, cycle: &[usize]) -> bool {
    let k = cycle.len();
    let next = |t: usize| cycle[(t + 1) % k];
    let forward: BigInt = (0..k).map(|t| m[(cycle[t], next(t))].clone()).product();
    let backward: BigInt = (0..k).map(|t| m[(next(t), cycle[t])].clone()).product();
    if k.is_multiple_of(2) {
        forward == backward
    } else {
        forward == -backward
    }
}

fn verify_symmetrizer(m: &IntMatrix, d: &[BigInt]) -> Result<(), ExchangeError> {
    check_sign_pattern(m)?;
    let n = m.rows();
    if d.len() != n {
        return Err(ExchangeError::SymmetrizerLength {
            expected: n,
            found: d.len(),
        });
    }
    if let Some(i) = d.iter().position(|x| !x.is_positive()) {
        return Err(ExchangeError::NonPositiveSymmetrizer(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if &d[i] * &m[(i, j)] != -(&d[j] * &m[(j, i)]) {
                return Err(ExchangeError::SymmetrizerMismatch(i, j));
            }
        }
    }
    Ok(())
}

/// A skew-symmetrizable square integer matrix together with a symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    b: IntMatrix,
    d: Vec<BigInt>,
}

impl ExchangeMatrix {
    /// Validates `b` and attaches its minimal symmetrizer.
    pub fn new(b: IntMatrix) -> Result<Self, ExchangeError> {
        let d = check_skew_symmetrizable(&b)?;
        Ok(ExchangeMatrix { b, d })
    }

    /// Validates `b` against an explicitly chosen symmetrizer, which need not be minimal.
    pub fn with_symmetrizer(b: IntMatrix, d: Vec<BigInt>) -> Result<Self, ExchangeError> {
        verify_symmetrizer(&b, &d)?;
        Ok(ExchangeMatrix { b, d })
    }

    pub fn from_rows<T: Into<BigInt>, const N: usize>(rows: [[T; N]; N]) -> Result<Self, ExchangeError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn size(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.b[(i, j)]
    }

    /// `|b_ij · b_ji|`, the weight of the diagram edge between `i` and `j`.
    pub fn weight(&self, i: usize, j: usize) -> BigInt {
        (&self.b[(i, j)] * &self.b[(j, i)]).abs()
    }

    /// The skew-symmetric matrix `D·B`.
    pub fn skew_form(&self) -> IntMatrix {
        self.b.scale_rows(&self.d)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components(&self.b)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Matrix mutation at `k`; the symmetrizer is unchanged.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, ExchangeError> {
        if k >= self.size() {
            return Err(ExchangeError::IndexOutOfRange {
                index: k,
                size: self.size(),
            });
        }
        Ok(ExchangeMatrix {
            b: mutate_entries(&self.b, k),
            d: self.d.clone(),
        })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<ExchangeMatrix, ExchangeError> {
        seq.iter().try_fold(self.clone(), |b, &k| b.mutate(k))
    }

    /// Principal submatrix on `indices`, keeping the restricted symmetrizer.
    pub fn restrict(&self, indices: &[usize]) -> ExchangeMatrix {
        ExchangeMatrix {
            b: self.b.submatrix(indices, indices),
            d: indices.iter().map(|&i| self.d[i].clone()).collect(),
        }
    }
}

/// An `m×n` matrix with skew-symmetrizable top block and `m - n` frozen rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedMatrix {
    b: IntMatrix,
    principal: ExchangeMatrix,
    /// Symmetrizer for all `m` indices; the first `n` entries are the principal one.
    d: Vec<BigInt>,
}

impl ExtendedMatrix {
    /// Validates the principal block and derives symmetrizer values for frozen rows.
    ///
    /// A frozen row whose support lies on indices sharing one symmetrizer value `c`
    /// gets `c`, which makes the completion's upper-right block exactly `-Lᵀ`.
    /// Otherwise the smallest value keeping the completion integral is used.
    pub fn new(b: IntMatrix) -> Result<Self, ExchangeError> {
        let n = b.cols();
        if b.rows() < n {
            return Err(ExchangeError::TooFewRows {
                rows: b.rows(),
                cols: n,
            });
        }
        let top: Vec<usize> = (0..n).collect();
        let principal = ExchangeMatrix::new(b.submatrix(&top, &top))?;
        let mut d = principal.d.clone();
        for r in n..b.rows() {
            d.push(frozen_symmetrizer(b.row(r), &principal.d));
        }
        Ok(ExtendedMatrix { b, principal, d })
    }

    /// Validates `b` against a full symmetrizer of length `m`.
    pub fn with_symmetrizer(b: IntMatrix, d: Vec<BigInt>) -> Result<Self, ExchangeError> {
        let n = b.cols();
        if b.rows() < n {
            return Err(ExchangeError::TooFewRows {
                rows: b.rows(),
                cols: n,
            });
        }
        if d.len() != b.rows() {
            return Err(ExchangeError::SymmetrizerLength {
                expected: b.rows(),
                found: d.len(),
            });
        }
        let top: Vec<usize> = (0..n).collect();
        let principal = ExchangeMatrix::with_symmetrizer(b.submatrix(&top, &top), d[..n].to_vec())?;
        if let Some(r) = (n..b.rows()).find(|&r| !d[r].is_positive()) {
            return Err(ExchangeError::NonPositiveSymmetrizer(r));
        }
        let ext = ExtendedMatrix { b, principal, d };
        ext.completion()?;
        Ok(ext)
    }

    /// The `2n×n` principal-coefficient extension `[B; I]`.
    pub fn principal_extension(b: &ExchangeMatrix) -> ExtendedMatrix {
        let n = b.size();
        let m = IntMatrix::from_fn(2 * n, n, |i, j| {
            if i < n {
                b.b[(i, j)].clone()
            } else if i - n == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let mut d = b.d.clone();
        d.extend(b.d.iter().cloned());
        ExtendedMatrix {
            b: m,
            principal: b.clone(),
            d,
        }
    }

    /// An extended matrix without frozen rows.
    pub fn from_exchange(b: &ExchangeMatrix) -> ExtendedMatrix {
        ExtendedMatrix {
            b: b.b.clone(),
            principal: b.clone(),
            d: b.d.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.b.rows()
    }

    pub fn mutable_count(&self) -> usize {
        self.b.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn principal(&self) -> &ExchangeMatrix {
        &self.principal
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.d
    }

    /// The frozen rows `L`, as an `(m-n)×n` matrix.
    pub fn frozen_rows(&self) -> IntMatrix {
        let n = self.mutable_count();
        let rows: Vec<usize> = (n..self.rows()).collect();
        let cols: Vec<usize> = (0..n).collect();
        self.b.submatrix(&rows, &cols)
    }

    fn check_index(&self, k: usize) -> Result<(), ExchangeError> {
        if k >= self.rows() {
            Err(ExchangeError::IndexOutOfRange {
                index: k,
                size: self.rows(),
            })
        } else if k >= self.mutable_count() {
            Err(ExchangeError::FrozenIndex {
                index: k,
                mutable: self.mutable_count(),
            })
        } else {
            Ok(())
        }
    }

    /// Mutation at a mutable index, applied to all `m` rows directly.
    pub fn mutate(&self, k: usize) -> Result<ExtendedMatrix, ExchangeError> {
        self.check_index(k)?;
        Ok(ExtendedMatrix {
            b: mutate_entries(&self.b, k),
            principal: self.principal.mutate(k)?,
            d: self.d.clone(),
        })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<ExtendedMatrix, ExchangeError> {
        seq.iter().try_fold(self.clone(), |b, &k| b.mutate(k))
    }

    /// Mutation computed as the left `m×n` block of the mutated square completion.
    pub fn mutate_via_bullet(&self, k: usize) -> Result<ExtendedMatrix, ExchangeError> {
        self.check_index(k)?;
        let square = self.bullet()?.into_exchange().mutate(k)?;
        let rows: Vec<usize> = (0..self.rows()).collect();
        let cols: Vec<usize> = (0..self.mutable_count()).collect();
        let b = square.matrix().submatrix(&rows, &cols);
        Ok(ExtendedMatrix {
            principal: self.principal.mutate(k)?,
            b,
            d: self.d.clone(),
        })
    }

    fn completion(&self) -> Result<IntMatrix, ExchangeError> {
        let (m, n) = (self.rows(), self.mutable_count());
        let mut out = IntMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..n {
                out[(i, j)] = self.b[(i, j)].clone();
            }
        }
        for r in n..m {
            for i in 0..n {
                let l = &self.b[(r, i)];
                if l.is_zero() {
                    continue;
                }
                let num = -(&self.d[r] * l);
                let (q, rem) = num.div_rem(&self.d[i]);
                if !rem.is_zero() {
                    return Err(ExchangeError::NonIntegralCompletion { row: i, col: r });
                }
                out[(i, r)] = q;
            }
        }
        Ok(out)
    }

    /// The square completion: left block `B̃`, upper-right block determined by the
    /// symmetrizer (equal to `-Lᵀ` whenever frozen rows touch indices of equal
    /// symmetrizer value), lower-right block zero. Verified skew-symmetrizable.
    pub fn bullet(&self) -> Result<BulletMatrix, ExchangeError> {
        let entries = self.completion()?;
        verify_symmetrizer(&entries, &self.d)?;
        Ok(BulletMatrix {
            entries,
            d: self.d.clone(),
            mutable: self.mutable_count(),
        })
    }

    /// Keeps the mutable columns in `keep`; all other indices become frozen rows.
    ///
    /// Rows are reordered as `keep` first, then the remaining rows in their
    /// original order. Mutations at kept indices commute with this restriction.
    pub fn restrict_mutable(&self, keep: &[usize]) -> Result<ExtendedMatrix, ExchangeError> {
        for &k in keep {
            self.check_index(k)?;
        }
        let mut rows: Vec<usize> = keep.to_vec();
        rows.extend((0..self.rows()).filter(|r| !keep.contains(r)));
        let b = self.b.submatrix(&rows, keep);
        let d = rows.iter().map(|&r| self.d[r].clone()).collect();
        ExtendedMatrix::with_symmetrizer(b, d)
    }
}

fn frozen_symmetrizer(row: &[BigInt], d: &[BigInt]) -> BigInt {
    let support: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
    let Some(&first) = support.first() else {
        return BigInt::one();
    };
    if support.iter().all(|&i| d[i] == d[first]) {
        return d[first].clone();
    }
    support.iter().fold(BigInt::one(), |acc, &i| {
        acc.lcm(&(&d[i] / d[i].gcd(&row[i])))
    })
}

/// The `m×m` skew-symmetrizable completion of an extended matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BulletMatrix {
    entries: IntMatrix,
    d: Vec<BigInt>,
    mutable: usize,
}

impl BulletMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.d
    }

    pub fn mutable_count(&self) -> usize {
        self.mutable
    }

    pub fn into_exchange(self) -> ExchangeMatrix {
        ExchangeMatrix {
            b: self.entries,
            d: self.d,
        }
    }

    pub fn left_block(&self) -> IntMatrix {
        let rows: Vec<usize> = (0..self.entries.rows()).collect();
        let cols: Vec<usize> = (0..self.mutable).collect();
        self.entries.submatrix(&rows, &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Smallest positive symmetrizer with entries up to `bound`, by exhaustive search.
    fn brute_symmetrizer(m: &IntMatrix, bound: i64) -> Option<Vec<BigInt>> {
        let n = m.rows();
        let mut d = vec![1i64; n];
        loop {
            let ok = (0..n).all(|i| {
                (0..n).all(|j| BigInt::from(d[i]) * &m[(i, j)] == -(BigInt::from(d[j]) * &m[(j, i)]))
            });
            if ok {
                return Some(ints(&d));
            }
            let mut t = 0;
            loop {
                if t == n {
                    return None;
                }
                d[t] += 1;
                if d[t] <= bound {
                    break;
                }
                d[t] = 1;
                t += 1;
            }
        }
    }

    #[test]
    fn symmetrizer_examples() {
        let skew = IntMatrix::from_rows([[0, 1], [-1, 0]]);
        assert_eq!(check_skew_symmetrizable(&skew).unwrap(), ints(&[1, 1]));
        let b2 = IntMatrix::from_rows([[0, 2], [-1, 0]]);
        assert_eq!(check_skew_symmetrizable(&b2).unwrap(), ints(&[1, 2]));
        assert_eq!(brute_symmetrizer(&b2, 6).unwrap(), ints(&[1, 2]));
    }

    #[test]
    fn inconsistent_cycle_is_reported() {
        // b12 b23 b31 = 2 but -(b21 b32 b13) = 1
        let m = IntMatrix::from_rows([[0, 2, -1], [-1, 0, 1], [1, -1, 0]]);
        assert!(!cycle_condition_holds(&m, &[0, 1, 2]));
        match check_skew_symmetrizable(&m) {
            Err(ExchangeError::InconsistentCycle(c)) => {
                let mut c = c;
                c.sort_unstable();
                assert_eq!(c, vec![0, 1, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(brute_symmetrizer(&m, 8), None);
    }

    #[test]
    fn sign_violations() {
        let m = IntMatrix::from_rows([[0, 1], [1, 0]]);
        assert_eq!(
            check_skew_symmetrizable(&m),
            Err(ExchangeError::NotSignSkewSymmetric(0, 1))
        );
        let m = IntMatrix::from_rows([[0, 1], [0, 0]]);
        assert_eq!(
            check_skew_symmetrizable(&m),
            Err(ExchangeError::NotSignSkewSymmetric(0, 1))
        );
        let m = IntMatrix::from_rows([[1, 0], [0, 0]]);
        assert_eq!(check_skew_symmetrizable(&m), Err(ExchangeError::NonZeroDiagonal(0)));
    }

    #[test]
    fn symmetrizer_is_minimal_per_component() {
        // two components: {0,1} with ratio 3, {2} isolated
        let m = IntMatrix::from_rows([[0, 3, 0], [-1, 0, 0], [0, 0, 0]]);
        assert_eq!(check_skew_symmetrizable(&m).unwrap(), ints(&[1, 3, 1]));
        let m = IntMatrix::from_rows([[0, 2, 0], [-4, 0, 0], [0, 0, 0]]);
        assert_eq!(check_skew_symmetrizable(&m).unwrap(), ints(&[2, 1, 1]));
    }

    #[test]
    fn mutation_examples() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().matrix(), &IntMatrix::from_rows([[0, -1], [1, 0]]));
        let a3 = ExchangeMatrix::from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap();
        let mu = a3.mutate(1).unwrap();
        assert_eq!(
            mu.matrix(),
            &IntMatrix::from_rows([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])
        );
        assert_eq!(mu.mutate(1).unwrap(), a3);
        assert!(matches!(b.mutate(2), Err(ExchangeError::IndexOutOfRange { .. })));
    }

    #[test]
    fn extended_mutation_examples() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let ext = ExtendedMatrix::principal_extension(&b);
        assert_eq!(
            ext.matrix(),
            &IntMatrix::from_rows([[0, 1], [-1, 0], [1, 0], [0, 1]])
        );
        let mu = ext.mutate(0).unwrap();
        // row 3 picks up sgn(1)[1*1]_+ in column 2
        assert_eq!(
            mu.matrix(),
            &IntMatrix::from_rows([[0, -1], [1, 0], [-1, 1], [0, 1]])
        );
        assert_eq!(ext.mutate_via_bullet(0).unwrap(), mu);

        let ext = ExtendedMatrix::new(IntMatrix::from_rows([[0, 2], [-2, 0], [1, 0]])).unwrap();
        let mu = ext.mutate(1).unwrap();
        assert_eq!(mu.matrix(), &IntMatrix::from_rows([[0, -2], [2, 0], [1, 0]]));
        assert_eq!(ext.mutate_via_bullet(1).unwrap(), mu);
        assert_eq!(mu.mutate(1).unwrap(), ext);
        assert_eq!(
            ext.mutate(2),
            Err(ExchangeError::FrozenIndex { index: 2, mutable: 2 })
        );
    }

    #[test]
    fn principal_extension_of_rank_one() {
        let zero = ExchangeMatrix::new(IntMatrix::zeros(1, 1)).unwrap();
        let ext = ExtendedMatrix::principal_extension(&zero);
        assert_eq!(ext.matrix(), &IntMatrix::from_rows([[0], [1]]));
        assert_eq!(ext.principal(), &zero);
    }

    #[test]
    fn bullet_examples() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let bullet = ExtendedMatrix::principal_extension(&b).bullet().unwrap();
        assert_eq!(
            bullet.matrix(),
            &IntMatrix::from_rows([
                [0, 1, -1, 0],
                [-1, 0, 0, -1],
                [1, 0, 0, 0],
                [0, 1, 0, 0]
            ])
        );
        let ext = ExtendedMatrix::new(IntMatrix::from_rows([[0, 2], [-2, 0], [1, 0]])).unwrap();
        let bullet = ext.bullet().unwrap();
        assert_eq!(
            bullet.matrix(),
            &IntMatrix::from_rows([[0, 2, -1], [-2, 0, 0], [1, 0, 0]])
        );
        assert_eq!(&bullet.left_block(), ext.matrix());
    }

    #[test]
    fn completion_follows_symmetrizer_for_mixed_rows() {
        // principal symmetrizer (1, 5); the frozen row touches both indices
        let ext = ExtendedMatrix::new(IntMatrix::from_rows([[0, 5], [-1, 0], [1, -5]])).unwrap();
        assert_eq!(ext.symmetrizer(), ints(&[1, 5, 1]).as_slice());
        let bullet = ext.bullet().unwrap();
        assert_eq!(
            bullet.matrix(),
            &IntMatrix::from_rows([[0, 5, -1], [-1, 0, 1], [1, -5, 0]])
        );
        assert!(check_skew_symmetrizable(bullet.matrix()).is_ok());
    }

    #[test]
    fn explicit_symmetrizer_must_make_completion_integral() {
        let b = IntMatrix::from_rows([[0, 2], [-1, 0], [1, 0]]);
        // d = (1, 2, 2): completion entry -(2 * 1) / 1 is integral
        assert!(ExtendedMatrix::with_symmetrizer(b.clone(), ints(&[1, 2, 2])).is_ok());
        let b = IntMatrix::from_rows([[0, 2], [-1, 0], [0, 1]]);
        assert_eq!(
            ExtendedMatrix::with_symmetrizer(b, ints(&[1, 2, 1])),
            Err(ExchangeError::NonIntegralCompletion { row: 1, col: 2 })
        );
    }

    #[test]
    fn restriction_commutes_with_mutation() {
        let b = ExchangeMatrix::from_rows([[0, 1, 0], [-1, 0, 2], [0, -1, 0]]).unwrap();
        let ext = ExtendedMatrix::principal_extension(&b);
        let keep = [1, 2];
        let sub = ext.restrict_mutable(&keep).unwrap();
        assert_eq!(sub.rows(), 6);
        let lhs = ext.mutate(2).unwrap().restrict_mutable(&keep).unwrap();
        let rhs = sub.mutate(1).unwrap();
        assert_eq!(lhs.matrix(), rhs.matrix());
    }
}
