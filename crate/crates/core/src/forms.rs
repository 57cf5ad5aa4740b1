//! Bilinear forms attached to mutation: integer base changes for the skew form
//! `D·B` and the symmetric form `D·A`, and their reduction modulo 2.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::companion::{Companion, CompanionError};
use crate::exchange::{BulletMatrix, ExchangeError, ExchangeMatrix};
use crate::matrix::IntMatrix;

/// An element of the two-element field.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2(bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);

    pub fn from_int(x: &BigInt) -> F2 {
        F2(x.is_odd())
    }

    pub fn is_one(self) -> bool {
        self.0
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        self + rhs
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl AddAssign for F2 {
    fn add_assign(&mut self, rhs: F2) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for F2 {
    fn sum<I: Iterator<Item = F2>>(iter: I) -> F2 {
        iter.fold(F2::ZERO, Add::add)
    }
}

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn reduce(v: &[BigInt]) -> Vec<F2> {
    v.iter().map(F2::from_int).collect()
}

/// An alternating bilinear form over the two-element field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mod2Form {
    size: usize,
    g: Vec<F2>,
}

impl Mod2Form {
    /// Reduces an integer skew-symmetric (or symmetric with even diagonal) matrix.
    pub fn from_integer_form(m: &IntMatrix) -> Mod2Form {
        assert!(m.is_square());
        let size = m.rows();
        let g: Vec<F2> = m.entries().iter().map(F2::from_int).collect();
        let form = Mod2Form { size, g };
        assert!(form.is_alternating(), "reduction is not alternating");
        form
    }

    /// `(D·B•) mod 2`.
    pub fn from_bullet(b: &BulletMatrix) -> Mod2Form {
        Self::from_integer_form(&b.matrix().scale_rows(b.symmetrizer()))
    }

    /// `(D·B) mod 2`.
    pub fn from_exchange(b: &ExchangeMatrix) -> Mod2Form {
        Self::from_integer_form(&b.skew_form())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> F2 {
        self.g[i * self.size + j]
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.size).all(|i| {
            self.entry(i, i) == F2::ZERO && (0..i).all(|j| self.entry(i, j) == self.entry(j, i))
        })
    }

    /// `vᵀ G w`.
    pub fn pairing(&self, v: &[F2], w: &[F2]) -> F2 {
        assert_eq!(v.len(), self.size);
        assert_eq!(w.len(), self.size);
        (0..self.size)
            .filter(|&i| v[i].is_one())
            .map(|i| (0..self.size).map(|j| self.entry(i, j) * w[j]).sum::<F2>())
            .sum()
    }

    /// `G w`, the functional `v ↦ vᵀ G w` as a vector.
    pub fn apply(&self, w: &[F2]) -> Vec<F2> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j) * w[j]).sum())
            .collect()
    }
}

impl fmt::Debug for Mod2Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mod2Form[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.size {
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

pub fn unit_vector(size: usize, i: usize) -> Vec<F2> {
    let mut v = vec![F2::ZERO; size];
    v[i] = F2::ONE;
    v
}

fn base_change(n: usize, k: usize, b: &IntMatrix, shift: impl Fn(usize) -> BigInt) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    p[(k, k)] = -BigInt::one();
    for i in 0..n {
        if i != k && b[(k, i)].is_negative() {
            p[(k, i)] = -shift(i);
        }
    }
    p
}

/// Column `i` of the result is the new basis vector `e'_i` for the skew form:
/// `e'_k = -e_k`, and `e'_i = e_i - B_ki e_k` when `B_ki < 0`.
pub fn skew_base_change(b: &ExchangeMatrix, k: usize) -> IntMatrix {
    let m = b.matrix();
    base_change(b.size(), k, m, |i| m[(k, i)].clone())
}

/// The same shape with `A_ki` in place of `B_ki`; the shifts are chosen by the
/// sign of `B_ki`.
pub fn symmetric_base_change(c: &Companion, k: usize) -> IntMatrix {
    let a = c.matrix();
    base_change(c.size(), k, c.host().matrix(), |i| a[(k, i)].clone())
}

/// New coordinates of a vector after the symmetric base change at `k`:
/// `u'_k = -u_k - Σ A_ki u_i` over `i` with `B_ki < 0`, other coordinates unchanged.
pub fn transform_coordinates(c: &Companion, k: usize, u: &[BigInt]) -> Vec<BigInt> {
    let a = c.matrix();
    let b = c.host().matrix();
    let mut out = u.to_vec();
    let shift: BigInt = (0..u.len())
        .filter(|&i| i != k && b[(k, i)].is_negative())
        .map(|i| &a[(k, i)] * &u[i])
        .sum();
    out[k] = -&u[k] - shift;
    out
}

/// The coordinate rule with the opposite sign on the sum. It agrees with
/// [`transform_coordinates`] modulo 2, which is all the parity argument uses.
pub fn transform_coordinates_plus(c: &Companion, k: usize, u: &[BigInt]) -> Vec<BigInt> {
    let a = c.matrix();
    let b = c.host().matrix();
    let mut out = u.to_vec();
    let shift: BigInt = (0..u.len())
        .filter(|&i| i != k && b[(k, i)].is_negative())
        .map(|i| &a[(k, i)] * &u[i])
        .sum();
    out[k] = -&u[k] + shift;
    out
}

/// The current basis, as columns in standard coordinates, after a sequence of base changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTrack {
    x: IntMatrix,
    history: Vec<usize>,
}

impl BasisTrack {
    pub fn new(size: usize) -> BasisTrack {
        BasisTrack {
            x: IntMatrix::identity(size),
            history: Vec::new(),
        }
    }

    pub fn apply(&mut self, k: usize, change: &IntMatrix) {
        self.x = self.x.mul(change);
        self.history.push(k);
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.x
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// The correction `v_i = x_i - e_i` of basis vector `i`.
    pub fn correction(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.x.column(i);
        v[i] -= BigInt::one();
        v
    }
}

/// Mutates `b0` along `seq` while tracking the skew base changes.
pub fn track_skew(b0: &ExchangeMatrix, seq: &[usize]) -> Result<(BasisTrack, ExchangeMatrix), ExchangeError> {
    let mut track = BasisTrack::new(b0.size());
    let mut b = b0.clone();
    for &k in seq {
        let next = b.mutate(k)?;
        track.apply(k, &skew_base_change(&b, k));
        b = next;
    }
    Ok((track, b))
}

/// Mutates a companion along `seq` while tracking the symmetric base changes.
pub fn track_symmetric(c0: &Companion, seq: &[usize]) -> Result<(BasisTrack, Companion), CompanionError> {
    let mut track = BasisTrack::new(c0.size());
    let mut c = c0.clone();
    for &k in seq {
        let next = c.mutate(k)?;
        track.apply(k, &symmetric_base_change(&c, k));
        c = next;
    }
    Ok((track, c))
}

/// `Xᵀ M X`.
pub fn gram(x: &IntMatrix, m: &IntMatrix) -> IntMatrix {
    x.transpose().mul(m).mul(x)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Mod2Error {
    #[error("index {0} does not have odd symmetrizer and odd radical coordinate")]
    HypothesisViolated(usize),
    #[error("vector is not in the radical of the companion")]
    NotRadical,
    #[error(transparent)]
    Companion(#[from] CompanionError),
}

/// Outcome of tracking the parity invariant along a mutation sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2Check {
    /// True when an index with odd `d_l` and odd `u'_l` existed after every step.
    pub holds: bool,
    /// The witness index after each step, starting with the initial one.
    pub trail: Vec<usize>,
    /// The tracked radical vector after the last completed step.
    pub final_vector: Vec<BigInt>,
    /// Step at which no witness was found.
    pub failed_at: Option<usize>,
}

/// Tracks `(μ(B), μ(A), u')` along `seq` and looks for an index with `d_l` and
/// `u'_l` both odd after each step, preferring to keep the previous witness.
///
/// Also checks at every step that `u'` stays a radical vector of the mutated
/// companion, that `X·u' = u`, and that the skew and symmetric bases agree mod 2.
pub fn lemma_mod2_invariant(
    companion: &Companion,
    u: &[BigInt],
    l: usize,
    seq: &[usize],
) -> Result<Mod2Check, Mod2Error> {
    let d = companion.symmetrizer().to_vec();
    let odd = |v: &[BigInt], i: usize| d[i].is_odd() && v[i].is_odd();
    if companion.matrix().mul_vec(u).iter().any(|x| !x.is_zero()) {
        return Err(Mod2Error::NotRadical);
    }
    if l >= u.len() || !odd(u, l) {
        return Err(Mod2Error::HypothesisViolated(l));
    }
    let mut c = companion.clone();
    let mut v = u.to_vec();
    let mut skew = BasisTrack::new(u.len());
    let mut sym = BasisTrack::new(u.len());
    let mut trail = vec![l];
    for (step, &k) in seq.iter().enumerate() {
        let next = c.mutate(k)?;
        let w = transform_coordinates(&c, k, &v);
        let plus_rule = transform_coordinates_plus(&c, k, &v);
        assert!(
            w.iter().zip(&plus_rule).all(|(a, b)| (a - b).is_even()),
            "coordinate rules disagree mod 2"
        );
        skew.apply(k, &skew_base_change(c.host(), k));
        sym.apply(k, &symmetric_base_change(&c, k));
        assert!(
            skew.matrix()
                .entries()
                .iter()
                .zip(sym.matrix().entries())
                .all(|(a, b)| (a - b).is_even()),
            "skew and symmetric bases differ mod 2"
        );
        assert!(next.matrix().mul_vec(&w).iter().all(Zero::is_zero), "radical lost");
        assert_eq!(sym.matrix().mul_vec(&w), u, "coordinates out of sync with basis");
        let form = Mod2Form::from_exchange(next.host());
        assert!(
            form.apply(&reduce(&w)).iter().all(|x| *x == F2::ZERO),
            "radical vector not isotropic mod 2"
        );
        c = next;
        v = w;
        let prev = *trail.last().unwrap();
        let witness = if odd(&v, prev) {
            Some(prev)
        } else {
            (0..v.len()).find(|&i| odd(&v, i))
        };
        match witness {
            Some(i) => trail.push(i),
            None => {
                return Ok(Mod2Check {
                    holds: false,
                    trail,
                    final_vector: v,
                    failed_at: Some(step),
                })
            }
        }
    }
    Ok(Mod2Check {
        holds: true,
        trail,
        final_vector: v,
        failed_at: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::ExtendedMatrix;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(F2::ONE + F2::ONE, F2::ZERO);
        assert_eq!(F2::ONE * F2::ONE, F2::ONE);
        assert_eq!(F2::ONE * F2::ZERO, F2::ZERO);
        assert_eq!(-F2::ONE, F2::ONE);
        assert_eq!(F2::from_int(&BigInt::from(-3)), F2::ONE);
    }

    #[test]
    fn skew_base_change_rank_two() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let p = skew_base_change(&b, 0);
        assert_eq!(p, IntMatrix::from_rows([[-1, 0], [0, 1]]));
        assert_eq!(gram(&p, &b.skew_form()), b.mutate(0).unwrap().skew_form());
        let (track, _) = track_skew(&b, &[]).unwrap();
        assert_eq!(track.matrix(), &IntMatrix::identity(2));
    }

    #[test]
    fn base_changes_are_involutions() {
        let b = ExchangeMatrix::from_rows([[0, 2, -1], [-1, 0, 1], [1, -2, 0]]).unwrap();
        for k in 0..3 {
            let p = skew_base_change(&b, k);
            assert_eq!(p.mul(&p), IntMatrix::identity(3));
        }
    }

    #[test]
    fn gram_identities_along_a_sequence() {
        let b = ExchangeMatrix::from_rows([[0, 1, 0], [-2, 0, 1], [0, -1, 0]]).unwrap();
        let seq = [0, 1, 2, 1, 0, 2, 2, 1];
        let (track, end) = track_skew(&b, &seq).unwrap();
        assert_eq!(gram(track.matrix(), &b.skew_form()), end.skew_form());
        let c = Companion::cartan(&b);
        let (track, end) = track_symmetric(&c, &seq).unwrap();
        assert_eq!(gram(track.matrix(), &c.gram()), end.gram());
    }

    #[test]
    fn mod2_reduction_examples() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let bullet = ExtendedMatrix::principal_extension(&b).bullet().unwrap();
        let g = Mod2Form::from_bullet(&bullet);
        let expected = IntMatrix::from_rows([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(g, Mod2Form::from_integer_form(&expected));
        // d_2 b_21 = 2·(-1) is even
        let b2 = ExchangeMatrix::from_rows([[0, 2], [-1, 0]]).unwrap();
        let g2 = Mod2Form::from_exchange(&b2);
        assert_eq!(g2.entry(1, 0), F2::ZERO);
        assert_eq!(g2.entry(0, 1), F2::ZERO);
    }

    #[test]
    fn pairing_with_frozen_vector() {
        let b = ExchangeMatrix::from_rows([[0, 2], [-2, 0]]).unwrap();
        let bullet = ExtendedMatrix::principal_extension(&b).bullet().unwrap();
        let g = Mod2Form::from_bullet(&bullet);
        let u = reduce(&ints(&[1, 1, 0, 0]));
        assert_eq!(g.pairing(&u, &u), F2::ZERO);
        assert_eq!(g.pairing(&unit_vector(4, 2), &u), F2::ONE);
        assert_eq!(g.pairing(&unit_vector(4, 3), &u), F2::ONE);
    }

    #[test]
    fn coordinate_rule_sign() {
        // the minus sign keeps u' in the radical; the plus sign does not
        let b = ExchangeMatrix::from_rows([[0, 2], [-2, 0]]).unwrap();
        let c = Companion::cartan(&b);
        let u = ints(&[1, 1]);
        let minus = transform_coordinates(&c, 1, &u);
        let plus = transform_coordinates_plus(&c, 1, &u);
        assert_eq!(minus, ints(&[1, 1]));
        assert_eq!(plus, ints(&[1, -3]));
        let mu = c.mutate(1).unwrap();
        assert!(mu.matrix().mul_vec(&minus).iter().all(Zero::is_zero));
        assert!(!mu.matrix().mul_vec(&plus).iter().all(Zero::is_zero));
    }

    #[test]
    fn affine_rank_two_walk() {
        let b = ExchangeMatrix::from_rows([[0, 2], [-2, 0]]).unwrap();
        let c = Companion::cartan(&b);
        let u = ints(&[1, 1]);
        assert!(lemma_mod2_invariant(&c, &u, 0, &[]).unwrap().holds);
        let seq: Vec<usize> = (0..20).map(|t| t % 2).collect();
        let check = lemma_mod2_invariant(&c, &u, 0, &seq).unwrap();
        assert!(check.holds);
        assert_eq!(check.trail.len(), 21);
    }

    #[test]
    fn hypothesis_is_checked() {
        let b = ExchangeMatrix::from_rows([[0, 2], [-2, 0]]).unwrap();
        let c = Companion::cartan(&b);
        assert_eq!(
            lemma_mod2_invariant(&c, &ints(&[2, 2]), 0, &[]),
            Err(Mod2Error::HypothesisViolated(0))
        );
        assert_eq!(
            lemma_mod2_invariant(&c, &ints(&[1, 0]), 0, &[]),
            Err(Mod2Error::NotRadical)
        );
    }
}
