//! Dynkin and extended Dynkin diagrams, the non-extended minimal infinite
//! diagrams, and affine generalized Cartan matrices.
//!
//! Vertex orders (zero-based):
//!
//! | diagram | shape |
//! |---|---|
//! | `A_n`, `B_n`, `C_n` | path `0..n`; `B`/`C` carry weight 2 on the last edge |
//! | `D_n` | path `0..n-1`, vertex `n-1` attached to `n-3` |
//! | `E_n` | path `0..n-1`, vertex `n-1` attached to `2` |
//! | `F_4` | path, weight 2 on `{1,2}` |
//! | `G_2` | one edge of weight 3 |
//! | `~A_n` | cycle `0..n`, closing edge `0 → n` |
//! | `~A_1` | one edge of weight 4 |
//! | `~B_n` | leaves `0,1` on `2`, path `2..=n`, weight 2 on `{n-1,n}` |
//! | `~C_n` | path `0..=n`, weight 2 on both end edges |
//! | `~D_n` | leaves `0,1` on `2`, path `2..=n-2`, leaves `n-1,n` on `n-2` |
//! | `~E_6` | path `0..5`, `5` on `2`, `6` on `5` |
//! | `~E_7` | path `0..7`, `7` on `3` |
//! | `~E_8` | path `0..8`, `8` on `2` |
//! | `~F_4` | path `0..5`, weight 2 on `{1,2}` |
//! | `~G_2` | path `0..3`, weight 3 on `{0,1}` |

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::companion::Companion;
use crate::diagram::Diagram;
use crate::exchange::ExchangeMatrix;
use crate::linalg::{self, Semidefiniteness};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.letter().eq_ignore_ascii_case(s))
    }
}

/// A catalog label such as `D4` or `~B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub family: Family,
    pub rank: usize,
    pub affine: bool,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.affine {
            write!(f, "~")?;
        }
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl Label {
    /// Parses `A3`, `~D4`, `E6`.
    pub fn parse(s: &str) -> Option<Label> {
        let (affine, rest) = match s.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let family = Family::parse(rest.get(..1)?)?;
        let rank = rest.get(1..)?.parse().ok()?;
        Some(Label { family, rank, affine })
    }

    /// Number of vertices of the diagram.
    pub fn vertex_count(&self) -> usize {
        if self.affine {
            self.rank + 1
        } else {
            self.rank
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{label} is not a valid diagram")]
    InvalidRank { label: String },
    #[error("orientation lists {found} edges, diagram has {expected}")]
    OrientationLength { expected: usize, found: usize },
    #[error("this family requires a non-oriented cycle")]
    OrientedCycle,
    #[error("no affine data is provided for {0}")]
    ExcludedFamily(String),
}

/// How to orient the edges of a catalog diagram.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Every edge `(a, b)` of the listed shape as `a → b`.
    #[default]
    Drawing,
    /// Per listed edge, whether to reverse it.
    Flipped(Vec<bool>),
}

/// Unoriented edge list `(a, b, weight)` of a Dynkin diagram.
pub fn dynkin_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize, u32)>, CatalogError> {
    let label = Label {
        family,
        rank,
        affine: false,
    };
    let invalid = || CatalogError::InvalidRank {
        label: label.to_string(),
    };
    let path = |n: usize| -> Vec<(usize, usize, u32)> { (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1)).collect() };
    let edges = match family {
        Family::A if rank >= 1 => path(rank),
        Family::B | Family::C if rank >= 2 => {
            let mut e = path(rank);
            e.last_mut().unwrap().2 = 2;
            e
        }
        Family::D if rank >= 4 => {
            let mut e = path(rank - 1);
            e.push((rank - 3, rank - 1, 1));
            e
        }
        Family::E if (6..=8).contains(&rank) => {
            let mut e = path(rank - 1);
            e.push((2, rank - 1, 1));
            e
        }
        Family::F if rank == 4 => vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)],
        Family::G if rank == 2 => vec![(0, 1, 3)],
        _ => return Err(invalid()),
    };
    Ok(edges)
}

/// Unoriented edge list of an extended Dynkin diagram with `rank + 1` vertices.
pub fn extended_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize, u32)>, CatalogError> {
    let label = Label {
        family,
        rank,
        affine: true,
    };
    let invalid = || CatalogError::InvalidRank {
        label: label.to_string(),
    };
    let n = rank;
    let path = |from: usize, to: usize| -> Vec<(usize, usize, u32)> { (from..to).map(|i| (i, i + 1, 1)).collect() };
    let edges = match family {
        Family::A if n == 1 => vec![(0, 1, 4)],
        Family::A if n >= 2 => {
            let mut e = path(0, n);
            e.push((0, n, 1));
            e
        }
        Family::B if n >= 3 => {
            let mut e = vec![(0, 2, 1), (1, 2, 1)];
            e.extend(path(2, n));
            e.last_mut().unwrap().2 = 2;
            e
        }
        Family::C if n >= 2 => {
            let mut e = path(0, n);
            e[0].2 = 2;
            e.last_mut().unwrap().2 = 2;
            e
        }
        Family::D if n >= 4 => {
            let mut e = vec![(0, 2, 1), (1, 2, 1)];
            e.extend(path(2, n - 2));
            e.push((n - 2, n - 1, 1));
            e.push((n - 2, n, 1));
            e
        }
        Family::E if n == 6 => {
            let mut e = path(0, 4);
            e.push((2, 5, 1));
            e.push((5, 6, 1));
            e
        }
        Family::E if n == 7 => {
            let mut e = path(0, 6);
            e.push((3, 7, 1));
            e
        }
        Family::E if n == 8 => {
            let mut e = path(0, 7);
            e.push((2, 8, 1));
            e
        }
        Family::F if n == 4 => vec![(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 1)],
        Family::G if n == 2 => vec![(0, 1, 3), (1, 2, 1)],
        _ => return Err(invalid()),
    };
    Ok(edges)
}

/// Builds an all-mutable diagram from an unoriented edge list.
pub fn orient(size: usize, edges: &[(usize, usize, u32)], orientation: &Orientation) -> Result<Diagram, CatalogError> {
    let flips: Vec<bool> = match orientation {
        Orientation::Drawing => vec![false; edges.len()],
        Orientation::Flipped(f) => {
            if f.len() != edges.len() {
                return Err(CatalogError::OrientationLength {
                    expected: edges.len(),
                    found: f.len(),
                });
            }
            f.clone()
        }
    };
    let oriented: Vec<(usize, usize, u32)> = edges
        .iter()
        .zip(&flips)
        .map(|(&(a, b, w), &flip)| if flip { (b, a, w) } else { (a, b, w) })
        .collect();
    Ok(Diagram::from_edges(size, size, &oriented).expect("catalog edges are well formed"))
}

pub fn dynkin(family: Family, rank: usize, orientation: &Orientation) -> Result<Diagram, CatalogError> {
    orient(rank, &dynkin_edges(family, rank)?, orientation)
}

pub fn extended_dynkin(family: Family, rank: usize, orientation: &Orientation) -> Result<Diagram, CatalogError> {
    let d = orient(rank + 1, &extended_edges(family, rank)?, orientation)?;
    if family == Family::A && rank >= 2 && d.induced_cycles().iter().any(|c| c.oriented) {
        return Err(CatalogError::OrientedCycle);
    }
    Ok(d)
}

pub fn diagram(label: Label, orientation: &Orientation) -> Result<Diagram, CatalogError> {
    if label.affine {
        extended_dynkin(label.family, label.rank, orientation)
    } else {
        dynkin(label.family, label.rank, orientation)
    }
}

/// Valid Dynkin labels with rank at most `max_rank`. `C2` is omitted since it equals `B2`.
pub fn dynkin_labels(max_rank: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for rank in 1..=max_rank {
            if family == Family::C && rank == 2 {
                continue;
            }
            if dynkin_edges(family, rank).is_ok() {
                out.push(Label {
                    family,
                    rank,
                    affine: false,
                });
            }
        }
    }
    out
}

/// Valid extended Dynkin labels `~X_n` with `n ≤ max_rank`.
pub fn extended_labels(max_rank: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for rank in 1..=max_rank {
            if extended_edges(family, rank).is_ok() {
                out.push(Label {
                    family,
                    rank,
                    affine: true,
                });
            }
        }
    }
    out
}

/// Every orientation of the edge list, as flip vectors.
pub fn all_orientations(edge_count: usize) -> impl Iterator<Item = Orientation> {
    assert!(edge_count < 24);
    (0u32..1 << edge_count).map(move |mask| Orientation::Flipped((0..edge_count).map(|t| mask >> t & 1 == 1).collect()))
}

/// Every acyclic orientation of a shape.
pub fn acyclic_orientations(size: usize, edges: &[(usize, usize, u32)]) -> Vec<Diagram> {
    all_orientations(edges.len())
        .map(|o| orient(size, edges, &o).unwrap())
        .filter(Diagram::is_acyclic)
        .collect()
}

/// One shape of minimal infinite type that is not extended Dynkin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraShape {
    pub name: String,
    pub size: usize,
    pub edges: Vec<(usize, usize, u32)>,
}

impl ExtraShape {
    /// The shape in its listed (acyclic) orientation.
    pub fn diagram(&self) -> Diagram {
        orient(self.size, &self.edges, &Orientation::Drawing).unwrap()
    }

    pub fn acyclic_orientations(&self) -> Vec<Diagram> {
        acyclic_orientations(self.size, &self.edges)
    }
}

/// The six shapes: an edge of weight `a` for `5 ≤ a ≤ max_a`, paths with weights
/// `(3,2)` and `(3,3)`, the square with opposite weight-2 edges, and triangles with
/// weights `{2,2,1}` and `{3,3,1}`. Listed orientations are acyclic.
pub fn extra_shapes(max_a: u32) -> Vec<ExtraShape> {
    let mut out: Vec<ExtraShape> = (5..=max_a)
        .map(|a| ExtraShape {
            name: format!("edge({a})"),
            size: 2,
            edges: vec![(0, 1, a)],
        })
        .collect();
    let fixed = [
        ("path(3,2)", 3, vec![(0, 1, 3), (1, 2, 2)]),
        ("path(3,3)", 3, vec![(0, 1, 3), (1, 2, 3)]),
        ("square(2,1,2,1)", 4, vec![(0, 1, 2), (1, 2, 1), (2, 3, 2), (0, 3, 1)]),
        ("triangle(2,2,1)", 3, vec![(0, 1, 2), (1, 2, 2), (0, 2, 1)]),
        ("triangle(3,3,1)", 3, vec![(0, 1, 3), (1, 2, 3), (0, 2, 1)]),
    ];
    for (name, size, edges) in fixed {
        out.push(ExtraShape {
            name: name.to_string(),
            size,
            edges,
        });
    }
    out
}

pub fn extra_diagrams(max_a: u32) -> Vec<Diagram> {
    extra_shapes(max_a).iter().map(ExtraShape::diagram).collect()
}

/// An affine generalized Cartan matrix with symmetrizer, primitive null vector
/// and an index where both the symmetrizer and the null vector are odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineData {
    pub label: Label,
    pub a: IntMatrix,
    pub d: Vec<BigInt>,
    pub u: Vec<BigInt>,
    pub odd_index: usize,
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Affine data whose diagram is `extended_dynkin(family, rank, _)`.
///
/// `~B_n` uses the matrix with `A[n-1][n] = -2`, `A[n][n-1] = -1`; `~F_4` uses
/// `A[1][2] = -1`, `A[2][1] = -2`; `~G_2` uses `A[0][1] = -1`, `A[1][0] = -3`.
/// Every entry is checked by [`AffineData::verify`].
pub fn affine_gcm(family: Family, rank: usize) -> Result<AffineData, CatalogError> {
    let label = Label {
        family,
        rank,
        affine: true,
    };
    if family == Family::C {
        return Err(CatalogError::ExcludedFamily(label.to_string()));
    }
    let edges = extended_edges(family, rank)?;
    let size = rank + 1;
    let mut a = IntMatrix::identity(size);
    for i in 0..size {
        a[(i, i)] = BigInt::from(2);
    }
    for &(i, j, w) in &edges {
        let (aij, aji) = match (family, w) {
            (_, 1) => (-1, -1),
            (Family::A, 4) => (-2, -2),
            (Family::B, 2) => (-2, -1),
            (Family::F, 2) => (-1, -2),
            (Family::G, 3) => (-1, -3),
            _ => unreachable!("unexpected weight in affine table"),
        };
        a[(i, j)] = BigInt::from(aij);
        a[(j, i)] = BigInt::from(aji);
    }
    let (d, u, odd_index) = match family {
        Family::A => (vec![1; size], vec![1; size], 0),
        Family::B => {
            let mut d = vec![1; size];
            d[rank] = 2;
            let mut u = vec![2; size];
            u[0] = 1;
            u[1] = 1;
            u[rank] = 1;
            (d, u, 0)
        }
        Family::D => {
            let mut u = vec![2; size];
            for leaf in [0, 1, rank - 1, rank] {
                u[leaf] = 1;
            }
            (vec![1; size], u, 0)
        }
        Family::E => match rank {
            6 => (vec![1; 7], vec![1, 2, 3, 2, 1, 2, 1], 0),
            7 => (vec![1; 8], vec![1, 2, 3, 4, 3, 2, 1, 2], 0),
            _ => (vec![1; 9], vec![2, 4, 6, 5, 4, 3, 2, 1, 3], 7),
        },
        Family::F => (vec![2, 2, 1, 1, 1], vec![1, 2, 3, 2, 1], 2),
        Family::G => (vec![3, 1, 1], vec![1, 2, 1], 0),
        Family::C => unreachable!(),
    };
    let data = AffineData {
        label,
        a,
        d: ints(&d),
        u: ints(&u),
        odd_index,
    };
    data.verify().expect("affine table entry fails verification");
    Ok(data)
}

/// The rank-2 twisted affine matrix with no index where `d` and `u` are both odd.
pub fn twisted_rank2() -> AffineData {
    AffineData {
        label: Label {
            family: Family::A,
            rank: 2,
            affine: true,
        },
        a: IntMatrix::from_rows([[2, -4], [-1, 2]]),
        d: ints(&[1, 4]),
        u: ints(&[2, 1]),
        odd_index: usize::MAX,
    }
}

impl AffineData {
    /// Checks symmetry of `D·A`, `A·u = 0`, primitivity, corank 1 and the odd index.
    pub fn verify(&self) -> Result<(), String> {
        let gram = self.a.scale_rows(&self.d);
        if !gram.is_symmetric() {
            return Err("D·A is not symmetric".into());
        }
        if self.a.mul_vec(&self.u).iter().any(|x| !x.is_zero()) {
            return Err("u is not a null vector".into());
        }
        if linalg::kernel_basis(&self.a) != vec![self.u.clone()] {
            return Err("u is not the primitive generator of the kernel".into());
        }
        if linalg::classify_symmetric(&gram) != Semidefiniteness::SemipositiveCorank(1) {
            return Err("D·A is not semipositive of corank 1".into());
        }
        let l = self.odd_index;
        let odd = |x: &BigInt| x % 2 != BigInt::zero();
        if l >= self.u.len() || !odd(&self.d[l]) || !odd(&self.u[l]) {
            return Err("no index with odd symmetrizer and odd null coordinate".into());
        }
        Ok(())
    }

    /// An exchange matrix with the given orientation and `|B_ij| = |A_ij|`,
    /// together with `A` as its companion.
    pub fn host(&self, orientation: &Orientation) -> Result<(ExchangeMatrix, Companion), CatalogError> {
        let diagram = extended_dynkin(self.label.family, self.label.rank, orientation)?;
        let n = self.a.rows();
        let b = IntMatrix::from_fn(n, n, |i, j| {
            let x = self.a[(i, j)].clone();
            if i == j || x.is_zero() {
                BigInt::zero()
            } else if diagram.has_arrow(j, i) {
                // B_ij > 0 exactly for an edge j → i
                -x
            } else {
                x
            }
        });
        let host = ExchangeMatrix::with_symmetrizer(b, self.d.clone()).expect("affine host is skew-symmetrizable");
        debug_assert_eq!(Diagram::of_exchange(&host), diagram);
        let companion = Companion::new(self.a.clone(), host.clone()).expect("affine matrix is a companion");
        Ok((host, companion))
    }
}

/// Affine data for every non-`C` extended Dynkin label with `n ≤ max_rank`.
pub fn affine_entries(max_rank: usize) -> Vec<AffineData> {
    extended_labels(max_rank)
        .into_iter()
        .filter(|l| l.family != Family::C)
        .map(|l| affine_gcm(l.family, l.rank).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dynkin_shapes() {
        let a3 = dynkin(Family::A, 3, &Orientation::Drawing).unwrap();
        assert_eq!(a3.edge_count(), 2);
        assert_eq!(a3.max_weight(), BigInt::from(1));
        let b2 = dynkin(Family::B, 2, &Orientation::Drawing).unwrap();
        assert_eq!(b2.weight(0, 1), BigInt::from(2));
        let g2 = dynkin(Family::G, 2, &Orientation::Drawing).unwrap();
        assert_eq!(g2.weight(0, 1), BigInt::from(3));
        let d4 = dynkin(Family::D, 4, &Orientation::Drawing).unwrap();
        assert_eq!(d4.degree(1), 3);
        let e6 = dynkin(Family::E, 6, &Orientation::Drawing).unwrap();
        assert_eq!(e6.degree(2), 3);
        assert!(dynkin(Family::E, 5, &Orientation::Drawing).is_err());
    }

    #[test]
    fn extended_shapes() {
        let a1 = extended_dynkin(Family::A, 1, &Orientation::Drawing).unwrap();
        assert_eq!(a1.size(), 2);
        assert_eq!(a1.weight(0, 1), BigInt::from(4));
        let c2 = extended_dynkin(Family::C, 2, &Orientation::Drawing).unwrap();
        assert_eq!(c2.weight(0, 1), BigInt::from(2));
        assert_eq!(c2.weight(1, 2), BigInt::from(2));
        let d4 = extended_dynkin(Family::D, 4, &Orientation::Drawing).unwrap();
        assert_eq!(d4.size(), 5);
        assert_eq!(d4.degree(2), 4);
        for l in extended_labels(8) {
            let d = diagram(l, &Orientation::Drawing).unwrap();
            assert_eq!(d.size(), l.rank + 1, "{l}");
            assert!(d.is_connected());
        }
    }

    #[test]
    fn cycle_family_rejects_oriented_cycles() {
        let flips = Orientation::Flipped(vec![false, false, true]);
        assert_eq!(extended_dynkin(Family::A, 2, &flips), Err(CatalogError::OrientedCycle));
        assert!(extended_dynkin(Family::A, 2, &Orientation::Drawing).is_ok());
        assert_eq!(
            extended_dynkin(Family::A, 2, &Orientation::Flipped(vec![true])),
            Err(CatalogError::OrientationLength { expected: 3, found: 1 })
        );
    }

    #[test]
    fn extra_shape_count() {
        assert_eq!(extra_shapes(4).len(), 5);
        assert_eq!(extra_shapes(5).len(), 6);
        assert_eq!(extra_shapes(6).len(), 7);
        for s in extra_shapes(6) {
            let d = s.diagram();
            assert!(d.is_acyclic(), "{}", s.name);
            assert!(d.has_perfect_square_cycles(), "{}", s.name);
        }
    }

    #[test]
    fn affine_table_verifies() {
        let rank2 = affine_gcm(Family::A, 1).unwrap();
        assert_eq!(rank2.a, IntMatrix::from_rows([[2, -2], [-2, 2]]));
        assert_eq!(rank2.u, ints(&[1, 1]));
        for entry in affine_entries(8) {
            entry.verify().unwrap();
            let (host, companion) = entry.host(&Orientation::Drawing).unwrap();
            assert_eq!(host.symmetrizer(), entry.d.as_slice());
            assert!(companion.is_admissible(), "{}", entry.label);
        }
        assert!(matches!(affine_gcm(Family::C, 3), Err(CatalogError::ExcludedFamily(_))));
    }

    #[test]
    fn twisted_rank2_has_no_odd_index() {
        let t = twisted_rank2();
        assert!(t.a.scale_rows(&t.d).is_symmetric());
        assert!(t.a.mul_vec(&t.u).iter().all(Zero::is_zero));
        assert!((0..2).all(|i| &t.d[i] % 2 == BigInt::zero() || &t.u[i] % 2 == BigInt::zero()));
    }

    #[test]
    fn labels_round_trip() {
        for l in dynkin_labels(8).into_iter().chain(extended_labels(8)) {
            assert_eq!(Label::parse(&l.to_string()), Some(l));
        }
    }
}
