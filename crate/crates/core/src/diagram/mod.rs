//! Weighted directed diagrams and their mutation.
//!
//! The diagram of a skew-symmetrizable matrix `B` has an edge `i → j` exactly
//! when `B_ji > 0`, weighted by `|B_ij·B_ji|`. Vertices below
//! [`Diagram::mutable_count`] are mutable, the rest are frozen.

mod canonical;
mod cycles;
mod realize;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exchange::{BulletMatrix, ExchangeMatrix, ExtendedMatrix};
use crate::matrix::IntMatrix;

pub use canonical::CanonicalKey;
pub use cycles::Cycle;
pub use realize::RealizeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("vertex {vertex} out of range for {size} vertices")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("vertex {vertex} is frozen")]
    FrozenVertex { vertex: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("more than one edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge weight must be positive")]
    NonPositiveWeight,
    #[error("edge between frozen vertices {0} and {1}")]
    FrozenEdge(usize, usize),
    #[error("weight product on {i}, {k}, {j} is not a perfect square")]
    NonSquareProduct { i: usize, k: usize, j: usize },
}

/// One directed edge `from → to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: BigInt,
}

/// A weighted directed graph without loops or 2-cycles.
///
/// Stored as an antisymmetric matrix `s` with `s[i][j] = w` for an edge `i → j`
/// of weight `w`, and `s[j][i] = -w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    size: usize,
    mutable: usize,
    s: Vec<BigInt>,
}

impl Diagram {
    pub fn edgeless(size: usize, mutable: usize) -> Diagram {
        assert!(mutable <= size);
        Diagram {
            size,
            mutable,
            s: vec![BigInt::zero(); size * size],
        }
    }

    /// Builds a free-standing diagram. Edges between two frozen vertices are allowed
    /// here but never produced by mutation.
    pub fn from_edges<W: Into<BigInt> + Clone>(
        size: usize,
        mutable: usize,
        edges: &[(usize, usize, W)],
    ) -> Result<Diagram, DiagramError> {
        let mut d = Diagram::edgeless(size, mutable.min(size));
        for (from, to, w) in edges {
            d.add_edge(*from, *to, w.clone().into())?;
        }
        Ok(d)
    }

    pub fn add_edge(&mut self, from: usize, to: usize, weight: BigInt) -> Result<(), DiagramError> {
        for v in [from, to] {
            if v >= self.size {
                return Err(DiagramError::VertexOutOfRange {
                    vertex: v,
                    size: self.size,
                });
            }
        }
        if from == to {
            return Err(DiagramError::Loop(from));
        }
        if !weight.is_positive() {
            return Err(DiagramError::NonPositiveWeight);
        }
        if !self.signed(from, to).is_zero() {
            return Err(DiagramError::DuplicateEdge(from, to));
        }
        self.set(from, to, weight);
        Ok(())
    }

    fn set(&mut self, from: usize, to: usize, weight: BigInt) {
        let n = self.size;
        self.s[to * n + from] = -&weight;
        self.s[from * n + to] = weight;
    }

    fn clear(&mut self, a: usize, b: usize) {
        let n = self.size;
        self.s[a * n + b] = BigInt::zero();
        self.s[b * n + a] = BigInt::zero();
    }

    /// `w` if `i → j`, `-w` if `j → i`, zero if not adjacent.
    pub fn signed(&self, i: usize, j: usize) -> &BigInt {
        &self.s[i * self.size + j]
    }

    pub fn weight(&self, i: usize, j: usize) -> BigInt {
        self.signed(i, j).abs()
    }

    pub fn has_arrow(&self, from: usize, to: usize) -> bool {
        self.signed(from, to).is_positive()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        !self.signed(i, j).is_zero()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mutable_count(&self) -> usize {
        self.mutable
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        v >= self.mutable
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&w| self.adjacent(v, w))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Edges ordered by `(from, to)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for from in 0..self.size {
            for to in 0..self.size {
                if self.has_arrow(from, to) {
                    out.push(Edge {
                        from,
                        to,
                        weight: self.signed(from, to).clone(),
                    });
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.s.iter().filter(|x| x.is_positive()).count()
    }

    pub fn max_weight(&self) -> BigInt {
        self.s.iter().max().cloned().unwrap_or_default().max(BigInt::zero())
    }

    /// Largest weight among edges joining two mutable vertices.
    pub fn max_mutable_weight(&self) -> BigInt {
        let mut best = BigInt::zero();
        for i in 0..self.mutable {
            for j in 0..self.mutable {
                let x = self.signed(i, j);
                if x > &best {
                    best = x.clone();
                }
            }
        }
        best
    }

    pub fn is_source(&self, v: usize) -> bool {
        (0..self.size).all(|w| !self.has_arrow(w, v))
    }

    pub fn is_sink(&self, v: usize) -> bool {
        (0..self.size).all(|w| !self.has_arrow(v, w))
    }

    /// True when the directed graph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg: Vec<usize> = (0..self.size)
            .map(|v| (0..self.size).filter(|&w| self.has_arrow(w, v)).count())
            .collect();
        let mut queue: VecDeque<usize> = (0..self.size).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for (w, deg) in indeg.iter_mut().enumerate() {
                if self.has_arrow(v, w) {
                    *deg -= 1;
                    if *deg == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        seen == self.size
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for s in 0..self.size {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v).collect::<Vec<_>>() {
                    if !seen[w] {
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

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Diagram of a square skew-symmetrizable matrix; all vertices mutable.
    pub fn of_exchange(b: &ExchangeMatrix) -> Diagram {
        Self::of_square(b.matrix(), b.size())
    }

    /// Diagram of a square completion; vertices past the mutable count are frozen.
    pub fn of_bullet(b: &BulletMatrix) -> Diagram {
        Self::of_square(b.matrix(), b.mutable_count())
    }

    /// Diagram of an extended matrix, defined as the diagram of its completion.
    pub fn of_extended(b: &ExtendedMatrix) -> Diagram {
        let bullet = b.bullet().expect("validated extended matrices have a completion");
        Self::of_bullet(&bullet)
    }

    fn of_square(b: &IntMatrix, mutable: usize) -> Diagram {
        let n = b.rows();
        let mut d = Diagram::edgeless(n, mutable);
        for i in 0..n {
            for j in 0..n {
                if b[(j, i)].is_positive() {
                    d.set(i, j, (&b[(i, j)] * &b[(j, i)]).abs());
                }
            }
        }
        d
    }

    /// Diagram mutation at a mutable vertex `k`.
    ///
    /// For each path `i → k → j` with weights `α`, `β` and `γ` the weight on `{i, j}`,
    /// the new weight `γ'` satisfies `±√γ ± √γ' = √(αβ)`, with `+√γ` when `i, k, j`
    /// form an oriented cycle. Then every edge at `k` is reversed.
    pub fn mutate(&self, k: usize) -> Result<Diagram, DiagramError> {
        if k >= self.size {
            return Err(DiagramError::VertexOutOfRange {
                vertex: k,
                size: self.size,
            });
        }
        if self.is_frozen(k) {
            return Err(DiagramError::FrozenVertex { vertex: k });
        }
        let mut out = self.clone();
        let ins: Vec<usize> = (0..self.size).filter(|&i| self.has_arrow(i, k)).collect();
        let outs: Vec<usize> = (0..self.size).filter(|&j| self.has_arrow(k, j)).collect();
        for &i in &ins {
            for &j in &outs {
                if self.is_frozen(i) && self.is_frozen(j) {
                    continue;
                }
                let ab = self.signed(i, k) * self.signed(k, j);
                let g = self.signed(i, j);
                if g.is_zero() {
                    out.set(i, j, ab);
                    continue;
                }
                let gamma = g.abs();
                let prod = &ab * &gamma;
                let root = prod.sqrt();
                if &root * &root != prod {
                    return Err(DiagramError::NonSquareProduct { i, k, j });
                }
                if g.is_negative() {
                    // j → i closes an oriented triangle
                    let new = &ab + &gamma - BigInt::from(2) * &root;
                    if ab > gamma {
                        out.set(i, j, new);
                    } else if ab < gamma {
                        out.set(j, i, new);
                    } else {
                        out.clear(i, j);
                    }
                } else {
                    out.set(i, j, &ab + &gamma + BigInt::from(2) * &root);
                }
            }
        }
        for v in 0..self.size {
            let x = self.signed(k, v);
            if !x.is_zero() {
                let n = self.size;
                out.s[k * n + v] = -x;
                out.s[v * n + k] = x.clone();
            }
        }
        Ok(out)
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Diagram, DiagramError> {
        seq.iter().try_fold(self.clone(), |d, &k| d.mutate(k))
    }

    /// Full subdiagram on `vertices`. Selected mutable vertices come first, then
    /// selected frozen ones, each in the given order.
    pub fn subdiagram(&self, vertices: &[usize]) -> Diagram {
        let mut order: Vec<usize> = vertices.iter().copied().filter(|&v| !self.is_frozen(v)).collect();
        let mutable = order.len();
        order.extend(vertices.iter().copied().filter(|&v| self.is_frozen(v)));
        self.relabeled_onto(&order, mutable)
    }

    /// Subdiagram with vertex `v` deleted.
    pub fn without_vertex(&self, v: usize) -> Diagram {
        let keep: Vec<usize> = (0..self.size).filter(|&w| w != v).collect();
        self.subdiagram(&keep)
    }

    /// Vertex `t` of the result is vertex `order[t]` of `self`.
    fn relabeled_onto(&self, order: &[usize], mutable: usize) -> Diagram {
        let m = order.len();
        let mut d = Diagram::edgeless(m, mutable);
        for a in 0..m {
            for b in 0..m {
                d.s[a * m + b] = self.signed(order[a], order[b]).clone();
            }
        }
        d
    }

    /// Applies a part-respecting relabeling: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Diagram {
        assert_eq!(perm.len(), self.size);
        let mut inverse = vec![usize::MAX; self.size];
        for (v, &p) in perm.iter().enumerate() {
            assert!(p < self.size && inverse[p] == usize::MAX, "not a permutation");
            assert_eq!(self.is_frozen(v), p >= self.mutable, "relabeling mixes parts");
            inverse[p] = v;
        }
        self.relabeled_onto(&inverse, self.mutable)
    }

    /// The same graph with every vertex mutable.
    pub fn all_mutable(&self) -> Diagram {
        Diagram {
            size: self.size,
            mutable: self.size,
            s: self.s.clone(),
        }
    }

    /// Keeps the given mutable vertices mutable and freezes every other vertex.
    pub fn freeze_except(&self, keep: &[usize]) -> Diagram {
        let mut order = keep.to_vec();
        order.extend((0..self.size).filter(|v| !keep.contains(v)));
        self.relabeled_onto(&order, keep.len())
    }

    /// Edge-reversed diagram.
    pub fn opposite(&self) -> Diagram {
        Diagram {
            size: self.size,
            mutable: self.mutable,
            s: self.s.iter().map(|x| -x).collect(),
        }
    }

    /// First cycle (of a cycle basis) whose weight product is not a perfect square.
    pub fn perfect_square_violation(&self) -> Option<Vec<usize>> {
        cycles::fundamental_cycles(self)
            .into_iter()
            .find(|c| !is_square(&cycle_product(self, c)))
    }

    pub fn has_perfect_square_cycles(&self) -> bool {
        self.perfect_square_violation().is_none()
    }

    pub fn induced_cycles(&self) -> Vec<Cycle> {
        cycles::induced_cycles(self)
    }

    /// Canonical form up to relabeling within the mutable and frozen parts.
    pub fn canonical_key(&self) -> CanonicalKey {
        canonical::key(self, false)
    }

    /// Canonical form of the underlying weighted undirected graph.
    pub fn underlying_key(&self) -> CanonicalKey {
        canonical::key(self, true)
    }

    /// A skew-symmetrizable matrix whose diagram is `self`.
    pub fn realize(&self) -> Result<ExchangeMatrix, RealizeError> {
        realize::realize(self)
    }

    /// An extended matrix (mutable columns only) whose diagram is `self`.
    pub fn realize_extended(&self) -> Result<ExtendedMatrix, RealizeError> {
        realize::realize_extended(self)
    }

    /// Antisymmetric signed-weight matrix.
    pub fn signed_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.size, self.size, |i, j| self.signed(i, j).clone())
    }
}

pub(crate) fn cycle_product(d: &Diagram, cycle: &[usize]) -> BigInt {
    let k = cycle.len();
    (0..k).fold(BigInt::one(), |acc, t| acc * d.weight(cycle[t], cycle[(t + 1) % k]))
}

pub(crate) fn is_square(x: &BigInt) -> bool {
    if x.is_negative() {
        return false;
    }
    let r = x.sqrt();
    &r * &r == *x
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({}/{}", self.mutable, self.size)?;
        for e in self.edges() {
            write!(f, " {}->{}", e.from, e.to)?;
            if !e.weight.is_one() {
                write!(f, ":{}", e.weight)?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(weights: &[i64]) -> Diagram {
        let n = weights.len() + 1;
        let edges: Vec<(usize, usize, i64)> =
            weights.iter().enumerate().map(|(i, &w)| (i, i + 1, w)).collect();
        Diagram::from_edges(n, n, &edges).unwrap()
    }

    #[test]
    fn edge_convention() {
        let b = ExchangeMatrix::from_rows([[0, 2], [-1, 0]]).unwrap();
        let d = Diagram::of_exchange(&b);
        // b_12 = 2 > 0, so the edge runs from the second vertex to the first
        assert_eq!(
            d.edges(),
            vec![Edge {
                from: 1,
                to: 0,
                weight: BigInt::from(2)
            }]
        );
        let zero = ExchangeMatrix::new(IntMatrix::zeros(3, 3)).unwrap();
        assert_eq!(Diagram::of_exchange(&zero).edge_count(), 0);
    }

    #[test]
    fn principal_extension_diagram() {
        let b = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let d = Diagram::of_extended(&ExtendedMatrix::principal_extension(&b));
        assert_eq!(d.size(), 4);
        assert_eq!(d.mutable_count(), 2);
        for i in 0..2 {
            let nbrs: Vec<usize> = d.neighbors(2 + i).collect();
            assert_eq!(nbrs, vec![i]);
            assert_eq!(d.weight(2 + i, i), BigInt::one());
        }
    }

    #[test]
    fn path_mutation_creates_product_weight() {
        let d = path(&[2, 2]);
        let mu = d.mutate(1).unwrap();
        assert_eq!(mu.signed(0, 2), &BigInt::from(4));
        assert!(mu.has_arrow(1, 0) && mu.has_arrow(2, 1));
        assert_eq!(mu.mutate(1).unwrap(), d);
    }

    #[test]
    fn oriented_triangle_five_one_five() {
        // {0,1} weight 5, {0,2} weight 1, {1,2} weight 5, oriented 0 → 1 → 2 → 0
        let d = Diagram::from_edges(3, 3, &[(0, 1, 5), (1, 2, 5), (2, 0, 1)]).unwrap();
        let mu = d.mutate(1).unwrap();
        assert_eq!(mu.weight(0, 2), BigInt::from(16));
        assert!(mu.has_arrow(0, 2) && mu.has_arrow(2, 1) && mu.has_arrow(1, 0));
    }

    #[test]
    fn non_square_product_rejected() {
        let d = Diagram::from_edges(3, 3, &[(0, 1, 2), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(
            d.mutate(1),
            Err(DiagramError::NonSquareProduct { i: 0, k: 1, j: 2 })
        );
        assert!(!d.has_perfect_square_cycles());
    }

    #[test]
    fn frozen_vertices_cannot_mutate() {
        let d = Diagram::from_edges(2, 1, &[(0, 1, 1)]).unwrap();
        assert_eq!(d.mutate(1), Err(DiagramError::FrozenVertex { vertex: 1 }));
    }

    #[test]
    fn subdiagrams() {
        let d = path(&[1, 2]);
        assert_eq!(d.subdiagram(&[0, 1, 2]), d);
        assert_eq!(d.subdiagram(&[1]).edge_count(), 0);
        let sub = d.subdiagram(&[0, 2]);
        assert_eq!(sub.size(), 2);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(d.without_vertex(0), path(&[2]));
    }

    #[test]
    fn orientation_predicates() {
        let d = path(&[1, 1]);
        assert!(d.is_source(0) && d.is_sink(2) && !d.is_source(1));
        assert!(d.is_acyclic());
        let tri = Diagram::from_edges(3, 3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(!tri.is_acyclic());
    }
}
