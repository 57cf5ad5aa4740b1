//! Infinitude certificates from the rank-2 weight criteria, and their replay.
//!
//! A pattern is a triangle `{i, j, r}` in the diagram of an extended matrix with
//! `i, j` mutable and `r` any other vertex. Keeping only columns `i, j` and rows
//! `i, j, r` gives a `3×2` matrix whose mutation class embeds in that of the whole
//! matrix, so growth of the small matrix proves the large one infinite.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::exchange::{ExchangeError, ExtendedMatrix};

/// Number of growth steps a replay must show.
pub const GROWTH_STEPS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    /// Mutable edge of weight greater than 4 with a third vertex attached.
    WeightGrowthGt4,
    /// Mutable edge of weight 4 in an oriented triangle whose other two weights differ.
    UnbalancedWeight4Triangle,
    /// Mutable edge of weight 4 with a third vertex attached without forming an oriented triangle.
    AcyclicWeight4Attachment,
    /// One of the above, found after restricting to the mutable indices of a
    /// minimal infinite subdiagram of the principal part.
    MinimalInfinitePrincipal,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::WeightGrowthGt4 => "WeightGrowthGt4",
            CertificateKind::UnbalancedWeight4Triangle => "UnbalancedWeight4Triangle",
            CertificateKind::AcyclicWeight4Attachment => "AcyclicWeight4Attachment",
            CertificateKind::MinimalInfinitePrincipal => "MinimalInfinitePrincipal",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Mutable `i < j` and a third vertex `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangle {
    pub i: usize,
    pub j: usize,
    pub r: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pattern {
    pub kind: CertificateKind,
    pub triangle: Triangle,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("mutation failed during replay: {0}")]
    Mutation(#[from] ExchangeError),
    #[error("replayed path does not reach the witness")]
    WitnessMismatch,
    #[error("the pattern's hypothesis fails at the witness")]
    HypothesisFails,
    #[error("could not normalize to an oriented triangle")]
    Normalization,
    #[error("weight sum did not increase at growth step {0}")]
    NoGrowth(usize),
    #[error("triangle not oriented at growth step {0}")]
    NotOriented(usize),
}

/// A restriction to a subset of mutable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    /// Kept mutable indices of the explored matrix; index `t` of the restriction is `keep[t]`.
    pub keep: Vec<usize>,
    /// Kind of the pattern found in the restriction.
    pub inner: CertificateKind,
}

/// A replayable proof that a mutation class is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Mutation sequence from the start (or its restriction, for a lift) to the witness.
    pub path: Vec<usize>,
    pub witness: ExtendedMatrix,
    pub triangle: Triangle,
    pub lift: Option<Lift>,
}

/// Weights of a triangle on vertices `0, 1, 2` as `[w01, w02, w12]`.
fn weights(d: &Diagram) -> [BigInt; 3] {
    [d.weight(0, 1), d.weight(0, 2), d.weight(1, 2)]
}

fn is_oriented(d: &Diagram, a: usize, b: usize, c: usize) -> bool {
    (d.has_arrow(a, b) && d.has_arrow(b, c) && d.has_arrow(c, a))
        || (d.has_arrow(b, a) && d.has_arrow(c, b) && d.has_arrow(a, c))
}

fn is_middle(d: &Diagram, v: usize) -> bool {
    let n = d.size();
    (0..n).any(|u| d.has_arrow(u, v)) && (0..n).any(|u| d.has_arrow(v, u))
}

/// Classifies the triangle `{i, j, r}` of `d`, if it matches a pattern.
fn classify_triangle(d: &Diagram, t: Triangle) -> Option<CertificateKind> {
    let Triangle { i, j, r } = t;
    if d.is_frozen(i) || d.is_frozen(j) || r == i || r == j {
        return None;
    }
    if !d.adjacent(r, i) && !d.adjacent(r, j) {
        return None;
    }
    let w = d.weight(i, j);
    let four = BigInt::from(4);
    if w > four {
        Some(CertificateKind::WeightGrowthGt4)
    } else if w == four {
        if is_oriented(d, i, j, r) {
            (d.weight(r, i) != d.weight(r, j)).then_some(CertificateKind::UnbalancedWeight4Triangle)
        } else {
            Some(CertificateKind::AcyclicWeight4Attachment)
        }
    } else {
        None
    }
}

/// First pattern in the diagram of `b`, scanning pairs `i < j` and then `r` in order.
pub fn scan(b: &ExtendedMatrix) -> Option<Pattern> {
    scan_diagram(&Diagram::of_extended(b))
}

pub(crate) fn scan_diagram(d: &Diagram) -> Option<Pattern> {
    let n = d.mutable_count();
    let four = BigInt::from(4);
    for i in 0..n {
        for j in i + 1..n {
            if d.weight(i, j) < four {
                continue;
            }
            for r in 0..d.size() {
                let t = Triangle { i, j, r };
                if let Some(kind) = classify_triangle(d, t) {
                    return Some(Pattern { kind, triangle: t });
                }
            }
        }
    }
    None
}

/// The `3×2` matrix on rows `i, j, r` and columns `i, j`.
pub fn local_matrix(b: &ExtendedMatrix, t: Triangle) -> Result<ExtendedMatrix, ExchangeError> {
    let rows = [t.i, t.j, t.r];
    let cols = [t.i, t.j];
    let d = b.symmetrizer();
    ExtendedMatrix::with_symmetrizer(
        b.matrix().submatrix(&rows, &cols),
        rows.iter().map(|&x| d[x].clone()).collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthStep {
    /// Local vertex mutated: 0 for `i`, 1 for `j`.
    pub vertex: usize,
    /// Weights `[w(i,j), w(i,r), w(j,r)]` after the step.
    pub weights: [BigInt; 3],
    pub sum: BigInt,
}

/// Replay of the growth argument on the `3×2` matrix of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTrace {
    pub kind: CertificateKind,
    /// Weights of the triangle at the witness.
    pub initial: [BigInt; 3],
    /// Local mutations that turn the triangle into an oriented one.
    pub normalization: Vec<usize>,
    /// Weights once oriented.
    pub oriented: [BigInt; 3],
    pub steps: Vec<GrowthStep>,
}

impl GrowthTrace {
    pub fn sums(&self) -> Vec<BigInt> {
        let first: BigInt = self.oriented.iter().sum();
        std::iter::once(first).chain(self.steps.iter().map(|s| s.sum.clone())).collect()
    }
}

/// Checks the hypothesis of `kind` on the `3×2` matrix `local`, normalizes to an
/// oriented triangle if needed, then mutates `steps` times at the endpoint of
/// the fixed edge whose edge to the third vertex is heavier, requiring the weight
/// sum to increase strictly each time.
pub fn replay_growth(
    local: &ExtendedMatrix,
    kind: CertificateKind,
    steps: usize,
) -> Result<GrowthTrace, CertificateError> {
    let d = Diagram::of_extended(local);
    let t = Triangle { i: 0, j: 1, r: 2 };
    if classify_triangle(&d, t) != Some(kind) {
        return Err(CertificateError::HypothesisFails);
    }
    let initial = weights(&d);
    let mut cur = local.clone();
    let mut normalization = Vec::new();
    if !is_oriented(&d, 0, 1, 2) {
        let mut diag = d.clone();
        if !is_middle(&diag, 0) && !is_middle(&diag, 1) {
            let trial = cur.mutate(0)?;
            let td = Diagram::of_extended(&trial);
            let pick = if is_middle(&td, 0) || is_middle(&td, 1) { 0 } else { 1 };
            cur = cur.mutate(pick)?;
            diag = Diagram::of_extended(&cur);
            normalization.push(pick);
        }
        let k = if is_middle(&diag, 0) {
            0
        } else if is_middle(&diag, 1) {
            1
        } else {
            return Err(CertificateError::Normalization);
        };
        cur = cur.mutate(k)?;
        normalization.push(k);
        if !is_oriented(&Diagram::of_extended(&cur), 0, 1, 2) {
            return Err(CertificateError::Normalization);
        }
    }
    let oriented = weights(&Diagram::of_extended(&cur));
    let mut prev: BigInt = oriented.iter().sum();
    let mut out = Vec::with_capacity(steps);
    for step in 0..steps {
        let w = weights(&Diagram::of_extended(&cur));
        let k = if w[2] >= w[1] { 1 } else { 0 };
        cur = cur.mutate(k)?;
        let nd = Diagram::of_extended(&cur);
        if !is_oriented(&nd, 0, 1, 2) {
            return Err(CertificateError::NotOriented(step));
        }
        let w = weights(&nd);
        let sum: BigInt = w.iter().sum();
        if sum <= prev {
            return Err(CertificateError::NoGrowth(step));
        }
        prev = sum.clone();
        out.push(GrowthStep {
            vertex: k,
            weights: w,
            sum,
        });
    }
    Ok(GrowthTrace {
        kind,
        initial,
        normalization,
        oriented,
        steps: out,
    })
}

impl Certificate {
    /// Kind of the rank-2 pattern at the witness.
    pub fn pattern_kind(&self) -> CertificateKind {
        self.lift.as_ref().map_or(self.kind, |l| l.inner)
    }

    /// The mutation path in indices of the explored matrix.
    pub fn original_path(&self) -> Vec<usize> {
        match &self.lift {
            Some(l) => self.path.iter().map(|&k| l.keep[k]).collect(),
            None => self.path.clone(),
        }
    }

    /// Replays the path from `start`, checks the witness and its pattern, and
    /// re-runs the growth argument for [`GROWTH_STEPS`] steps.
    pub fn verify(&self, start: &ExtendedMatrix) -> Result<GrowthTrace, CertificateError> {
        let base = match &self.lift {
            Some(l) => start.restrict_mutable(&l.keep)?,
            None => start.clone(),
        };
        let end = base.mutate_seq(&self.path)?;
        if end != self.witness {
            return Err(CertificateError::WitnessMismatch);
        }
        let d = Diagram::of_extended(&end);
        if classify_triangle(&d, self.triangle) != Some(self.pattern_kind()) {
            return Err(CertificateError::HypothesisFails);
        }
        replay_growth(&local_matrix(&end, self.triangle)?, self.pattern_kind(), GROWTH_STEPS)
    }
}
