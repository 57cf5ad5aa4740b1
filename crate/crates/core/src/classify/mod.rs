//! Finite-type decision, Dynkin identification, minimal-infinite test and
//! exploration of mutation classes of extended matrices.

mod certificate;
mod explore;
mod theorem;

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;

use crate::catalog::{self, Family, Label, Orientation};
use crate::companion::admissible_companions;
use crate::diagram::{CanonicalKey, Diagram, DiagramError};
use crate::linalg::Semidefiniteness;

pub use certificate::{
    local_matrix, replay_growth, scan, Certificate, CertificateError, CertificateKind, GrowthStep, GrowthTrace, Lift,
    Pattern, Triangle, GROWTH_STEPS,
};
pub use explore::{explore_extended_class, explore_with, Budget, ClassReport, ExploreOptions, Outcome};
pub use theorem::{verify_theorem, TheoremReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("diagram cannot be mutated: {0}")]
    Diagram(#[from] DiagramError),
    #[error("diagram is not of finite type")]
    NotFiniteType,
    #[error("diagram is not connected")]
    Disconnected,
}

/// Mutation-class members of a finite-type diagram, one per isomorphism class.
#[derive(Debug, Clone)]
pub struct DiagramClass {
    /// Representatives in BFS order; the first is the input.
    pub members: Vec<Diagram>,
    /// Mutation sequence from the input to each representative.
    pub paths: Vec<Vec<usize>>,
    pub keys: HashSet<CanonicalKey>,
}

impl DiagramClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone)]
pub enum FiniteType {
    Finite(DiagramClass),
    /// `path` leads from the input to `diagram`, which has an edge `{i, j}` of weight at least 4.
    Infinite {
        path: Vec<usize>,
        diagram: Diagram,
        edge: (usize, usize),
    },
}

impl FiniteType {
    pub fn is_finite(&self) -> bool {
        matches!(self, FiniteType::Finite(_))
    }
}

fn heavy_edge(d: &Diagram) -> Option<(usize, usize)> {
    let four = BigInt::from(4);
    let n = d.size();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| d.weight(i, j) >= four)
}

/// Breadth-first search over the mutation class up to isomorphism.
///
/// Frozen flags are ignored. Stops at the first member with an edge of weight at
/// least 4; otherwise the class closes with all weights at most 3.
pub fn decide_finite_type(gamma: &Diagram) -> Result<FiniteType, ClassifyError> {
    let start = gamma.all_mutable();
    let n = start.size();
    let mut members = vec![start.clone()];
    let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
    let mut keys = HashSet::from([start.canonical_key()]);
    if let Some(edge) = heavy_edge(&start) {
        return Ok(FiniteType::Infinite {
            path: Vec::new(),
            diagram: start,
            edge,
        });
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        for k in 0..n {
            let next = members[at].mutate(k)?;
            let mut path = paths[at].clone();
            path.push(k);
            if let Some(edge) = heavy_edge(&next) {
                return Ok(FiniteType::Infinite {
                    path,
                    diagram: next,
                    edge,
                });
            }
            if keys.insert(next.canonical_key()) {
                queue.push_back(members.len());
                members.push(next);
                paths.push(path);
            }
        }
    }
    Ok(FiniteType::Finite(DiagramClass { members, paths, keys }))
}

/// Memoized finite-type answers keyed by canonical key.
///
/// Every member visited during one search shares the answer, so all of their
/// keys are recorded.
#[derive(Debug, Default)]
pub struct FiniteTypeCache {
    known: HashMap<CanonicalKey, bool>,
    searches: usize,
}

impl FiniteTypeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.known.len()
    }

    pub fn is_empty(&self) -> bool {
        self.known.is_empty()
    }

    /// Number of searches that were not answered from the cache.
    pub fn searches(&self) -> usize {
        self.searches
    }

    pub fn is_finite(&mut self, gamma: &Diagram) -> Result<bool, ClassifyError> {
        let start = gamma.all_mutable();
        let key = start.canonical_key();
        if let Some(&ans) = self.known.get(&key) {
            return Ok(ans);
        }
        self.searches += 1;
        let n = start.size();
        let mut seen = vec![key.clone()];
        let mut set = HashSet::from([key]);
        let mut frontier = vec![start];
        let answer = 'search: {
            if heavy_edge(&frontier[0]).is_some() {
                break 'search false;
            }
            while let Some(d) = frontier.pop() {
                for k in 0..n {
                    let next = d.mutate(k)?;
                    if heavy_edge(&next).is_some() {
                        break 'search false;
                    }
                    let key = next.canonical_key();
                    if let Some(&ans) = self.known.get(&key) {
                        break 'search ans;
                    }
                    if set.insert(key.clone()) {
                        seen.push(key);
                        frontier.push(next);
                    }
                }
            }
            true
        };
        for key in seen {
            self.known.insert(key, answer);
        }
        Ok(answer)
    }
}

/// Finite type via the companion criterion: some admissible quasi-Cartan
/// companion of a realizing matrix is positive definite.
///
/// Diagrams without a realizing matrix return `false`.
pub fn finite_type_via_companion(gamma: &Diagram) -> bool {
    let Ok(host) = gamma.all_mutable().realize() else {
        return false;
    };
    admissible_companions(&host)
        .iter()
        .any(|c| c.semidefiniteness() == Semidefiniteness::Positive)
}

/// Families tried in this order; `C_n` has the same diagram as `B_n` and is reported as `B_n`.
const IDENTIFY_ORDER: [Family; 6] = [Family::A, Family::B, Family::D, Family::E, Family::F, Family::G];

fn dynkin_keys(rank: usize) -> Vec<(Label, CanonicalKey)> {
    IDENTIFY_ORDER
        .iter()
        .filter_map(|&family| {
            let d = catalog::dynkin(family, rank, &Orientation::Drawing).ok()?;
            Some((
                Label {
                    family,
                    rank,
                    affine: false,
                },
                d.underlying_key(),
            ))
        })
        .collect()
}

/// Dynkin type of a connected finite-type diagram.
pub fn identify_dynkin_type(gamma: &Diagram) -> Result<Label, ClassifyError> {
    if !gamma.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let FiniteType::Finite(class) = decide_finite_type(gamma)? else {
        return Err(ClassifyError::NotFiniteType);
    };
    let targets = dynkin_keys(gamma.size());
    for member in &class.members {
        let key = member.underlying_key();
        if let Some((label, _)) = targets.iter().find(|(_, k)| *k == key) {
            return Ok(*label);
        }
    }
    Err(ClassifyError::NotFiniteType)
}

/// Infinite type, and every vertex-deleted subdiagram of finite type.
pub fn is_minimal_infinite(gamma: &Diagram) -> Result<bool, ClassifyError> {
    let mut cache = FiniteTypeCache::new();
    is_minimal_infinite_cached(gamma, &mut cache)
}

pub fn is_minimal_infinite_cached(gamma: &Diagram, cache: &mut FiniteTypeCache) -> Result<bool, ClassifyError> {
    if cache.is_finite(gamma)? {
        return Ok(false);
    }
    for v in 0..gamma.size() {
        if !cache.is_finite(&gamma.without_vertex(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}
