//! Breadth-first exploration of the mutation class of an extended matrix.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::certificate::{scan_diagram, Certificate, CertificateKind, Lift, Pattern};
use super::FiniteTypeCache;
use crate::diagram::{CanonicalKey, Diagram};
use crate::exchange::ExtendedMatrix;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of distinct matrices visited.
    pub nodes: usize,
    /// Members whose diagram has a heavier edge are kept but not expanded.
    pub max_weight: Option<BigInt>,
}

impl Budget {
    pub fn nodes(nodes: usize) -> Budget {
        Budget { nodes, max_weight: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(1_000_000)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreOptions {
    pub budget: Budget,
    /// Expand each BFS level on the rayon pool. Outcomes and counts do not depend on this.
    pub parallel: bool,
    /// On budget exhaustion, retry on restrictions to minimal infinite
    /// subdiagrams of the principal part.
    pub restrict_on_exhaustion: bool,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            budget: Budget::default(),
            parallel: true,
            restrict_on_exhaustion: true,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Outcome {
    /// The class closed: every mutation of every member is a member.
    Closed {
        members: Vec<ExtendedMatrix>,
        labeled: usize,
        up_to_iso: usize,
        keys: BTreeSet<CanonicalKey>,
    },
    Infinite(Certificate),
    BudgetExhausted { visited: usize },
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub outcome: Outcome,
    pub budget: Budget,
    /// Distinct matrices visited by the main search.
    pub visited: usize,
}

impl ClassReport {
    pub fn is_closed(&self) -> bool {
        matches!(self.outcome, Outcome::Closed { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::Infinite(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, Outcome::BudgetExhausted { .. })
    }
}

struct NodeInfo {
    pattern: Option<Pattern>,
    key: CanonicalKey,
    heavy: bool,
}

fn inspect(b: &ExtendedMatrix, max_weight: Option<&BigInt>) -> NodeInfo {
    let d = Diagram::of_extended(b);
    NodeInfo {
        pattern: scan_diagram(&d),
        heavy: max_weight.is_some_and(|w| &d.max_weight() > w),
        key: d.canonical_key(),
    }
}

fn map_ordered<T: Sync, U: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Explores `{μ_seq(b)}` over mutable indices with the default options.
pub fn explore_extended_class(b: &ExtendedMatrix, budget: Budget) -> ClassReport {
    explore_with(
        b,
        &ExploreOptions {
            budget,
            ..ExploreOptions::default()
        },
    )
}

/// Level-synchronous BFS with a certificate scan at every new member.
///
/// Members are processed in discovery order (parents in order, then mutation
/// index ascending), so the first certificate found does not depend on `parallel`.
pub fn explore_with(b: &ExtendedMatrix, opts: &ExploreOptions) -> ClassReport {
    let report = search(b, opts);
    if !report.is_exhausted() || !opts.restrict_on_exhaustion {
        return report;
    }
    match restricted_search(b, opts) {
        Some(cert) => ClassReport {
            outcome: Outcome::Infinite(cert),
            ..report
        },
        None => report,
    }
}

fn search(start: &ExtendedMatrix, opts: &ExploreOptions) -> ClassReport {
    let n = start.mutable_count();
    let budget = &opts.budget;
    let max_weight = budget.max_weight.as_ref();

    let mut nodes: Vec<ExtendedMatrix> = Vec::new();
    let mut parent: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<IntMatrix, usize> = HashMap::new();
    let mut keys = BTreeSet::new();
    let mut held_back = false;

    let path_to = |parent: &[(usize, usize)], mut at: usize| {
        let mut path = Vec::new();
        while at != 0 {
            let (p, k) = parent[at];
            path.push(k);
            at = p;
        }
        path.reverse();
        path
    };
    let report = |outcome, visited| ClassReport {
        outcome,
        budget: budget.clone(),
        visited,
    };

    if budget.nodes == 0 {
        return report(Outcome::BudgetExhausted { visited: 0 }, 0);
    }
    let info = inspect(start, max_weight);
    if let Some(p) = info.pattern {
        let cert = Certificate {
            kind: p.kind,
            path: Vec::new(),
            witness: start.clone(),
            triangle: p.triangle,
            lift: None,
        };
        return report(Outcome::Infinite(cert), 1);
    }
    nodes.push(start.clone());
    parent.push((0, 0));
    index.insert(start.matrix().clone(), 0);
    keys.insert(info.key);
    let mut frontier: Vec<usize> = if info.heavy {
        held_back = true;
        Vec::new()
    } else {
        vec![0]
    };

    while !frontier.is_empty() {
        let children: Vec<Vec<ExtendedMatrix>> = map_ordered(&frontier, opts.parallel, |&at| {
            (0..n)
                .map(|k| nodes[at].mutate(k).expect("mutable index"))
                .collect()
        });
        let mut fresh: Vec<(usize, usize, ExtendedMatrix)> = Vec::new();
        let mut pending: HashSet<&IntMatrix> = HashSet::new();
        for (&at, kids) in frontier.iter().zip(&children) {
            for (k, child) in kids.iter().enumerate() {
                if index.contains_key(child.matrix()) || !pending.insert(child.matrix()) {
                    continue;
                }
                fresh.push((at, k, child.clone()));
            }
        }
        drop(pending);
        let room = budget.nodes - nodes.len();
        let truncated = fresh.len() > room;
        fresh.truncate(room);
        let infos = map_ordered(&fresh, opts.parallel, |(_, _, m)| inspect(m, max_weight));
        let mut next = Vec::new();
        for ((at, k, m), info) in fresh.into_iter().zip(infos) {
            let id = nodes.len();
            parent.push((at, k));
            if let Some(p) = info.pattern {
                let cert = Certificate {
                    kind: p.kind,
                    path: path_to(&parent, id),
                    witness: m,
                    triangle: p.triangle,
                    lift: None,
                };
                return report(Outcome::Infinite(cert), id + 1);
            }
            index.insert(m.matrix().clone(), id);
            nodes.push(m);
            keys.insert(info.key);
            if info.heavy {
                held_back = true;
            } else {
                next.push(id);
            }
        }
        if truncated {
            return report(Outcome::BudgetExhausted { visited: nodes.len() }, nodes.len());
        }
        frontier = next;
    }
    let visited = nodes.len();
    if held_back {
        return report(Outcome::BudgetExhausted { visited }, visited);
    }
    let up_to_iso = keys.len();
    report(
        Outcome::Closed {
            members: nodes,
            labeled: visited,
            up_to_iso,
            keys,
        },
        visited,
    )
}

/// Mutable-index subsets whose principal subdiagram is connected and minimal
/// infinite, smallest first, then lexicographic.
fn minimal_infinite_subsets(b: &ExtendedMatrix) -> Vec<Vec<usize>> {
    let n = b.mutable_count();
    if n > 16 {
        return Vec::new();
    }
    let gamma = Diagram::of_exchange(b.principal());
    let mut cache = FiniteTypeCache::new();
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<usize>>())
        .filter(|s| s.len() >= 2)
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .into_iter()
        .filter(|s| {
            let sub = gamma.subdiagram(s);
            sub.is_connected() && super::is_minimal_infinite_cached(&sub, &mut cache).unwrap_or(false)
        })
        .collect()
}

fn restricted_search(b: &ExtendedMatrix, opts: &ExploreOptions) -> Option<Certificate> {
    let inner_opts = ExploreOptions {
        restrict_on_exhaustion: false,
        ..opts.clone()
    };
    for keep in minimal_infinite_subsets(b) {
        let Ok(sub) = b.restrict_mutable(&keep) else {
            continue;
        };
        if let Outcome::Infinite(cert) = search(&sub, &inner_opts).outcome {
            return Some(Certificate {
                kind: CertificateKind::MinimalInfinitePrincipal,
                lift: Some(Lift {
                    keep,
                    inner: cert.kind,
                }),
                ..cert
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::ExchangeMatrix;

    fn ext(rows: &[[i64; 2]]) -> ExtendedMatrix {
        ExtendedMatrix::new(IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()))).unwrap()
    }

    #[test]
    fn balanced_triangle_closes() {
        for alpha in [1, 2] {
            let b = ext(&[[0, 2], [-2, 0], [alpha, -alpha]]);
            let report = explore_extended_class(&b, Budget::nodes(1000));
            let Outcome::Closed { members, up_to_iso, .. } = &report.outcome else {
                panic!("expected closure for alpha={alpha}");
            };
            assert_eq!(*up_to_iso, 1);
            // mu_0 and mu_1 give the same matrix
            assert_eq!(members.len(), 2);
        }
    }

    #[test]
    fn a2_principal_extension_closes() {
        let b0 = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let b = ExtendedMatrix::principal_extension(&b0);
        let report = explore_extended_class(&b, Budget::nodes(1000));
        let Outcome::Closed { labeled, members, .. } = &report.outcome else {
            panic!();
        };
        assert_eq!(*labeled, 10);
        for m in members {
            for k in 0..2 {
                assert!(members.contains(&m.mutate(k).unwrap()));
            }
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let b0 = ExchangeMatrix::from_rows([[0, 2, 0], [-1, 0, 1], [0, -2, 0]]).unwrap();
        let b = ExtendedMatrix::principal_extension(&b0);
        let mut opts = ExploreOptions::default();
        let par = explore_with(&b, &opts);
        opts.parallel = false;
        let ser = explore_with(&b, &opts);
        let (Some(x), Some(y)) = (par.certificate(), ser.certificate()) else {
            panic!("expected certificates");
        };
        assert_eq!(x, y);
        assert_eq!(par.visited, ser.visited);
        x.verify(&b).unwrap();
    }

    #[test]
    fn tiny_budget_is_exhausted() {
        let b0 = ExchangeMatrix::from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap();
        let b = ExtendedMatrix::principal_extension(&b0);
        let report = explore_extended_class(&b, Budget::nodes(5));
        assert!(matches!(report.outcome, Outcome::BudgetExhausted { visited: 5 }));
    }
}
