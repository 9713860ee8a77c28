//! Exhaustive search for edge-transitive biregular bipartite graphs.
//!
//! A triple `(a, b, c)` is realizable iff some bipartite graph with sides `a`,
//! `b`, `c` edges and no isolated vertices is edge-transitive. Such a graph is
//! biregular with degrees `c/a` and `c/b`, so the oracle generates every
//! biregular graph with those parameters, keeps one per isomorphism class by
//! canonical certificate, and tests each class for edge-transitivity.
//!
//! Every 0/1 matrix can be permuted so that rows and columns are both in
//! nonincreasing lexicographic order (sorting rows, then columns, never
//! lowers the row-major reading, so alternating sorts terminate). Only such
//! matrices are generated, pruned on column capacity.
//!
//! The work splits by second-row choice. Results are merged in that order and
//! classes are keyed by certificate, so the outcome does not depend on the
//! number of workers.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autgraph::{automorphism_group, canonical_certificate, is_edge_transitive, is_edge_transitive_group, CanonicalCertificate, SearchConfig};
use crate::bigraph::BiGraph;
use crate::error::{Error, Result};
use crate::permgroup::k_subsets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Generated graphs before isomorph rejection.
    pub max_candidates: u64,
    /// Backtracking nodes in the generator.
    pub max_nodes: u64,
    /// Per-graph automorphism search budget.
    pub search_nodes: u64,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub workers: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_candidates: 1_000_000,
            max_nodes: 10_000_000,
            search_nodes: crate::autgraph::DEFAULT_NODE_BUDGET,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStats {
    pub graphs_generated: u64,
    pub graphs_after_dedup: u64,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Realizable(BiGraph),
    NotRealizable,
    Exceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub outcome: OracleOutcome,
    pub stats: OracleStats,
}

/// One isomorphism class found by the enumeration.
#[derive(Debug, Clone)]
pub struct GraphClass {
    pub certificate: CanonicalCertificate,
    /// First graph of the class in generation order.
    pub graph: BiGraph,
    pub edge_transitive: bool,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Classes ordered by certificate.
    pub classes: Vec<GraphClass>,
    pub stats: OracleStats,
}

struct Shared {
    candidates: AtomicU64,
    nodes: AtomicU64,
    abort: AtomicBool,
    budget: OracleBudget,
}

impl Shared {
    fn bump_nodes(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget.max_nodes {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }

    fn bump_candidates(&self) -> bool {
        let n = self.candidates.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget.max_candidates {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }
}

struct Generator<'s> {
    a: usize,
    b: usize,
    col_degree: u32,
    rows: &'s [u64],
    shared: &'s Shared,
}

type ClassMap = BTreeMap<CanonicalCertificate, (Vec<u64>, bool)>;

impl Generator<'_> {
    fn to_graph(&self, chosen: &[usize]) -> BiGraph {
        let edges = chosen.iter().enumerate().flat_map(|(i, &r)| {
            let mask = self.rows[r];
            (0..self.b).filter(move |j| mask >> j & 1 == 1).map(move |j| (i, j))
        });
        BiGraph::new(self.a, self.b, edges).expect("generated rows are valid")
    }

    /// Adds `r` to the column counts if every column can still reach its
    /// degree with the rows left after it.
    fn place(&self, r: usize, placed: usize, counts: &mut [u32]) -> bool {
        let mask = self.rows[r];
        let remaining_after = (self.a - placed - 1) as u32;
        let fits = (0..self.b).all(|j| {
            let c = counts[j] + (mask >> j & 1) as u32;
            c <= self.col_degree && self.col_degree - c <= remaining_after
        });
        if fits {
            for (j, c) in counts.iter_mut().enumerate() {
                *c += (mask >> j & 1) as u32;
            }
        }
        fits
    }

    fn unplace(&self, r: usize, counts: &mut [u32]) {
        let mask = self.rows[r];
        for (j, c) in counts.iter_mut().enumerate() {
            *c -= (mask >> j & 1) as u32;
        }
    }

    fn run(
        &self,
        chosen: &mut Vec<usize>,
        counts: &mut [u32],
        tied: u64,
        search: &SearchConfig,
        out: &mut ClassMap,
    ) -> Result<()> {
        if !self.shared.bump_nodes() {
            return Ok(());
        }
        let placed = chosen.len();
        if placed == self.a {
            if !self.shared.bump_candidates() {
                return Ok(());
            }
            let g = self.to_graph(chosen);
            let cert = canonical_certificate(&g, search)?;
            if let std::collections::btree_map::Entry::Vacant(slot) = out.entry(cert) {
                let group = automorphism_group(&g, search)?;
                let masks = chosen.iter().map(|&r| self.rows[r]).collect();
                slot.insert((masks, is_edge_transitive_group(&g, &group)));
            }
            return Ok(());
        }
        let start = chosen.last().copied().unwrap_or(0);
        for r in start..self.rows.len() {
            let Some(next) = column_ties(tied, self.rows[r]) else {
                continue;
            };
            if !self.place(r, placed, counts) {
                continue;
            }
            chosen.push(r);
            self.run(chosen, counts, next, search, out)?;
            chosen.pop();
            self.unplace(r, counts);
            if self.shared.abort.load(Ordering::Relaxed) {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Columns are kept in nonincreasing lexicographic order, read from row 0
/// down. Bit `j` of `tied` says columns `j` and `j + 1` agree on every row
/// placed so far; a row with a 0 in column `j` and a 1 in column `j + 1` of a
/// tied pair is rejected. Returns the updated ties.
fn column_ties(tied: u64, row: u64) -> Option<u64> {
    let rises = tied & !row & (row >> 1);
    (rises == 0).then_some(tied & !(row ^ (row >> 1)))
}

fn low_bits(k: usize) -> u64 {
    u64::MAX.checked_shr(64 - k as u32).unwrap_or(0)
}

fn forced_degrees(a: usize, b: usize, c: usize) -> Option<(usize, usize)> {
    if a == 0 || b == 0 || c == 0 || !c.is_multiple_of(a) || !c.is_multiple_of(b) || c > a * b {
        None
    } else {
        Some((c / a, c / b))
    }
}

/// Raw enumeration; `exceeded` is set when a budget ran out.
struct Run {
    classes: ClassMap,
    stats: OracleStats,
    exceeded: Option<u64>,
}

fn run_enumeration(a: usize, b: usize, c: usize, budget: &OracleBudget) -> Result<Run> {
    let Some((row_degree, col_degree)) = forced_degrees(a, b, c) else {
        return Ok(Run {
            classes: ClassMap::new(),
            stats: OracleStats::default(),
            exceeded: None,
        });
    };
    if b > 64 {
        return Err(Error::TooLarge(format!("oracle supports b <= 64, got {b}")));
    }
    let rows: Vec<u64> = k_subsets(b, row_degree)
        .into_iter()
        .map(|s| s.iter().fold(0u64, |m, &j| m | 1 << j))
        .collect();
    let shared = Shared {
        candidates: AtomicU64::new(0),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        budget: *budget,
    };
    let all_tied = low_bits(b - 1);
    // Work is split by the first two rows.
    let prefixes: Vec<(Vec<usize>, u64)> = if a == 1 {
        vec![(vec![0], all_tied)]
    } else {
        let after_first = column_ties(all_tied, rows[0]).expect("row 0 is sorted");
        (0..rows.len())
            .filter_map(|r| column_ties(after_first, rows[r]).map(|t| (vec![0, r], t)))
            .collect()
    };
    let generator = Generator {
        a,
        b,
        col_degree: col_degree as u32,
        rows: &rows,
        shared: &shared,
    };
    let search = SearchConfig {
        node_budget: budget.search_nodes,
    };
    let task = |(prefix, tied): &(Vec<usize>, u64)| -> Result<ClassMap> {
        let mut out = ClassMap::new();
        let mut counts = vec![0u32; b];
        for (placed, &r) in prefix.iter().enumerate() {
            if !generator.place(r, placed, &mut counts) {
                return Ok(out);
            }
        }
        let mut chosen = prefix.clone();
        generator.run(&mut chosen, &mut counts, *tied, &search, &mut out)?;
        Ok(out)
    };
    let parts: Vec<Result<ClassMap>> = if budget.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| prefixes.par_iter().map(task).collect())
    } else {
        prefixes.iter().map(task).collect()
    };
    let mut merged = ClassMap::new();
    for part in parts {
        for (cert, value) in part? {
            merged.entry(cert).or_insert(value);
        }
    }
    let nodes = shared.nodes.load(Ordering::Relaxed);
    let generated = shared.candidates.load(Ordering::Relaxed);
    let exceeded = shared.abort.load(Ordering::Relaxed).then_some(if generated > budget.max_candidates {
        budget.max_candidates
    } else {
        budget.max_nodes
    });
    let stats = OracleStats {
        graphs_generated: generated.min(budget.max_candidates),
        graphs_after_dedup: merged.len() as u64,
        nodes_explored: nodes.min(budget.max_nodes),
    };
    Ok(Run {
        classes: merged,
        stats,
        exceeded,
    })
}

/// Every biregular bipartite graph with sides `a`, `b` and `c` edges, one per
/// isomorphism class. Errors with [`Error::SearchBudgetExceeded`] when any
/// budget runs out.
pub fn enumerate_biregular(a: usize, b: usize, c: usize, budget: &OracleBudget) -> Result<Enumeration> {
    let run = run_enumeration(a, b, c, budget)?;
    if let Some(budget) = run.exceeded {
        return Err(Error::SearchBudgetExceeded { budget });
    }
    let classes = run
        .classes
        .into_iter()
        .map(|(certificate, (masks, edge_transitive))| {
            let edges = masks.iter().enumerate().flat_map(|(i, &m)| {
                (0..b).filter(move |j| m >> j & 1 == 1).map(move |j| (i, j))
            });
            GraphClass {
                certificate,
                graph: BiGraph::new(a, b, edges).expect("valid rows"),
                edge_transitive,
            }
        })
        .collect();
    Ok(Enumeration {
        classes,
        stats: run.stats,
    })
}

/// Decides `(a, b, c)` by exhaustive enumeration. The witness, if any, is the
/// edge-transitive class with the smallest certificate; it is re-checked from
/// scratch before being returned.
pub fn oracle_decide(a: usize, b: usize, c: usize, budget: &OracleBudget) -> OracleResult {
    let run = match run_enumeration(a, b, c, budget) {
        Ok(run) => run,
        Err(_) => {
            return OracleResult {
                outcome: OracleOutcome::Exceeded,
                stats: OracleStats::default(),
            }
        }
    };
    let stats = run.stats;
    if run.exceeded.is_some() {
        return OracleResult {
            outcome: OracleOutcome::Exceeded,
            stats,
        };
    }
    let Some(masks) = run.classes.into_values().find(|(_, et)| *et).map(|(m, _)| m) else {
        return OracleResult {
            outcome: OracleOutcome::NotRealizable,
            stats,
        };
    };
    let edges = masks
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| (0..b).filter(move |j| m >> j & 1 == 1).map(move |j| (i, j)));
    let g = BiGraph::new(a, b, edges).expect("valid rows");
    let search = SearchConfig {
        node_budget: budget.search_nodes,
    };
    let sound = g.a() == a
        && g.b() == b
        && g.edge_count() == c
        && g.is_biregular(c / a, c / b)
        && is_edge_transitive(&g, &search).unwrap_or(false);
    assert!(sound, "oracle witness failed re-verification");
    OracleResult {
        outcome: OracleOutcome::Realizable(g),
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgraph::{brute_force_aut, canonical_certificate};
    use std::collections::BTreeSet;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    fn count_classes(a: usize, b: usize, c: usize) -> usize {
        enumerate_biregular(a, b, c, &budget()).unwrap().classes.len()
    }

    /// Brute force: all 2^(ab) graphs, biregular filter, isomorphism classes
    /// by certificate, edge-transitivity by exhaustive automorphisms.
    fn naive(a: usize, b: usize, c: usize) -> (usize, bool) {
        let mut certs = BTreeSet::new();
        let mut realizable = false;
        for mask in 0u32..(1 << (a * b)) {
            if mask.count_ones() as usize != c {
                continue;
            }
            let g = BiGraph::new(a, b, (0..a * b).filter(|k| mask >> k & 1 == 1).map(|k| (k / b, k % b)))
                .unwrap();
            if !c.is_multiple_of(a) || !c.is_multiple_of(b) || !g.is_biregular(c / a, c / b) {
                continue;
            }
            certs.insert(canonical_certificate(&g, &SearchConfig::default()).unwrap());
            let auts = brute_force_aut(&g).unwrap();
            let (i0, j0) = g.edges()[0];
            let orbit: BTreeSet<(usize, usize)> = auts
                .iter()
                .map(|f| (f.eta.apply(i0), f.kappa.apply(j0)))
                .collect();
            realizable |= orbit.len() == c;
        }
        (certs.len(), realizable)
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(count_classes(1, 1, 1), 1);
        assert_eq!(count_classes(2, 2, 4), 1);
        assert_eq!(count_classes(3, 3, 6), 1);
        assert_eq!(count_classes(3, 3, 4), 0);
        assert_eq!(count_classes(2, 3, 5), 0);
        // 2-regular 4x4: an 8-cycle or two 4-cycles.
        assert_eq!(count_classes(4, 4, 8), 2);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_decide(5, 5, 15, &budget()).outcome, OracleOutcome::NotRealizable);
        assert!(matches!(
            oracle_decide(3, 3, 6, &budget()).outcome,
            OracleOutcome::Realizable(_)
        ));
        assert_eq!(oracle_decide(3, 3, 5, &budget()).outcome, OracleOutcome::NotRealizable);
    }

    #[test]
    fn fano_shape_is_realizable() {
        let r = oracle_decide(7, 7, 28, &budget());
        let OracleOutcome::Realizable(g) = r.outcome else {
            panic!("expected a witness, got {:?}", r.outcome);
        };
        assert!(g.is_biregular(4, 4));
    }

    #[test]
    fn agrees_with_naive_decider() {
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=a * b {
                    let (classes, realizable) = naive(a, b, c);
                    let e = enumerate_biregular(a, b, c, &budget()).unwrap();
                    assert_eq!(e.classes.len(), classes, "({a},{b},{c})");
                    let got = matches!(oracle_decide(a, b, c, &budget()).outcome, OracleOutcome::Realizable(_));
                    assert_eq!(got, realizable, "({a},{b},{c})");
                }
            }
        }
    }

    /// Classes from every row-sorted biregular matrix, with no column
    /// symmetry breaking.
    fn row_sorted_classes(a: usize, b: usize, c: usize) -> BTreeSet<CanonicalCertificate> {
        fn rec(rows: &[u64], a: usize, b: usize, deg: usize, chosen: &mut Vec<u64>, out: &mut BTreeSet<CanonicalCertificate>) {
            if chosen.len() == a {
                let counts_ok = (0..b).all(|j| chosen.iter().filter(|&&m| m >> j & 1 == 1).count() == deg);
                if counts_ok {
                    let edges = chosen
                        .iter()
                        .enumerate()
                        .flat_map(|(i, &m)| (0..b).filter(move |j| m >> j & 1 == 1).map(move |j| (i, j)));
                    let g = BiGraph::new(a, b, edges).unwrap();
                    out.insert(canonical_certificate(&g, &SearchConfig::default()).unwrap());
                }
                return;
            }
            let start = chosen.last().map_or(0, |last| rows.iter().position(|m| m == last).unwrap());
            for &m in &rows[start..] {
                chosen.push(m);
                rec(rows, a, b, deg, chosen, out);
                chosen.pop();
            }
        }
        let rows: Vec<u64> = k_subsets(b, c / a)
            .into_iter()
            .map(|s| s.iter().fold(0u64, |m, &j| m | 1 << j))
            .collect();
        let mut out = BTreeSet::new();
        rec(&rows, a, b, c / b, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn symmetry_breaking_keeps_every_class() {
        for (a, b, c) in [(5, 5, 10), (5, 5, 15), (4, 6, 12), (6, 4, 12), (6, 3, 12), (6, 6, 12), (6, 6, 18), (4, 8, 16)] {
            let expected = row_sorted_classes(a, b, c);
            let got: BTreeSet<CanonicalCertificate> = enumerate_biregular(a, b, c, &budget())
                .unwrap()
                .classes
                .into_iter()
                .map(|cl| cl.certificate)
                .collect();
            assert_eq!(got, expected, "({a},{b},{c})");
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        for (a, b, c) in [(4, 6, 12), (5, 5, 15), (6, 6, 24)] {
            let serial = oracle_decide(a, b, c, &budget());
            let parallel = oracle_decide(a, b, c, &OracleBudget { workers: 4, ..budget() });
            assert_eq!(serial, parallel);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = OracleBudget {
            max_candidates: 3,
            ..budget()
        };
        assert_eq!(oracle_decide(5, 5, 15, &tight).outcome, OracleOutcome::Exceeded);
    }
}
