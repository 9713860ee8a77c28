//! Named acceptance checks shared by the test suite and the `verify-paper`
//! command. Every threshold lives here.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autgraph::{automorphism_closure, brute_force_aut, edge_orbits, is_edge_transitive, BiAut, SearchConfig};
use crate::bigraph::BiGraph;
use crate::decider::{verify, Decider, DeciderConfig, Outcome};
use crate::numtheory::{euler_phi, is_prime};
use crate::oracle::{oracle_decide, OracleBudget, OracleOutcome};
use crate::permgroup::{direct_product, families, semidirect_affine, triple_indices, GroupTriple, Perm, DEFAULT_CAP};
use crate::realize::{are_complements, coset_intersection_graph, pair_block_complement, subspace_complement_graph, subspaces};
use crate::triple::Triple;

pub const CHECK_NAMES: [&str; 8] = [
    "classification",
    "oracle-5-5-15",
    "cig-bijection",
    "groups-to-graphs",
    "geometric",
    "aut-engine",
    "iff-spot",
    "oracle-agreement",
];

pub const CLASSIFICATION_LIMIT: Duration = Duration::from_secs(300);
pub const ORACLE_5_5_15_LIMIT: Duration = Duration::from_secs(60);
pub const GROUPS_TO_GRAPHS_LIMIT: Duration = Duration::from_secs(60);
pub const AUT_ENGINE_LIMIT: Duration = Duration::from_secs(120);
pub const ORACLE_AGREEMENT_LIMIT: Duration = Duration::from_secs(600);

/// Largest group order admitted to the witness corpus.
pub const CORPUS_MAX_ORDER: usize = 5000;
pub const CLASSIFICATION_BOX: u64 = 10;
pub const ORACLE_AGREEMENT_BOX: u64 = 6;
pub const AUT_SWEEP_MAX: usize = 3;
pub const AUT_RANDOM_COUNT: usize = 200;
pub const AUT_RANDOM_MAX: usize = 5;
pub const AUT_RANDOM_SEED: u64 = 0x5eed;

pub const GOLDEN_NOT_REALIZABLE: &str = include_str!("../data/not_realizable_box10.txt");

/// Realizable triples that must come out Realizable with replayable certificates.
pub const REALIZABLE_SPOTS: [(u64, u64, u64); 8] = [
    (7, 7, 28),
    (7, 7, 21),
    (8, 8, 24),
    (9, 9, 36),
    (9, 9, 27),
    (10, 10, 30),
    (10, 5, 20),
    (10, 5, 30),
];

/// Refutations checked outside the classification box.
pub const EXTRA_NOT_REALIZABLE: [(u64, u64, u64); 2] = [(5, 15, 45), (15, 5, 45)];

/// `(q, n, d, q^{d(n-d)})`.
pub const GEOMETRIC_CASES: [(u64, usize, usize, usize); 5] =
    [(2, 2, 1, 2), (2, 3, 1, 4), (3, 2, 1, 3), (2, 4, 1, 8), (2, 4, 2, 16)];

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{}] {}: {} ({} ms", self.id, self.name, self.detail, self.elapsed_ms)?;
        if let Some(limit) = self.limit_ms {
            write!(f, ", limit {limit} ms")?;
        }
        write!(f, ")")
    }
}

type CheckResult = std::result::Result<String, String>;

fn timed(id: usize, limit: Option<Duration>, body: impl FnOnce() -> CheckResult) -> CheckReport {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; over time limit");
        }
    }
    CheckReport {
        id,
        name: CHECK_NAMES[id - 1],
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fmt_triples<'a>(ts: impl IntoIterator<Item = &'a Triple>) -> String {
    ts.into_iter().map(Triple::to_string).collect::<Vec<_>>().join(", ")
}

fn t(x: (u64, u64, u64)) -> Triple {
    Triple::new(x.0, x.1, x.2)
}

/// Parses the `a b c` lines of a golden list, skipping comments and blanks.
pub fn parse_triples(text: &str) -> Result<Vec<Triple>, String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let v: Vec<u64> = l
                .split_whitespace()
                .map(|x| x.parse().map_err(|e| format!("{l:?}: {e}")))
                .collect::<Result<_, _>>()?;
            match v[..] {
                [a, b, c] => Ok(Triple::new(a, b, c)),
                _ => Err(format!("{l:?}: expected three integers")),
            }
        })
        .collect()
}

/// Group triples with `|G| <= CORPUS_MAX_ORDER`, each with a label.
pub fn witness_corpus() -> crate::Result<Vec<(String, GroupTriple)>> {
    let mut out = vec![("trivial".to_string(), GroupTriple::trivial())];
    for a in 1..=4 {
        for b in 1..=4 {
            out.push((format!("cyclic {a}x{b}"), families::cyclic_pair(a, b)?));
        }
    }
    for f in 2..=6 {
        out.push((format!("cyclic {f} with trivial pair"), families::cyclic_trivial_pair(f)?));
    }
    for n in 2..=6 {
        out.push((format!("S{n} point stabilizers"), families::symmetric_point_stabilizers(n)?));
    }
    for n in 3..=16u64 {
        for p in (2..n).filter(|&p| is_prime(p) && euler_phi(n).is_multiple_of(p) && n % p != 0) {
            out.push((format!("affine ({n}, {p})"), semidirect_affine(n, p)?));
        }
    }
    out.push(("S4 Sylow 3 pair".to_string(), families::s4_sylow3_pair()?));
    out.push(("S5 on 2-subsets".to_string(), families::s5_two_subsets()?));
    let s3 = families::symmetric_point_stabilizers(3)?;
    let products = [
        ("S3 point x affine (5, 2)", s3.clone(), semidirect_affine(5, 2)?),
        ("S3 point x S3 point", s3.clone(), s3.clone()),
        ("S4 Sylow x cyclic 2x3", families::s4_sylow3_pair()?, families::cyclic_pair(2, 3)?),
        ("affine (7, 3) x cyclic 2 trivial", semidirect_affine(7, 3)?, families::cyclic_trivial_pair(2)?),
        ("S5 on 2-subsets x cyclic 1x2", families::s5_two_subsets()?, families::cyclic_pair(1, 2)?),
    ];
    for (label, x, y) in products {
        out.push((label.to_string(), direct_product(&x, &y, DEFAULT_CAP)?));
    }
    out.retain(|(_, t)| t.g.order() <= CORPUS_MAX_ORDER);
    Ok(out)
}

fn classification_body(golden: &[Triple]) -> CheckResult {
    let decider = Decider::default();
    let search = SearchConfig::default();
    let rows = decider.classify(CLASSIFICATION_BOX, CLASSIFICATION_BOX, rayon::current_num_threads());
    let unknown: Vec<Triple> = rows.iter().filter(|v| v.outcome == Outcome::Unknown).map(|v| v.triple).collect();
    ensure(unknown.is_empty(), || format!("unknown verdicts: [{}]", fmt_triples(&unknown)))?;
    let refuted: BTreeSet<Triple> = rows
        .iter()
        .filter(|v| v.outcome == Outcome::NotRealizable)
        .map(|v| v.triple)
        .collect();
    let expected: BTreeSet<Triple> = golden.iter().flat_map(|x| [*x, x.swapped()]).collect();
    ensure(refuted == expected, || {
        let extra = fmt_triples(refuted.difference(&expected));
        let missing = fmt_triples(expected.difference(&refuted));
        format!("refutation set differs: extra [{extra}], missing [{missing}]")
    })?;
    for v in &rows {
        verify(v, &search, false).map_err(|e| format!("{}: {e}", v.triple))?;
    }
    for spot in REALIZABLE_SPOTS.map(t) {
        let v = rows.iter().find(|v| v.triple == spot).ok_or(format!("{spot} missing from rows"))?;
        ensure(v.outcome == Outcome::Realizable, || format!("{spot} is {:?}", v.outcome))?;
    }
    for extra in EXTRA_NOT_REALIZABLE.map(t) {
        let v = decider.decide(extra);
        ensure(v.outcome == Outcome::NotRealizable, || format!("{extra} is {:?}", v.outcome))?;
        verify(&v, &search, false).map_err(|e| format!("{extra}: {e}"))?;
    }
    Ok(format!(
        "{} rows, 0 unknown, {} refutations match the golden list",
        rows.len(),
        refuted.len()
    ))
}

/// Classification of the box against a given refutation list (without swaps).
pub fn check_classification_against(golden: &[Triple]) -> CheckReport {
    timed(1, Some(CLASSIFICATION_LIMIT), || classification_body(golden))
}

pub fn check_classification() -> CheckReport {
    match parse_triples(GOLDEN_NOT_REALIZABLE) {
        Ok(golden) => check_classification_against(&golden),
        Err(e) => timed(1, None, || Err(format!("golden file: {e}"))),
    }
}

pub fn check_oracle_5_5_15() -> CheckReport {
    timed(2, Some(ORACLE_5_5_15_LIMIT), || {
        let r = oracle_decide(5, 5, 15, &OracleBudget::default());
        ensure(r.outcome == OracleOutcome::NotRealizable, || format!("oracle returned {:?}", r.outcome))?;
        Ok(format!(
            "exhausted: {} graphs generated, {} classes, none edge-transitive",
            r.stats.graphs_generated, r.stats.graphs_after_dedup
        ))
    })
}

pub fn check_cig_bijection() -> CheckReport {
    timed(3, None, || {
        let corpus = witness_corpus().map_err(|e| e.to_string())?;
        for (label, gt) in &corpus {
            let idx = triple_indices(gt);
            let cig = coset_intersection_graph(gt).map_err(|e| format!("{label}: {e}"))?;
            let g = &cig.graph;
            ensure(g.edge_count() as u64 == idx.c, || {
                format!("{label}: {} edges, index {}", g.edge_count(), idx.c)
            })?;
            let hk = gt.intersection().order();
            let (dh, dk) = (gt.h.order() / hk, gt.k.order() / hk);
            let (eta_deg, kappa_deg) = g.degree_profile();
            ensure(
                eta_deg.len() == idx.a as usize && eta_deg.iter().all(|&d| d == dh),
                || format!("{label}: eta degrees {eta_deg:?}, expected [H:H∩K] = {dh}"),
            )?;
            ensure(
                kappa_deg.len() == idx.b as usize && kappa_deg.iter().all(|&d| d == dk),
                || format!("{label}: kappa degrees {kappa_deg:?}, expected [K:H∩K] = {dk}"),
            )?;
        }
        Ok(format!("{} group triples", corpus.len()))
    })
}

pub fn check_groups_to_graphs() -> CheckReport {
    timed(4, Some(GROUPS_TO_GRAPHS_LIMIT), || {
        let corpus = witness_corpus().map_err(|e| e.to_string())?;
        let search = SearchConfig::default();
        for (label, gt) in &corpus {
            let cig = coset_intersection_graph(gt).map_err(|e| format!("{label}: {e}"))?;
            let et = is_edge_transitive(&cig.graph, &search).map_err(|e| format!("{label}: {e}"))?;
            ensure(et, || format!("{label}: CIG is not edge-transitive"))?;
        }
        Ok(format!("{} CIGs edge-transitive", corpus.len()))
    })
}

pub fn check_geometric() -> CheckReport {
    timed(5, None, || {
        let mut counts = Vec::new();
        for (q, n, d, expected) in GEOMETRIC_CASES {
            let dims = subspaces(q, n, d).map_err(|e| e.to_string())?;
            let codims = subspaces(q, n, n - d).map_err(|e| e.to_string())?;
            for u in &dims {
                let count = codims.iter().filter(|w| are_complements(u, w, q)).count();
                ensure(count == expected, || {
                    format!("(q,n,d)=({q},{n},{d}): {count} complements, expected {expected}")
                })?;
            }
            let g = subspace_complement_graph(q, n, d).map_err(|e| e.to_string())?;
            ensure(g.edge_count() == dims.len() * expected, || {
                format!("({q},{n},{d}): graph has {} edges", g.edge_count())
            })?;
            counts.push(expected);
        }
        let fano = subspace_complement_graph(2, 3, 1).map_err(|e| e.to_string())?;
        let orbits = edge_orbits(&fano, &SearchConfig::default()).map_err(|e| e.to_string())?;
        ensure(fano.edge_count() == 28, || format!("(2,3,1) graph has {} edges", fano.edge_count()))?;
        ensure(orbits.len() == 1, || format!("(2,3,1) graph has {} edge orbits", orbits.len()))?;
        Ok(format!("complement counts {counts:?}; (2,3,1) graph: 28 edges, 1 edge orbit"))
    })
}

fn aut_sets_agree(g: &BiGraph, search: &SearchConfig) -> std::result::Result<(), String> {
    let brute: BTreeSet<Perm> = brute_force_aut(g)
        .map_err(|e| e.to_string())?
        .iter()
        .map(BiAut::to_perm)
        .collect();
    let engine: BTreeSet<Perm> = automorphism_closure(g, search, DEFAULT_CAP)
        .map_err(|e| e.to_string())?
        .elements()
        .iter()
        .cloned()
        .collect();
    ensure(brute == engine, || {
        format!("{}x{} graph {:?}: engine {} vs brute {}", g.a(), g.b(), g.edges(), engine.len(), brute.len())
    })
}

pub fn check_aut_engine() -> CheckReport {
    timed(6, Some(AUT_ENGINE_LIMIT), || {
        let search = SearchConfig::default();
        let mut exhaustive = 0usize;
        for a in 1..=AUT_SWEEP_MAX {
            for b in 1..=AUT_SWEEP_MAX {
                let cells: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
                for mask in 0u32..(1 << cells.len()) {
                    let edges: Vec<_> = (0..cells.len()).filter(|k| mask >> k & 1 == 1).map(|k| cells[k]).collect();
                    let g = BiGraph::new(a, b, edges).map_err(|e| e.to_string())?;
                    aut_sets_agree(&g, &search)?;
                    exhaustive += 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(AUT_RANDOM_SEED);
        for _ in 0..AUT_RANDOM_COUNT {
            let a = rng.gen_range(1..=AUT_RANDOM_MAX);
            let b = rng.gen_range(1..=AUT_RANDOM_MAX);
            let density: f64 = rng.gen_range(0.0..=1.0);
            let edges: Vec<_> = (0..a)
                .flat_map(|i| (0..b).map(move |j| (i, j)))
                .filter(|_| rng.gen_bool(density))
                .collect();
            let g = BiGraph::new(a, b, edges).map_err(|e| e.to_string())?;
            aut_sets_agree(&g, &search)?;
        }
        Ok(format!("{exhaustive} exhaustive and {AUT_RANDOM_COUNT} random graphs agree with brute force"))
    })
}

pub fn check_iff_spot() -> CheckReport {
    timed(7, None, || {
        let decider = Decider::new(DeciderConfig {
            oracle: None,
            ..DeciderConfig::default()
        });
        let search = SearchConfig::default();
        let cases = [
            ((5, 10, 30), Outcome::Realizable),
            ((4, 12, 24), Outcome::Realizable),
            ((5, 15, 45), Outcome::NotRealizable),
            ((8, 8, 40), Outcome::NotRealizable),
        ];
        for (x, want) in cases {
            let v = decider.decide(t(x));
            ensure(v.outcome == want, || format!("{} is {:?}, expected {want:?}", t(x), v.outcome))?;
            verify(&v, &search, false).map_err(|e| format!("{}: {e}", t(x)))?;
        }
        let g = pair_block_complement(5, 2).map_err(|e| e.to_string())?;
        ensure((g.a(), g.b(), g.edge_count()) == (5, 10, 30), || "pair_block_complement(5, 2) has wrong shape".into())?;
        let et = is_edge_transitive(&g, &search).map_err(|e| e.to_string())?;
        ensure(et, || "pair_block_complement(5, 2) is not edge-transitive".into())?;
        Ok("4 spot values match; pair_block_complement(5, 2) is edge-transitive".into())
    })
}

pub fn check_oracle_agreement() -> CheckReport {
    timed(8, Some(ORACLE_AGREEMENT_LIMIT), || {
        let decider = Decider::new(DeciderConfig {
            oracle: None,
            ..DeciderConfig::default()
        });
        let budget = OracleBudget::default();
        let rows = decider.classify(ORACLE_AGREEMENT_BOX, ORACLE_AGREEMENT_BOX, 1);
        let mut compared = 0;
        for v in &rows {
            let x = v.triple;
            let o = oracle_decide(x.a as usize, x.b as usize, x.c as usize, &budget).outcome;
            let oracle = match o {
                OracleOutcome::Realizable(_) => Outcome::Realizable,
                OracleOutcome::NotRealizable => Outcome::NotRealizable,
                OracleOutcome::Exceeded => return Err(format!("oracle budget exceeded on {x}")),
            };
            if v.outcome != Outcome::Unknown {
                ensure(v.outcome == oracle, || format!("{x}: decide {:?}, oracle {oracle:?}", v.outcome))?;
                compared += 1;
            }
        }
        Ok(format!("{compared} of {} triples compared, all agree", rows.len()))
    })
}

/// Runs one check by name.
pub fn run_check(name: &str) -> Option<CheckReport> {
    Some(match name {
        "classification" => check_classification(),
        "oracle-5-5-15" => check_oracle_5_5_15(),
        "cig-bijection" => check_cig_bijection(),
        "groups-to-graphs" => check_groups_to_graphs(),
        "geometric" => check_geometric(),
        "aut-engine" => check_aut_engine(),
        "iff-spot" => check_iff_spot(),
        "oracle-agreement" => check_oracle_agreement(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CheckReport> {
    CHECK_NAMES.iter().filter_map(|n| run_check(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_file_parses() {
        let g = parse_triples(GOLDEN_NOT_REALIZABLE).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.contains(&Triple::new(5, 5, 15)));
        assert!(parse_triples("1 2").is_err());
        assert!(parse_triples("1 x 3").is_err());
    }

    #[test]
    fn mutated_golden_list_names_the_failing_check() {
        let mut golden = parse_triples(GOLDEN_NOT_REALIZABLE).unwrap();
        golden.pop();
        let report = check_classification_against(&golden);
        assert!(!report.passed);
        assert_eq!(report.name, "classification");
        assert!(report.detail.contains("(10, 10, 70)"), "{}", report.detail);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(run_check("nope").is_none());
        assert_eq!(run_check("iff-spot").unwrap().id, 7);
    }

    #[test]
    fn corpus_respects_order_bound() {
        let corpus = witness_corpus().unwrap();
        assert!(corpus.len() > 30);
        assert!(corpus.iter().all(|(_, t)| t.g.order() <= CORPUS_MAX_ORDER));
    }
}
