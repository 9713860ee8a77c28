//! The decision pipeline.
//!
//! Order of evaluation on the normalized triple (`a <= b`):
//!
//! 1. necessary conditions `lcm(a, b) | c <= ab`
//! 2. divisor sandwich `lcm(a, b) | c | ab`
//! 3. explicit group catalog
//! 4. the `(n, ne, n(n-1)e)` and `(n, ne, npe)` families
//! 5. the two iff-theorems on `(n, nl, n(n-2)l)` and `(n, nl, npl)`
//! 6. subspace-complement (geometric) triples
//! 7. product decomposition into realizable factors
//! 8. the exhaustive oracle, within budget
//!
//! `NotRealizable` only ever comes from steps 1, 5 and 8. Rules in steps 2-6
//! are all evaluated and must agree; a conflict is a bug and panics.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autgraph::{is_edge_transitive, SearchConfig};
use crate::bigraph::BiGraph;
use crate::numtheory::{binomial, checked_pow_u64, divisors, euler_phi, gcd, is_prime, lcm, q_binomial};
use crate::oracle::{oracle_decide, OracleBudget, OracleOutcome, OracleStats};
use crate::permgroup::{families, triple_indices, GroupTriple, DEFAULT_CAP};
use crate::realize::{
    affine_graph, coset_intersection_graph, complete_bipartite, matching_complement,
    pair_block_complement, perfect_matching, subset_incidence, subspace_complement_graph,
};
use crate::triple::Triple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Realizable,
    NotRealizable,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleName {
    /// `lcm(a,b) | c | ab`: `(e,e,e²)·(f,f,f)·(m,n,mn)`.
    DivisorSandwich,
    /// `(n, ne, n(n-1)e)`.
    NMinusOne,
    /// `(n, ne, npe)` with `p | φ(n)`, `p ∤ n`.
    PhiPrime,
    /// `(n, nl, n(n-2)l)`, `n = 2m` even: `(m,m,m(m-1))·(2,2l,4l)`.
    NMinusTwoEven,
    /// `(n, nl, n(n-2)l)`, `n` odd, `(n-1) | 2l`.
    PairBlock,
    /// `(n, nl, npl)`, `p+1 < n < 2p`, `C(n,p) | nl`.
    PrimeWindow,
    /// `([n d]_q, [n d]_q, q^{d(n-d)}[n d]_q)`.
    Geometric,
}

/// Rule parameters; only the ones a rule uses are present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupConstruction {
    /// `S_4` with two distinct Sylow 3-subgroups.
    S4Sylow3Pair,
    /// `S_5` on 2-subsets with the stabilizers of `{0,1}` and `{2,3}`.
    S5TwoSubsets,
}

impl GroupConstruction {
    pub fn order(self) -> usize {
        match self {
            GroupConstruction::S4Sylow3Pair => 24,
            GroupConstruction::S5TwoSubsets => 120,
        }
    }

    pub fn build(self) -> crate::Result<GroupTriple> {
        match self {
            GroupConstruction::S4Sylow3Pair => families::s4_sylow3_pair(),
            GroupConstruction::S5TwoSubsets => families::s5_two_subsets(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// `(n, nl, n(n-2)l)` is not realizable iff `n` odd and `(n-1) ∤ 2l`.
    NMinusTwo,
    /// For `p+1 < n < 2p`, `(n, nl, npl)` is realizable iff `C(n,p) | nl`.
    PrimeWindow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NecessaryCondition {
    NonPositive,
    LcmDividesC,
    CAtMostAb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub triple: Triple,
    pub certificate: Certificate,
}

/// Replayable justification of a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Rule { rule: RuleName, params: Params },
    Product { factors: Vec<Factor> },
    Group { construction: GroupConstruction },
    /// A witness graph in the bigraph text format.
    Graph { graph: String },
    TheoremRefutation { theorem: Theorem, params: Params },
    OracleExhausted { stats: OracleStats, budget: OracleBudget },
    NecessaryFailure { condition: NecessaryCondition },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    /// No rule applies and the oracle is disabled.
    NoRuleApplies,
    /// No rule applies and the oracle ran out of budget.
    OracleBudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub triple: Triple,
    pub outcome: Outcome,
    /// Proves the outcome for `triple` (rules are stated for the normalized
    /// orientation; replay transposes as needed).
    pub certificate: Option<Certificate>,
    /// Whether `a` and `b` were swapped to get `a <= b`.
    pub normalized: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<UnknownReason>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeciderConfig {
    /// `None` disables the oracle fallback.
    pub oracle: Option<OracleBudget>,
    pub search: SearchConfig,
    pub group_cap: usize,
    /// Geometric scan: primes `q <= geometric_q_max`, dimensions `n <= geometric_n_max`.
    pub geometric_q_max: u64,
    pub geometric_n_max: u64,
    pub product_depth: usize,
}

impl Default for DeciderConfig {
    fn default() -> Self {
        DeciderConfig {
            oracle: Some(OracleBudget::default()),
            search: SearchConfig::default(),
            group_cap: DEFAULT_CAP,
            geometric_q_max: 13,
            geometric_n_max: 6,
            product_depth: 16,
        }
    }
}

type RuleHit = (Outcome, Certificate);

fn rule(rule: RuleName, params: Params) -> Certificate {
    Certificate::Rule { rule, params }
}

/// Both orientations, `(a, b)` first.
fn orientations(t: &Triple) -> [(u64, u64, u64); 2] {
    [(t.a, t.b, t.c), (t.b, t.a, t.c)]
}

pub fn check_necessary(t: &Triple) -> Result<(), NecessaryCondition> {
    if !t.is_positive() {
        Err(NecessaryCondition::NonPositive)
    } else if !t.c.is_multiple_of(lcm(t.a, t.b)) {
        Err(NecessaryCondition::LcmDividesC)
    } else if t.c as u128 > t.a as u128 * t.b as u128 {
        Err(NecessaryCondition::CAtMostAb)
    } else {
        Ok(())
    }
}

pub fn rule_divisor_sandwich(t: &Triple) -> Option<Certificate> {
    if check_necessary(t).is_err() || !(t.a as u128 * t.b as u128).is_multiple_of(t.c as u128) {
        return None;
    }
    let d = gcd(t.a, t.b);
    let (m, n) = (t.a / d, t.b / d);
    let e = t.c / (d * m * n);
    let f = d / e;
    debug_assert_eq!(d % e, 0);
    Some(rule(
        RuleName::DivisorSandwich,
        Params {
            e: Some(e),
            f: Some(f),
            m: Some(m),
            n: Some(n),
            ..Params::default()
        },
    ))
}

/// Catalog groups larger than `group_cap` are skipped.
pub fn rule_catalog(t: &Triple, group_cap: usize) -> Option<Certificate> {
    let construction = match (t.a, t.b, t.c) {
        (8, 8, 24) => GroupConstruction::S4Sylow3Pair,
        (10, 10, 30) => GroupConstruction::S5TwoSubsets,
        _ => return None,
    };
    (construction.order() <= group_cap).then_some(Certificate::Group { construction })
}

pub fn rule_nminus1(t: &Triple) -> Option<Certificate> {
    orientations(t).into_iter().find_map(|(x, y, c)| {
        if x < 2 || y % x != 0 {
            return None;
        }
        let e = y / x;
        (c == x * (x - 1) * e).then(|| {
            rule(
                RuleName::NMinusOne,
                Params {
                    n: Some(x),
                    e: Some(e),
                    ..Params::default()
                },
            )
        })
    })
}

pub fn rule_phi_prime(t: &Triple) -> Option<Certificate> {
    orientations(t).into_iter().find_map(|(x, y, c)| {
        if x < 2 || y % x != 0 || c % y != 0 {
            return None;
        }
        let (e, p) = (y / x, c / y);
        (is_prime(p) && euler_phi(x).is_multiple_of(p) && x % p != 0).then(|| {
            rule(
                RuleName::PhiPrime,
                Params {
                    n: Some(x),
                    p: Some(p),
                    e: Some(e),
                    ..Params::default()
                },
            )
        })
    })
}

/// Matches `(n, nl, n(n-2)l)` with `n > 2` in either orientation.
fn match_nminus2(t: &Triple) -> Option<(u64, u64)> {
    orientations(t).into_iter().find_map(|(x, y, c)| {
        if x < 3 || y % x != 0 {
            return None;
        }
        let l = y / x;
        (c == x * (x - 2) * l).then_some((x, l))
    })
}

fn nminus2_refutes(n: u64, l: u64) -> bool {
    n % 2 == 1 && !(2 * l).is_multiple_of(n - 1)
}

pub fn rule_thm_nminus2(t: &Triple) -> Option<RuleHit> {
    let (n, l) = match_nminus2(t)?;
    let params = Params {
        n: Some(n),
        l: Some(l),
        ..Params::default()
    };
    Some(if nminus2_refutes(n, l) {
        (
            Outcome::NotRealizable,
            Certificate::TheoremRefutation {
                theorem: Theorem::NMinusTwo,
                params,
            },
        )
    } else if n % 2 == 1 {
        (Outcome::Realizable, rule(RuleName::PairBlock, params))
    } else {
        (Outcome::Realizable, rule(RuleName::NMinusTwoEven, params))
    })
}

/// Matches `(n, nl, npl)` with `p` prime and `p + 1 < n < 2p`.
fn match_prime_window(t: &Triple) -> Option<(u64, u64, u64)> {
    orientations(t).into_iter().find_map(|(x, y, c)| {
        if y % x != 0 || c % y != 0 {
            return None;
        }
        let (l, p) = (y / x, c / y);
        (is_prime(p) && p + 1 < x && x < 2 * p).then_some((x, l, p))
    })
}

fn prime_window_realizable(n: u64, l: u64, p: u64) -> bool {
    match binomial(n, p) {
        Ok(count) => (n as u128 * l as u128).is_multiple_of(count),
        Err(_) => false,
    }
}

pub fn rule_thm_prime_window(t: &Triple) -> Option<RuleHit> {
    let (n, l, p) = match_prime_window(t)?;
    let params = Params {
        n: Some(n),
        l: Some(l),
        p: Some(p),
        ..Params::default()
    };
    Some(if prime_window_realizable(n, l, p) {
        (Outcome::Realizable, rule(RuleName::PrimeWindow, params))
    } else {
        (
            Outcome::NotRealizable,
            Certificate::TheoremRefutation {
                theorem: Theorem::PrimeWindow,
                params,
            },
        )
    })
}

fn geometric_triple(q: u64, n: u64, d: u64) -> Option<Triple> {
    let count = q_binomial(n, d, q).ok()?;
    let degree = checked_pow_u64(q, d * (n - d)).ok()?;
    let c = count.checked_mul(degree)?;
    let count = u64::try_from(count).ok()?;
    Some(Triple::new(count, count, u64::try_from(c).ok()?))
}

pub fn rule_geometric(t: &Triple, q_max: u64, n_max: u64) -> Option<Certificate> {
    if t.a != t.b {
        return None;
    }
    for q in (2..=q_max).filter(|&q| is_prime(q)) {
        for n in 2..=n_max {
            for d in 1..n {
                if geometric_triple(q, n, d) == Some(*t) {
                    return Some(rule(
                        RuleName::Geometric,
                        Params {
                            q: Some(q),
                            n: Some(n),
                            d: Some(d),
                            ..Params::default()
                        },
                    ));
                }
            }
        }
    }
    None
}

/// Every direct rule that fires on `t`, in pipeline order. Panics if two rules
/// disagree.
pub fn rule_hits(t: &Triple, config: &DeciderConfig) -> Vec<RuleHit> {
    let realizable = |c: Option<Certificate>| c.map(|c| (Outcome::Realizable, c));
    let hits: Vec<RuleHit> = [
        realizable(rule_divisor_sandwich(t)),
        realizable(rule_catalog(t, config.group_cap)),
        realizable(rule_nminus1(t)),
        realizable(rule_phi_prime(t)),
        rule_thm_nminus2(t),
        rule_thm_prime_window(t),
        realizable(rule_geometric(t, config.geometric_q_max, config.geometric_n_max)),
    ]
    .into_iter()
    .flatten()
    .collect();
    if let Some(first) = hits.first() {
        assert!(
            hits.iter().all(|(o, _)| *o == first.0),
            "rules disagree on {t}: {hits:?}"
        );
    }
    hits
}

/// Decision engine with a memo table for product decomposition.
pub struct Decider {
    pub config: DeciderConfig,
    memo: Mutex<HashMap<(Triple, usize), Option<Certificate>>>,
}

impl Default for Decider {
    fn default() -> Self {
        Decider::new(DeciderConfig::default())
    }
}

impl Decider {
    pub fn new(config: DeciderConfig) -> Self {
        Decider {
            config,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Realizability proof from rules and products alone.
    fn prove(&self, t: &Triple, depth: usize) -> Option<Certificate> {
        if check_necessary(t).is_err() {
            return None;
        }
        let key = (t.normalized().0, depth);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result = match rule_hits(t, &self.config).into_iter().next() {
            Some((Outcome::Realizable, cert)) => Some(cert),
            Some(_) => None,
            None => self.decompose_product(t, depth),
        };
        self.memo.lock().unwrap().insert(key, result.clone());
        result
    }

    /// Searches `t = t1 · t2` with both factors proper and provably
    /// realizable. Never refutes.
    pub fn decompose_product(&self, t: &Triple, depth: usize) -> Option<Certificate> {
        if depth == 0 {
            return None;
        }
        let (da, db, dc) = (divisors(t.a), divisors(t.b), divisors(t.c));
        for &a1 in &da {
            for &b1 in &db {
                for &c1 in &dc {
                    let f1 = Triple::new(a1, b1, c1);
                    let f2 = Triple::new(t.a / a1, t.b / b1, t.c / c1);
                    if f1 == Triple::UNIT || f2 == Triple::UNIT {
                        continue;
                    }
                    if !f1.passes_necessary() || !f2.passes_necessary() {
                        continue;
                    }
                    let Some(c1) = self.prove(&f1, depth - 1) else {
                        continue;
                    };
                    let Some(c2) = self.prove(&f2, depth - 1) else {
                        continue;
                    };
                    return Some(Certificate::Product {
                        factors: vec![
                            Factor {
                                triple: f1,
                                certificate: c1,
                            },
                            Factor {
                                triple: f2,
                                certificate: c2,
                            },
                        ],
                    });
                }
            }
        }
        None
    }

    pub fn decide(&self, t: Triple) -> Verdict {
        let (n, swapped) = t.normalized();
        let verdict = |outcome, certificate| Verdict {
            triple: t,
            outcome,
            certificate,
            normalized: swapped,
            reason: None,
            oracle: None,
        };
        if let Err(condition) = check_necessary(&n) {
            return verdict(
                Outcome::NotRealizable,
                Some(Certificate::NecessaryFailure { condition }),
            );
        }
        if let Some((outcome, cert)) = rule_hits(&n, &self.config).into_iter().next() {
            return verdict(outcome, Some(cert));
        }
        if let Some(cert) = self.decompose_product(&n, self.config.product_depth) {
            return verdict(Outcome::Realizable, Some(cert));
        }
        let Some(budget) = self.config.oracle else {
            return Verdict {
                reason: Some(UnknownReason::NoRuleApplies),
                ..verdict(Outcome::Unknown, None)
            };
        };
        let result = oracle_decide(n.a as usize, n.b as usize, n.c as usize, &budget);
        let stats = Some(result.stats);
        match result.outcome {
            OracleOutcome::Realizable(g) => Verdict {
                oracle: stats,
                ..verdict(
                    Outcome::Realizable,
                    Some(Certificate::Graph {
                        graph: g.serialize(),
                    }),
                )
            },
            OracleOutcome::NotRealizable => Verdict {
                oracle: stats,
                ..verdict(
                    Outcome::NotRealizable,
                    Some(Certificate::OracleExhausted {
                        stats: result.stats,
                        budget,
                    }),
                )
            },
            OracleOutcome::Exceeded => Verdict {
                reason: Some(UnknownReason::OracleBudgetExceeded),
                oracle: stats,
                ..verdict(Outcome::Unknown, None)
            },
        }
    }

    /// Verdicts for every triple with `a <= a_max`, `b <= b_max` and
    /// `lcm(a, b) | c <= ab`, ordered by `(a, b, c)`.
    pub fn classify(&self, a_max: u64, b_max: u64, jobs: usize) -> Vec<Verdict> {
        let triples: Vec<Triple> = (1..=a_max)
            .flat_map(|a| (1..=b_max).map(move |b| (a, b)))
            .flat_map(|(a, b)| {
                let l = lcm(a, b);
                (1..=a * b / l).map(move |k| Triple::new(a, b, k * l))
            })
            .collect();
        if jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            pool.install(|| triples.par_iter().map(|t| self.decide(*t)).collect())
        } else {
            triples.iter().map(|t| self.decide(*t)).collect()
        }
    }
}

pub fn decide(t: Triple, config: &DeciderConfig) -> Verdict {
    Decider::new(*config).decide(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("certificate is missing")]
    MissingCertificate,
    #[error("certificate kind does not fit outcome {0:?}")]
    WrongKind(Outcome),
    #[error("certificate proves {proved}, not {wanted} or its swap")]
    TripleMismatch { proved: Triple, wanted: Triple },
    #[error("rule {0:?} is missing parameter {1}")]
    MissingParam(RuleName, &'static str),
    #[error("witness is not edge-transitive")]
    NotEdgeTransitive,
    #[error("witness has isolated vertices")]
    IsolatedVertex,
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("construction failed: {0}")]
    Construction(#[from] crate::Error),
}

fn param(rule: RuleName, v: Option<u64>, name: &'static str) -> Result<u64, VerifyError> {
    v.ok_or(VerifyError::MissingParam(rule, name))
}

fn usize_of(x: u64) -> Result<usize, VerifyError> {
    usize::try_from(x).map_err(|_| VerifyError::Hypothesis(format!("{x} does not fit in usize")))
}

/// Realizes `lcm(a,b) | c | ab` as `K_{e,e} ⊗ M_f ⊗ K_{m,n}`.
fn sandwich_graph(e: u64, f: u64, m: u64, n: u64) -> Result<BiGraph, VerifyError> {
    let (e, f, m, n) = (usize_of(e)?, usize_of(f)?, usize_of(m)?, usize_of(n)?);
    Ok(complete_bipartite(e, e)?
        .tensor(&perfect_matching(f)?)
        .tensor(&complete_bipartite(m, n)?))
}

fn sandwich_for(t: &Triple) -> Result<BiGraph, VerifyError> {
    match rule_divisor_sandwich(t) {
        Some(Certificate::Rule { params, .. }) => sandwich_graph(
            params.e.unwrap(),
            params.f.unwrap(),
            params.m.unwrap(),
            params.n.unwrap(),
        ),
        _ => Err(VerifyError::Hypothesis(format!("{t} is not a divisor sandwich"))),
    }
}

fn dims(g: &BiGraph) -> Triple {
    Triple::new(g.a() as u64, g.b() as u64, g.edge_count() as u64)
}

fn rule_witness(name: RuleName, p: &Params) -> Result<BiGraph, VerifyError> {
    let get = |v, s| param(name, v, s);
    let g = match name {
        RuleName::DivisorSandwich => {
            sandwich_graph(get(p.e, "e")?, get(p.f, "f")?, get(p.m, "m")?, get(p.n, "n")?)?
        }
        RuleName::NMinusOne => {
            let (n, e) = (get(p.n, "n")?, get(p.e, "e")?);
            matching_complement(usize_of(n)?)?.tensor(&complete_bipartite(1, usize_of(e)?)?)
        }
        RuleName::PhiPrime => {
            let (n, pr, e) = (get(p.n, "n")?, get(p.p, "p")?, get(p.e, "e")?);
            if !is_prime(pr) || !euler_phi(n).is_multiple_of(pr) {
                return Err(VerifyError::Hypothesis(format!("{pr} is not a prime dividing φ({n})")));
            }
            affine_graph(n, pr)?.tensor(&complete_bipartite(1, usize_of(e)?)?)
        }
        RuleName::NMinusTwoEven => {
            let (n, l) = (get(p.n, "n")?, get(p.l, "l")?);
            if n % 2 != 0 || n < 4 {
                return Err(VerifyError::Hypothesis(format!("n={n} is not even and >= 4")));
            }
            matching_complement(usize_of(n / 2)?)?.tensor(&sandwich_for(&Triple::new(2, 2 * l, 4 * l))?)
        }
        RuleName::PairBlock => pair_block_complement(usize_of(get(p.n, "n")?)?, usize_of(get(p.l, "l")?)?)?,
        RuleName::PrimeWindow => {
            let (n, l, pr) = (get(p.n, "n")?, get(p.l, "l")?, get(p.p, "p")?);
            let count = binomial(n, pr)?;
            if count == 0 || !(n as u128 * l as u128).is_multiple_of(count) {
                return Err(VerifyError::Hypothesis(format!("C({n},{pr}) does not divide {n}·{l}")));
            }
            subset_incidence(usize_of(n)?, usize_of(pr)?, usize_of((n as u128 * l as u128 / count) as u64)?)?
        }
        RuleName::Geometric => subspace_complement_graph(
            get(p.q, "q")?,
            usize_of(get(p.n, "n")?)?,
            usize_of(get(p.d, "d")?)?,
        )?,
    };
    Ok(g)
}

/// Rebuilds the witness graph a realizability certificate describes, oriented
/// to `target`.
pub fn replay_witness(target: &Triple, cert: &Certificate) -> Result<BiGraph, VerifyError> {
    let g = match cert {
        Certificate::Rule { rule, params } => rule_witness(*rule, params)?,
        Certificate::Group { construction } => {
            let t = construction.build()?;
            let cig = coset_intersection_graph(&t)?;
            debug_assert_eq!(dims(&cig.graph), triple_indices(&t));
            cig.graph
        }
        Certificate::Graph { graph } => BiGraph::parse(graph)?,
        Certificate::Product { factors } => {
            let mut acc: Option<BiGraph> = None;
            for f in factors {
                let w = replay_witness(&f.triple, &f.certificate)?;
                acc = Some(match acc {
                    None => w,
                    Some(prev) => prev.tensor(&w),
                });
            }
            acc.ok_or(VerifyError::Hypothesis("empty product".into()))?
        }
        _ => return Err(VerifyError::WrongKind(Outcome::Realizable)),
    };
    let proved = dims(&g);
    if proved == *target {
        Ok(g)
    } else if proved == target.swapped() {
        Ok(g.transpose())
    } else {
        Err(VerifyError::TripleMismatch {
            proved,
            wanted: *target,
        })
    }
}

fn check_refutation(t: &Triple, theorem: Theorem, p: &Params) -> Result<(), VerifyError> {
    let missing = |name| VerifyError::Hypothesis(format!("missing parameter {name}"));
    let n = p.n.ok_or_else(|| missing("n"))?;
    let l = p.l.ok_or_else(|| missing("l"))?;
    let matches = |shape: Triple| shape == *t || shape.swapped() == *t;
    match theorem {
        Theorem::NMinusTwo => {
            if n < 3 || !matches(Triple::new(n, n * l, n * (n - 2) * l)) {
                return Err(VerifyError::Hypothesis(format!("{t} is not (n, nl, n(n-2)l) for n={n}, l={l}")));
            }
            if !nminus2_refutes(n, l) {
                return Err(VerifyError::Hypothesis(format!("n={n} even or {} | {}", n - 1, 2 * l)));
            }
        }
        Theorem::PrimeWindow => {
            let pr = p.p.ok_or_else(|| missing("p"))?;
            if !is_prime(pr) || !(pr + 1 < n && n < 2 * pr) {
                return Err(VerifyError::Hypothesis(format!("p={pr}, n={n} outside the prime window")));
            }
            if !matches(Triple::new(n, n * l, n * pr * l)) {
                return Err(VerifyError::Hypothesis(format!("{t} is not (n, nl, npl)")));
            }
            if prime_window_realizable(n, l, pr) {
                return Err(VerifyError::Hypothesis(format!("C({n},{pr}) divides {}", n * l)));
            }
        }
    }
    Ok(())
}

/// Replays a verdict. Realizable certificates are rebuilt into a witness graph
/// and checked for exact parameters, no isolated vertices and
/// edge-transitivity; refutations have their hypotheses re-checked, and an
/// exhausted oracle run is repeated when `rerun_oracle` is set.
pub fn verify(v: &Verdict, search: &SearchConfig, rerun_oracle: bool) -> Result<(), VerifyError> {
    let t = v.triple;
    match v.outcome {
        Outcome::Unknown => Ok(()),
        Outcome::Realizable => {
            let cert = v.certificate.as_ref().ok_or(VerifyError::MissingCertificate)?;
            let g = replay_witness(&t, cert)?;
            if g.has_isolated_vertex() {
                return Err(VerifyError::IsolatedVertex);
            }
            if !is_edge_transitive(&g, search)? {
                return Err(VerifyError::NotEdgeTransitive);
            }
            Ok(())
        }
        Outcome::NotRealizable => match v.certificate.as_ref().ok_or(VerifyError::MissingCertificate)? {
            Certificate::NecessaryFailure { condition } => match check_necessary(&t) {
                Err(c) if c == *condition => Ok(()),
                _ => Err(VerifyError::Hypothesis(format!("{t} does not fail {condition:?}"))),
            },
            Certificate::TheoremRefutation { theorem, params } => check_refutation(&t, *theorem, params),
            Certificate::OracleExhausted { budget, .. } => {
                if !rerun_oracle {
                    return Ok(());
                }
                let (n, _) = t.normalized();
                match oracle_decide(usize_of(n.a)?, usize_of(n.b)?, usize_of(n.c)?, budget).outcome {
                    OracleOutcome::NotRealizable => Ok(()),
                    other => Err(VerifyError::Hypothesis(format!("oracle rerun gave {other:?}"))),
                }
            }
            _ => Err(VerifyError::WrongKind(Outcome::NotRealizable)),
        },
    }
}
