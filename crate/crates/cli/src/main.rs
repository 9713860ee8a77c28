use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};
use thiserror::Error;

use index_triples::autgraph::{analyze, edge_orbits, is_edge_transitive, SearchConfig};
use index_triples::bigraph::BiGraph;
use index_triples::checks::{run_check, CHECK_NAMES};
use index_triples::decider::{
    replay_witness, verify, Certificate, Decider, DeciderConfig, Outcome, UnknownReason, Verdict,
};
use index_triples::oracle::{oracle_decide, OracleBudget, OracleOutcome};
use index_triples::permgroup::DEFAULT_CAP;
use index_triples::Triple;

const EXIT_DECIDED: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "itriples", version, about = "Decide index-realizable triples (a, b, c)")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Oracle limit on generated graphs.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    oracle_max_candidates: u64,
    /// Oracle limit on generator backtracking nodes.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    oracle_max_nodes: u64,
    /// Node budget for each automorphism search.
    #[arg(long, global = true, default_value_t = index_triples::autgraph::DEFAULT_NODE_BUDGET)]
    search_budget: u64,
    /// Largest group order built explicitly.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    group_cap: usize,
    /// Never fall back to the exhaustive oracle.
    #[arg(long, global = true)]
    no_oracle: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a triple and print its certificate.
    Decide(TripleArgs),
    /// Write an edge-transitive witness graph for a realizable triple.
    Witness {
        #[command(flatten)]
        triple: TripleArgs,
        /// Bigraph text output file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Graphviz DOT output file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide every triple with a <= a-max, b <= b-max and lcm(a, b) | c <= ab.
    Classify {
        #[arg(long, default_value_t = 10)]
        a_max: u64,
        #[arg(long, default_value_t = 10)]
        b_max: u64,
        /// Worker threads; output order does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the exhaustive oracle alone.
    Oracle(TripleArgs),
    /// Tools for bigraph files.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Run the acceptance checks.
    VerifyPaper {
        /// Run only the named checks.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
        only: Vec<String>,
    },
    /// Replay a verdict JSON file ("-" for stdin).
    VerifyCert { file: PathBuf },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Automorphism group order and edge orbits.
    Aut { file: PathBuf },
    /// SHA-256 digest of the canonical certificate.
    Canon { file: PathBuf },
    /// Bipartite complement.
    Complement {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TripleArgs {
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    a: u64,
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    b: u64,
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    c: u64,
}

impl TripleArgs {
    fn triple(&self) -> Triple {
        Triple::new(self.a, self.b, self.c)
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] index_triples::Error),
    #[error(transparent)]
    Verify(#[from] index_triples::decider::VerifyError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

type CliResult = Result<u8, CliError>;

impl Opts {
    fn search(&self) -> SearchConfig {
        SearchConfig {
            node_budget: self.search_budget,
        }
    }

    fn budget(&self) -> OracleBudget {
        OracleBudget {
            max_candidates: self.oracle_max_candidates,
            max_nodes: self.oracle_max_nodes,
            search_nodes: self.search_budget,
            ..OracleBudget::default()
        }
    }

    fn decider(&self) -> Decider {
        Decider::new(DeciderConfig {
            oracle: (!self.no_oracle).then(|| self.budget()),
            search: self.search(),
            group_cap: self.group_cap,
            ..DeciderConfig::default()
        })
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_graph(path: &Path) -> Result<BiGraph, CliError> {
    Ok(BiGraph::parse(&read_input(path)?)?)
}

fn print_json(value: &impl serde::Serialize) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Realizable => "realizable",
        Outcome::NotRealizable => "not_realizable",
        Outcome::Unknown => "unknown",
    }
}

fn exit_for(v: &Verdict) -> u8 {
    match v.reason {
        _ if v.outcome != Outcome::Unknown => EXIT_DECIDED,
        Some(UnknownReason::OracleBudgetExceeded) => EXIT_BUDGET,
        _ => EXIT_UNKNOWN,
    }
}

fn kind_name(c: &Certificate) -> String {
    serde_json::to_value(c)
        .ok()
        .and_then(|v| v["kind"].as_str().map(str::to_string))
        .unwrap_or_default()
}

fn describe(c: &Certificate) -> String {
    let params = |p: &serde_json::Value| {
        p.as_object()
            .map(|m| {
                m.iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .unwrap_or_default()
    };
    let v = serde_json::to_value(c).unwrap_or_default();
    match c {
        Certificate::Rule { .. } => format!("rule {} ({})", v["rule"].as_str().unwrap_or(""), params(&v["params"])),
        Certificate::TheoremRefutation { .. } => format!(
            "theorem_refutation {} ({})",
            v["theorem"].as_str().unwrap_or(""),
            params(&v["params"])
        ),
        Certificate::Product { factors } => {
            let parts: Vec<String> = factors
                .iter()
                .map(|f| format!("{} [{}]", f.triple, describe(&f.certificate)))
                .collect();
            format!("product {}", parts.join(" x "))
        }
        Certificate::Group { .. } => format!("group {}", v["construction"].as_str().unwrap_or("")),
        Certificate::Graph { graph } => {
            let edges = graph.lines().filter(|l| l.starts_with("e ")).count();
            format!("graph witness with {edges} edges")
        }
        Certificate::OracleExhausted { stats, .. } => format!(
            "oracle_exhausted ({} graphs generated, {} classes, none edge-transitive)",
            stats.graphs_generated, stats.graphs_after_dedup
        ),
        Certificate::NecessaryFailure { .. } => format!("necessary_failure {}", v["condition"].as_str().unwrap_or("")),
    }
}

fn cmd_decide(opts: &Opts, args: &TripleArgs) -> CliResult {
    let v = opts.decider().decide(args.triple());
    if opts.json {
        print_json(&v)?;
    } else {
        println!("{}: {}", v.triple, outcome_name(v.outcome));
        match (&v.certificate, v.reason) {
            (Some(c), _) => println!("certificate: {}", describe(c)),
            (None, Some(UnknownReason::OracleBudgetExceeded)) => println!("reason: oracle budget exceeded"),
            (None, _) => println!("reason: no rule applies and the oracle is disabled"),
        }
        if let Some(s) = v.oracle {
            println!(
                "oracle: {} graphs generated, {} classes, {} nodes",
                s.graphs_generated, s.graphs_after_dedup, s.nodes_explored
            );
        }
    }
    Ok(exit_for(&v))
}

fn cmd_witness(opts: &Opts, args: &TripleArgs, out: Option<&Path>, dot: Option<&Path>) -> CliResult {
    let t = args.triple();
    let v = opts.decider().decide(t);
    let cert = match (v.outcome, &v.certificate) {
        (Outcome::Realizable, Some(c)) => c,
        _ => {
            return Err(CliError::Input(format!(
                "{t} is {}; no witness",
                outcome_name(v.outcome)
            )))
        }
    };
    let g = replay_witness(&t, cert)?;
    if !is_edge_transitive(&g, &opts.search())? {
        return Err(CliError::Input(format!("witness for {t} failed edge-transitivity")));
    }
    if let Some(path) = out {
        write_output(path, &g.serialize())?;
    }
    if let Some(path) = dot {
        write_output(path, &g.to_dot())?;
    }
    if opts.json {
        print_json(&json!({ "triple": t, "certificate": cert, "graph": g.serialize() }))?;
    } else if out.is_none() && dot.is_none() {
        print!("{}", g.serialize());
    } else {
        println!("{t}: witness with {} edges written", g.edge_count());
    }
    Ok(EXIT_DECIDED)
}

fn cmd_classify(opts: &Opts, a_max: u64, b_max: u64, jobs: usize) -> CliResult {
    let rows = opts.decider().classify(a_max, b_max, jobs.max(1));
    let count = |o| rows.iter().filter(|v| v.outcome == o).count();
    let (r, n, u) = (
        count(Outcome::Realizable),
        count(Outcome::NotRealizable),
        count(Outcome::Unknown),
    );
    if opts.json {
        print_json(&json!({
            "rows": rows,
            "summary": { "realizable": r, "not_realizable": n, "unknown": u },
        }))?;
    } else {
        println!("{:>5} {:>5} {:>7}  {:<15} certificate", "a", "b", "c", "outcome");
        for v in &rows {
            let kind = v.certificate.as_ref().map(kind_name).unwrap_or_else(|| "-".into());
            println!(
                "{:>5} {:>5} {:>7}  {:<15} {}",
                v.triple.a,
                v.triple.b,
                v.triple.c,
                outcome_name(v.outcome),
                kind
            );
        }
        println!("realizable: {r}, not_realizable: {n}, unknown: {u}");
    }
    Ok(if u == 0 { EXIT_DECIDED } else { EXIT_UNKNOWN })
}

fn cmd_oracle(opts: &Opts, args: &TripleArgs) -> CliResult {
    let t = args.triple();
    let to_usize = |x: u64| usize::try_from(x).map_err(|_| CliError::Input(format!("{x} is too large")));
    let r = oracle_decide(to_usize(t.a)?, to_usize(t.b)?, to_usize(t.c)?, &opts.budget());
    let (name, graph, code) = match &r.outcome {
        OracleOutcome::Realizable(g) => ("realizable", Some(g.serialize()), EXIT_DECIDED),
        OracleOutcome::NotRealizable => ("not_realizable", None, EXIT_DECIDED),
        OracleOutcome::Exceeded => ("budget_exceeded", None, EXIT_BUDGET),
    };
    if opts.json {
        print_json(&json!({ "triple": t, "outcome": name, "stats": r.stats, "graph": graph }))?;
    } else {
        println!("{t}: {name}");
        println!(
            "graphs generated: {}, classes: {}, nodes: {}",
            r.stats.graphs_generated, r.stats.graphs_after_dedup, r.stats.nodes_explored
        );
        if let Some(g) = graph {
            print!("{g}");
        }
    }
    Ok(code)
}

fn cmd_graph(opts: &Opts, cmd: &GraphCommand) -> CliResult {
    match cmd {
        GraphCommand::Aut { file } => {
            let g = read_graph(file)?;
            let (group, _) = analyze(&g, &opts.search())?;
            let orbits = edge_orbits(&g, &opts.search())?;
            let order = group.order().map_or("overflow".to_string(), |o| o.to_string());
            if opts.json {
                print_json(&json!({
                    "a": g.a(), "b": g.b(), "edges": g.edge_count(),
                    "aut_order": order, "generators": group.generators.len(),
                    "edge_orbits": orbits.len(),
                }))?;
            } else {
                println!("aut order: {order}");
                println!("generators: {}", group.generators.len());
                println!("edge orbits: {}", orbits.len());
            }
        }
        GraphCommand::Canon { file } => {
            let g = read_graph(file)?;
            let (_, cert) = analyze(&g, &opts.search())?;
            let digest: String = Sha256::digest(&cert.0).iter().map(|b| format!("{b:02x}")).collect();
            if opts.json {
                print_json(&json!({ "digest": digest }))?;
            } else {
                println!("{digest}");
            }
        }
        GraphCommand::Complement { file, out } => {
            let text = read_graph(file)?.complement().serialize();
            match out {
                Some(path) => write_output(path, &text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(EXIT_DECIDED)
}

fn cmd_verify_paper(opts: &Opts, only: &[String]) -> CliResult {
    let names: Vec<&str> = if only.is_empty() {
        CHECK_NAMES.to_vec()
    } else {
        only.iter().map(String::as_str).collect()
    };
    let reports: Vec<_> = names.iter().filter_map(|n| run_check(n)).collect();
    if opts.json {
        print_json(&reports)?;
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(EXIT_DECIDED)
    } else {
        eprintln!("failed: {}", failed.join(", "));
        Ok(EXIT_INPUT)
    }
}

fn cmd_verify_cert(opts: &Opts, file: &Path) -> CliResult {
    let v: Verdict = serde_json::from_str(&read_input(file)?)?;
    verify(&v, &opts.search(), true)?;
    if opts.json {
        print_json(&json!({ "triple": v.triple, "outcome": v.outcome, "verified": true }))?;
    } else {
        println!("{}: {} verified", v.triple, outcome_name(v.outcome));
    }
    Ok(EXIT_DECIDED)
}

fn run(cli: &Cli) -> CliResult {
    let opts = &cli.opts;
    match &cli.command {
        Command::Decide(args) => cmd_decide(opts, args),
        Command::Witness { triple, out, dot } => cmd_witness(opts, triple, out.as_deref(), dot.as_deref()),
        Command::Classify { a_max, b_max, jobs } => cmd_classify(opts, *a_max, *b_max, *jobs),
        Command::Oracle(args) => cmd_oracle(opts, args),
        Command::Graph(cmd) => cmd_graph(opts, cmd),
        Command::VerifyPaper { only } => cmd_verify_paper(opts, only),
        Command::VerifyCert { file } => cmd_verify_cert(opts, file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_DECIDED });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
