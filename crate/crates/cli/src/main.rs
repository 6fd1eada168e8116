//! `scdt`: decompose graphs into semi-clique tree decompositions under a
//! promised chordal-deletion bound, solve Vertex Cover / Feedback Vertex
//! Set / Odd Cycle Transversal exactly on them, verify artifacts, generate
//! instances, and run the brute-force oracles.
//!
//! Exit codes: 0 success (including a `NO-CVD(k)` conclusion), 1 failed
//! verification, 2 usage/parse/validation errors, 3 oracle size limit.
//! Results go to stdout, diagnostics to stderr. Commands that compute
//! something end stdout with a one-line JSON run report.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use scdt_core::decomposition::{decompose, validate_td, DecomposeOutcome};
use scdt_core::graph::{Graph, VertexSet};
use scdt_core::instances::{
    gen_planted, hitting_set_vc_instance, triangulate_for_fvs_oct, HittingSetInstance,
};
use scdt_core::io::{
    read_decomposition, read_graph, write_decomposition, write_graph, InstanceMeta,
};
use scdt_core::oracles::{
    brute_cvd, brute_fvs, brute_oct, brute_vc, verify_cvd, verify_fvs, verify_oct, verify_vc,
    OracleBudget, OracleError,
};
use scdt_core::solvers::{
    solve_fvs, solve_oct, solve_vc, solve_vc_given_modulator, ModulatorVcError, Solution,
    SolveOutcome,
};

#[derive(Parser)]
#[command(name = "scdt", version, about = "Semi-clique tree decompositions and exact solvers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a decomposition under the promised deletion bound k,
    /// or conclude NO-CVD(k).
    Decompose {
        #[arg(long)]
        input: PathBuf,
        /// Promised bound on the chordal vertex deletion size.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        /// Re-run the validator on the produced decomposition.
        #[arg(long)]
        validate: bool,
    },
    /// Solve a deletion problem exactly, or conclude NO-CVD(k).
    Solve {
        #[arg(value_parser = ["vc", "fvs", "oct"])]
        problem: String,
        #[arg(long)]
        input: PathBuf,
        /// Promised bound on the chordal vertex deletion size.
        #[arg(long)]
        k: usize,
        /// Also answer whether the optimum is at most this size.
        #[arg(long)]
        target: Option<usize>,
        /// Metadata file naming a modulator; switches vc to the
        /// modulator-based solver. vc only.
        #[arg(long)]
        modulator: Option<PathBuf>,
    },
    /// Check a decomposition or a solution against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "solution")]
        decomposition: Option<PathBuf>,
        /// Solution kind (vc|fvs|oct|cvd) and file of 1-based vertex ids.
        #[arg(long, num_args = 2, value_names = ["KIND", "FILE"])]
        solution: Option<Vec<String>>,
    },
    /// Generate instances; metadata is written next to the graph.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Brute-force optimum for small graphs.
    Oracle {
        #[arg(value_parser = ["vc", "fvs", "oct", "cvd"])]
        problem: String,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random graph that is chordal after deleting k known vertices.
    Planted(PlantedArgs),
    /// Vertex cover gadget for a hitting set instance.
    HittingSet {
        /// JSON file {"universe": u, "sets": [[..], ..]} with 0-based elements.
        #[arg(long)]
        sets: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replace every edge by a triangle through a fresh vertex.
    Triangulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct PlantedArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

/// One machine-readable line per computing run.
#[derive(Serialize)]
struct RunReport {
    command: String,
    input_digest: String,
    k: usize,
    result: String,
    size: usize,
    wall_ms: u128,
    seed: u64,
}

enum CliError {
    /// Bad input: unreadable files, parse errors, invalid flag values.
    Input(String),
    /// A verification found violations.
    Violations,
    /// Oracle refused the instance size.
    TooLarge(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Violations => write!(f, "verification failed"),
            CliError::TooLarge(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Violations => 1,
            CliError::TooLarge(_) => 3,
        }
    }
}

fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            // Help and version output.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    if let Err(e) = check_thread_cap() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// SCDT_THREADS caps worker parallelism. The library is single-threaded,
/// so any positive cap is honored as-is; the value is still validated.
fn check_thread_cap() -> Result<(), CliError> {
    match std::env::var("SCDT_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(()),
            _ => Err(CliError::Input(format!(
                "SCDT_THREADS must be a positive integer, got {raw:?}"
            ))),
        },
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Decompose {
            input,
            k,
            out,
            validate,
        } => cmd_decompose(&input, k, &out, validate),
        Cmd::Solve {
            problem,
            input,
            k,
            target,
            modulator,
        } => cmd_solve(&problem, &input, k, target, modulator.as_deref()),
        Cmd::Verify {
            graph,
            decomposition,
            solution,
        } => cmd_verify(&graph, decomposition.as_deref(), solution.as_deref()),
        Cmd::Gen { what } => cmd_gen(what),
        Cmd::Oracle { problem, input } => cmd_oracle(&problem, &input),
    }
}

fn digest_file(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(format!("sha256:{:x}", Sha256::digest(&bytes)))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    read_graph(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn print_report(report: &RunReport) {
    println!(
        "{}",
        serde_json::to_string(report).expect("report serializes")
    );
}

fn cmd_decompose(input: &Path, k: usize, out: &Path, validate: bool) -> Result<(), CliError> {
    let digest = digest_file(input)?;
    let g = load_graph(input)?;
    let start = Instant::now();
    let outcome = decompose(&g, k);
    let wall_ms = start.elapsed().as_millis();
    match outcome {
        DecomposeOutcome::NoCvd => {
            println!("NO-CVD({k})");
            print_report(&RunReport {
                command: "decompose".into(),
                input_digest: digest,
                k,
                result: "no-cvd-conclusion".into(),
                size: 0,
                wall_ms,
                seed: 0,
            });
            Ok(())
        }
        DecomposeOutcome::Built(td) => {
            write_decomposition(out, &td)
                .map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            println!(
                "decomposition with {} bags within budget ({}, {})",
                td.len(),
                td.clique_budget,
                td.remainder_budget
            );
            if validate {
                let report = validate_td(&g, &td);
                if !report.is_clean() {
                    println!("{report}");
                    return Err(CliError::Violations);
                }
                println!("valid");
            }
            print_report(&RunReport {
                command: "decompose".into(),
                input_digest: digest,
                k,
                result: "solution".into(),
                size: td.len(),
                wall_ms,
                seed: 0,
            });
            Ok(())
        }
    }
}

fn print_solution(sol: &Solution) {
    println!("{}", sol.size);
    let ids: Vec<String> = sol.vertices.iter().map(|v| (v + 1).to_string()).collect();
    println!("{}", ids.join(" "));
    if let Some(meets) = sol.meets_target {
        println!("{}", if meets { "YES" } else { "NO" });
    }
}

fn cmd_solve(
    problem: &str,
    input: &Path,
    k: usize,
    target: Option<usize>,
    modulator: Option<&Path>,
) -> Result<(), CliError> {
    let digest = digest_file(input)?;
    let g = load_graph(input)?;
    if modulator.is_some() && problem != "vc" {
        return Err(CliError::Input(
            "--modulator is only supported for vc".into(),
        ));
    }
    let start = Instant::now();
    let outcome = match modulator {
        Some(meta_path) => {
            let text = std::fs::read_to_string(meta_path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", meta_path.display())))?;
            let meta = InstanceMeta::from_json(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", meta_path.display())))?;
            let mut sol = solve_vc_given_modulator(&g, &meta.modulator_set()).map_err(|e| {
                match e {
                    ModulatorVcError::NonChordalInput => CliError::Input(
                        "graph minus the modulator is not chordal".into(),
                    ),
                    ModulatorVcError::InputError(msg) => CliError::Input(msg),
                }
            })?;
            sol.meets_target = target.map(|t| sol.size <= t);
            SolveOutcome::Solved(sol)
        }
        None => match problem {
            "vc" => solve_vc(&g, k, target),
            "fvs" => solve_fvs(&g, k, target),
            "oct" => solve_oct(&g, k, target),
            _ => unreachable!("clap restricts the problem values"),
        },
    };
    let wall_ms = start.elapsed().as_millis();
    match outcome {
        SolveOutcome::NoCvd => {
            println!("NO-CVD({k})");
            print_report(&RunReport {
                command: format!("solve-{problem}"),
                input_digest: digest,
                k,
                result: "no-cvd-conclusion".into(),
                size: 0,
                wall_ms,
                seed: 0,
            });
        }
        SolveOutcome::Solved(sol) => {
            print_solution(&sol);
            print_report(&RunReport {
                command: format!("solve-{problem}"),
                input_digest: digest,
                k,
                result: "solution".into(),
                size: sol.size,
                wall_ms,
                seed: 0,
            });
        }
    }
    Ok(())
}

/// Parses a solution file: whitespace-separated 1-based vertex ids,
/// `c`-comment lines allowed.
fn parse_solution(path: &Path, n: usize) -> Result<VertexSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut out = VertexSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for field in line.split_whitespace() {
            let v: usize = field.parse().map_err(|_| {
                CliError::Input(format!(
                    "{}: line {}: bad vertex {field:?}",
                    path.display(),
                    idx + 1
                ))
            })?;
            if v == 0 || v > n {
                return Err(CliError::Input(format!(
                    "{}: line {}: vertex {v} out of range 1..={n}",
                    path.display(),
                    idx + 1
                )));
            }
            out.insert(v - 1);
        }
    }
    Ok(out)
}

fn cmd_verify(
    graph: &Path,
    decomposition: Option<&Path>,
    solution: Option<&[String]>,
) -> Result<(), CliError> {
    let g = load_graph(graph)?;
    match (decomposition, solution) {
        (Some(td_path), None) => {
            // Structural and budget errors surface as input errors; axiom
            // violations against the graph exit 1 below.
            let td = match read_decomposition(td_path, None) {
                Ok(td) => td,
                Err(e) => return Err(CliError::Input(format!("{}: {e}", td_path.display()))),
            };
            let report = validate_td(&g, &td);
            if report.is_clean() {
                println!("valid");
                Ok(())
            } else {
                println!("{report}");
                Err(CliError::Violations)
            }
        }
        (None, Some(pair)) => {
            let (kind, file) = (pair[0].as_str(), Path::new(&pair[1]));
            let xs = parse_solution(file, g.n())?;
            let ok = match kind {
                "vc" => {
                    if let Some((u, v)) = g
                        .edges()
                        .into_iter()
                        .find(|&(u, v)| !xs.contains(u) && !xs.contains(v))
                    {
                        println!("uncovered edge {} {}", u + 1, v + 1);
                        false
                    } else {
                        true
                    }
                }
                "fvs" => {
                    let ok = verify_fvs(&g, &xs);
                    if !ok {
                        println!("residual graph contains a cycle");
                    }
                    ok
                }
                "oct" => {
                    let ok = verify_oct(&g, &xs);
                    if !ok {
                        println!("residual graph contains an odd cycle");
                    }
                    ok
                }
                "cvd" => {
                    let ok = verify_cvd(&g, &xs);
                    if !ok {
                        println!("residual graph is not chordal");
                    }
                    ok
                }
                other => {
                    return Err(CliError::Input(format!(
                        "unknown solution kind {other:?}; use vc|fvs|oct|cvd"
                    )))
                }
            };
            if ok {
                println!("valid");
                Ok(())
            } else {
                Err(CliError::Violations)
            }
        }
        _ => Err(CliError::Input(
            "pass exactly one of --decomposition or --solution".into(),
        )),
    }
}

fn write_instance(
    out: &Path,
    g: &Graph,
    meta: &InstanceMeta,
) -> Result<(), CliError> {
    write_graph(out, g).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    let meta_path = meta_path_for(out);
    std::fs::write(&meta_path, meta.to_json())
        .map_err(|e| CliError::Input(format!("{}: {e}", meta_path.display())))?;
    println!("wrote {} and {}", out.display(), meta_path.display());
    Ok(())
}

fn meta_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    out.with_file_name(name)
}

#[derive(Deserialize)]
struct SetsFile {
    universe: usize,
    sets: Vec<Vec<usize>>,
}

fn cmd_gen(what: GenCmd) -> Result<(), CliError> {
    match what {
        GenCmd::Planted(args) => {
            let inst = gen_planted(args.n, args.k, args.density, args.seed).map_err(input_err)?;
            let meta = InstanceMeta {
                n: inst.graph.n(),
                k: inst.k,
                seed: Some(inst.seed),
                modulator: inst.modulator.to_vec(),
                vc_offset: None,
            };
            write_instance(&args.out, &inst.graph, &meta)
        }
        GenCmd::HittingSet { sets, out } => {
            let text = std::fs::read_to_string(&sets)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", sets.display())))?;
            let parsed: SetsFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", sets.display())))?;
            let hs = HittingSetInstance::new(parsed.universe, parsed.sets).map_err(input_err)?;
            let (g, modulator, offset) = hitting_set_vc_instance(&hs);
            let meta = InstanceMeta {
                n: g.n(),
                k: modulator.len(),
                seed: None,
                modulator: modulator.to_vec(),
                vc_offset: Some(offset),
            };
            write_instance(&out, &g, &meta)
        }
        GenCmd::Triangulate { input, out } => {
            let g = load_graph(&input)?;
            let t = triangulate_for_fvs_oct(&g);
            let meta = InstanceMeta {
                n: t.n(),
                k: 0,
                seed: None,
                modulator: Vec::new(),
                vc_offset: None,
            };
            write_instance(&out, &t, &meta)
        }
    }
}

fn cmd_oracle(problem: &str, input: &Path) -> Result<(), CliError> {
    let digest = digest_file(input)?;
    let g = load_graph(input)?;
    let start = Instant::now();
    let result = match problem {
        "vc" => brute_vc(&g, OracleBudget::vc_default()),
        "fvs" => brute_fvs(&g, OracleBudget::deletion_default()),
        "oct" => brute_oct(&g, OracleBudget::deletion_default()),
        "cvd" => brute_cvd(&g, OracleBudget::deletion_default()),
        _ => unreachable!("clap restricts the problem values"),
    };
    let wall_ms = start.elapsed().as_millis();
    let xs = result.map_err(|e| match e {
        OracleError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
        OracleError::InputError(msg) => CliError::Input(msg),
    })?;
    debug_assert!(match problem {
        "vc" => verify_vc(&g, &xs),
        "fvs" => verify_fvs(&g, &xs),
        "oct" => verify_oct(&g, &xs),
        _ => verify_cvd(&g, &xs),
    });
    println!("{}", xs.len());
    let ids: Vec<String> = xs.iter().map(|v| (v + 1).to_string()).collect();
    println!("{}", ids.join(" "));
    print_report(&RunReport {
        command: format!("oracle-{problem}"),
        input_digest: digest,
        k: 0,
        result: "solution".into(),
        size: xs.len(),
        wall_ms,
        seed: 0,
    });
    Ok(())
}
