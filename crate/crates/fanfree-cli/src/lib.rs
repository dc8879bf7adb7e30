//! Batch front end: graph6 on stdin/stdout, one graph per line, JSON
//! manifests with `--json`, human tables otherwise.
//!
//! Exit codes: 0 success, 1 bound violation found, 2 input error,
//! 3 capacity exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fanfree::{
    build_extremal, canonical_form, closed_form_bound, decompose, eb_bound_check,
    eigen_identities, extremal_scan, graph6_decode, graph6_encode, is_local_max, local_search,
    spectral_radius, Forbidden, Graph, SearchConfig,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: u8,
}

#[derive(Parser, Debug)]
#[command(name = "fanfree", version, about = "Spectral extremal graph toolkit")]
struct Cli {
    /// Emit a JSON run manifest instead of human-readable tables
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans and searches (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral radius of each input graph (graph6 lines on stdin or FILE)
    Rho(InputArgs),
    /// Forbidden-subgraph verdict for each input graph
    Free {
        /// Forbidden family: fan:T, c6d or f3
        #[arg(long)]
        forbid: String,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Exhaustive extremal scan over all graphs of size m
    Scan {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        forbid: Option<String>,
        /// Override the feasibility cap on m
        #[arg(long)]
        force: bool,
    },
    /// Stochastic search for the maximum spectral radius at size m
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        forbid: Option<String>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        /// Write per-restart improvement traces as CSV (restart,step,rho)
        #[arg(long)]
        trace_csv: Option<String>,
    },
    /// Grid check of the conjectured bound (k−1+√(4m−k²+1))/2
    Conjecture {
        #[arg(long)]
        k: usize,
        #[arg(long = "m-from")]
        m_from: usize,
        #[arg(long = "m-to")]
        m_to: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        force: bool,
    },
    /// Perron decomposition, eigen-identities and η report per input graph
    Proofcheck(InputArgs),
    /// Exhaustive single-move local-maximality certificate per input graph
    Localmax {
        #[arg(long)]
        forbid: Option<String>,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file with one graph6 string per line (default: stdin)
    file: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Exhaustive,
    Search,
}

/// True when this invocation reads graph6 lines from stdin.
pub fn wants_stdin(args: &[String]) -> bool {
    match Cli::try_parse_from(std::iter::once("fanfree".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => match &cli.command {
            Command::Rho(input) | Command::Proofcheck(input) => input.file.is_none(),
            Command::Free { input, .. } | Command::Localmax { input, .. } => input.file.is_none(),
            _ => false,
        },
        Err(_) => false,
    }
}

struct Failure {
    message: String,
    exit_code: u8,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            exit_code: 2,
        }
    }
}

impl From<fanfree::Error> for Failure {
    fn from(e: fanfree::Error) -> Self {
        let exit_code = match e {
            fanfree::Error::Capacity { .. } => 3,
            _ => 2,
        };
        Failure {
            message: e.to_string(),
            exit_code,
        }
    }
}

pub fn run(args: &[String], stdin: &str) -> Outcome {
    let cli = match Cli::try_parse_from(
        std::iter::once("fanfree".to_string()).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout with exit code 0
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: e.to_string(),
                    exit_code: 2,
                }
            } else {
                Outcome {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    exit_code: 0,
                }
            };
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                exit_code: 2,
            }
        }
    };
    let started = Instant::now();
    let result = pool.install(|| dispatch(&cli.command, stdin));
    let wall_time_s = started.elapsed().as_secs_f64();
    match result {
        Ok(run_result) => {
            let exit_code = if run_result.violation { 1 } else { 0 };
            let stdout = if cli.json {
                let manifest = json!({
                    "schema": SCHEMA_VERSION,
                    "tool": "fanfree",
                    "version": env!("CARGO_PKG_VERSION"),
                    "subcommand": run_result.subcommand,
                    "parameters": run_result.parameters,
                    "seed": run_result.seed,
                    "wall_time_s": wall_time_s,
                    "result": run_result.payload,
                });
                format!("{}\n", serde_json::to_string_pretty(&manifest).expect("serializable"))
            } else {
                run_result.human
            };
            Outcome {
                stdout,
                stderr: String::new(),
                exit_code,
            }
        }
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
            exit_code: f.exit_code,
        },
    }
}

struct RunResult {
    subcommand: &'static str,
    parameters: Value,
    seed: Option<u64>,
    payload: Value,
    human: String,
    violation: bool,
}

fn dispatch(cmd: &Command, stdin: &str) -> Result<RunResult, Failure> {
    match cmd {
        Command::Rho(input) => cmd_rho(input, stdin),
        Command::Free { forbid, input } => cmd_free(forbid, input, stdin),
        Command::Scan { m, forbid, force } => cmd_scan(*m, forbid.as_deref(), *force),
        Command::Search {
            m,
            forbid,
            restarts,
            seed,
            steps,
            trace_csv,
        } => cmd_search(*m, forbid.as_deref(), *restarts, *seed, *steps, trace_csv.as_deref()),
        Command::Conjecture {
            k,
            m_from,
            m_to,
            mode,
            restarts,
            seed,
            force,
        } => cmd_conjecture(*k, *m_from, *m_to, *mode, *restarts, *seed, *force),
        Command::Proofcheck(input) => cmd_proofcheck(input, stdin),
        Command::Localmax { forbid, input } => cmd_localmax(forbid.as_deref(), input, stdin),
    }
}

fn read_graphs(input: &InputArgs, stdin: &str) -> Result<Vec<(String, Graph)>, Failure> {
    let text = match &input.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?,
        None => stdin.to_string(),
    };
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = graph6_decode(line).map_err(|e| Failure {
            message: format!("line {}: {}", lineno + 1, e),
            exit_code: 2,
        })?;
        out.push((line.to_string(), g));
    }
    if out.is_empty() {
        return Err(Failure::input("no graph6 input lines"));
    }
    Ok(out)
}

fn parse_forbidden(spec: Option<&str>) -> Result<Option<Forbidden>, Failure> {
    spec.map(Forbidden::parse).transpose().map_err(Failure::from)
}

fn cmd_rho(input: &InputArgs, stdin: &str) -> Result<RunResult, Failure> {
    let graphs = read_graphs(input, stdin)?;
    let mut records = Vec::new();
    let mut human = String::new();
    for (line, g) in &graphs {
        let p = spectral_radius(g);
        human.push_str(&format!(
            "{line}\tn={} m={}\trho={:.10}\tresidual={:.2e}\n",
            g.n(),
            g.m(),
            p.rho,
            p.residual
        ));
        records.push(json!({
            "graph6": line,
            "n": g.n(),
            "m": g.m(),
            "rho": p.rho,
            "residual": p.residual,
            "iterations": p.iterations,
        }));
    }
    Ok(RunResult {
        subcommand: "rho",
        parameters: json!({ "graphs": graphs.len() }),
        seed: None,
        payload: Value::Array(records),
        human,
        violation: false,
    })
}

fn cmd_free(forbid: &str, input: &InputArgs, stdin: &str) -> Result<RunResult, Failure> {
    let forbidden = Forbidden::parse(forbid)?;
    let graphs = read_graphs(input, stdin)?;
    let mut records = Vec::new();
    let mut human = String::new();
    for (line, g) in &graphs {
        match forbidden.witness(g) {
            None => {
                human.push_str(&format!("{line}\tfree\n"));
                records.push(json!({ "graph6": line, "verdict": "free" }));
            }
            Some(w) => {
                human.push_str(&format!("{line}\tcontains {:?}\n", w.mapping));
                records.push(json!({
                    "graph6": line,
                    "verdict": "contains",
                    "witness": w.mapping,
                }));
            }
        }
    }
    Ok(RunResult {
        subcommand: "free",
        parameters: json!({ "forbid": forbidden.name(), "graphs": graphs.len() }),
        seed: None,
        payload: Value::Array(records),
        human,
        violation: false,
    })
}

fn cmd_scan(m: usize, forbid: Option<&str>, force: bool) -> Result<RunResult, Failure> {
    let forbidden = parse_forbidden(forbid)?;
    let report = extremal_scan(m, forbidden, force)?;
    let mut human = format!(
        "m={} predicate={} classes={} best_rho={:.10}\n",
        report.m, report.predicate, report.graph_count, report.best_rho
    );
    for g6 in &report.argmax {
        human.push_str(&format!("argmax {g6}\n"));
    }
    Ok(RunResult {
        subcommand: "scan",
        parameters: json!({ "m": m, "forbid": forbidden.map(|f| f.name()), "force": force }),
        seed: None,
        payload: serde_json::to_value(&report).expect("serializable"),
        human,
        violation: false,
    })
}

fn cmd_search(
    m: usize,
    forbid: Option<&str>,
    restarts: usize,
    seed: u64,
    steps: usize,
    trace_csv: Option<&str>,
) -> Result<RunResult, Failure> {
    let forbidden = parse_forbidden(forbid)?;
    let mut cfg = SearchConfig::new(m, forbidden, restarts, seed);
    cfg.max_steps = steps;
    let report = local_search(&cfg)?;
    if let Some(path) = trace_csv {
        let mut csv = String::from("restart,step,rho\n");
        for (i, trace) in report.traces.iter().enumerate() {
            for t in trace {
                csv.push_str(&format!("{},{},{:.12}\n", i, t.step, t.rho));
            }
        }
        std::fs::write(path, csv)
            .map_err(|e| Failure::input(format!("cannot write {path}: {e}")))?;
    }
    let violation = report
        .bound_comparison
        .as_ref()
        .map_or(false, |b| b.exceeded);
    let mut human = format!(
        "m={} predicate={} restarts={} seed={}\nbest_rho={:.10} best={}\n",
        report.m, report.predicate, report.restarts, report.seed, report.best_rho, report.best_graph6
    );
    if let Some(b) = &report.bound_comparison {
        human.push_str(&format!(
            "bound(k={})={:.10} exceeded={}\n",
            b.k, b.bound, b.exceeded
        ));
    }
    if let Some(iso) = report.iso_to_extremal {
        human.push_str(&format!("iso_to_extremal={iso}\n"));
    }
    if violation {
        human.push_str("VIOLATION: best rho exceeds the conjectured bound\n");
    }
    Ok(RunResult {
        subcommand: "search",
        parameters: json!({
            "m": m,
            "forbid": forbidden.map(|f| f.name()),
            "restarts": restarts,
            "steps": steps,
        }),
        seed: Some(seed),
        payload: serde_json::to_value(&report).expect("serializable"),
        human,
        violation,
    })
}

#[derive(Serialize)]
struct ConjectureCell {
    k: usize,
    m: usize,
    fan_order: usize,
    bound: f64,
    best_rho: f64,
    attained: bool,
    extremal_iso: Option<bool>,
    method: String,
    violation: bool,
}

fn cmd_conjecture(
    k: usize,
    m_from: usize,
    m_to: usize,
    mode: Mode,
    restarts: usize,
    seed: u64,
    force: bool,
) -> Result<RunResult, Failure> {
    if k < 1 {
        return Err(Failure::input("k must be >= 1"));
    }
    if m_from > m_to {
        return Err(Failure::input("m-from must be <= m-to"));
    }
    let mut cells = Vec::new();
    let mut human = String::new();
    let mut any_violation = false;
    let mut cell_index = 0u64;
    for m in m_from..=m_to {
        for fan_order in [2 * k + 1, 2 * k + 2] {
            let bound = closed_form_bound(k, m)?;
            let forbidden = Forbidden::Fan(fan_order);
            let (best_rho, extremal_iso, method) = match mode {
                Mode::Exhaustive => {
                    let report = extremal_scan(m, Some(forbidden), force)?;
                    let iso = build_extremal(k, m).ok().map(|ext| {
                        report
                            .argmax
                            .contains(&graph6_encode(&canonical_form(&ext).0))
                    });
                    (report.best_rho, iso, "exhaustive".to_string())
                }
                Mode::Search => {
                    let mut cfg = SearchConfig::new(
                        m,
                        Some(forbidden),
                        restarts,
                        seed.wrapping_add(cell_index.wrapping_mul(1 << 32)),
                    );
                    cfg.max_steps = 2000;
                    let report = local_search(&cfg)?;
                    (report.best_rho, report.iso_to_extremal, "search".to_string())
                }
            };
            let attained = best_rho >= bound - 1e-8;
            let violation = best_rho > bound + 1e-8;
            any_violation |= violation;
            human.push_str(&format!(
                "k={k} m={m} H{fan_order}-free [{method}] bound={bound:.10} best={best_rho:.10} attained={attained} extremal_iso={extremal_iso:?}{}\n",
                if violation { " VIOLATION" } else { "" }
            ));
            cells.push(ConjectureCell {
                k,
                m,
                fan_order,
                bound,
                best_rho,
                attained,
                extremal_iso,
                method,
                violation,
            });
            cell_index += 1;
        }
    }
    Ok(RunResult {
        subcommand: "conjecture",
        parameters: json!({
            "k": k, "m_from": m_from, "m_to": m_to,
            "mode": match mode { Mode::Exhaustive => "exhaustive", Mode::Search => "search" },
            "restarts": restarts, "force": force,
        }),
        seed: Some(seed),
        payload: serde_json::to_value(&cells).expect("serializable"),
        human,
        violation: any_violation,
    })
}

fn cmd_proofcheck(input: &InputArgs, stdin: &str) -> Result<RunResult, Failure> {
    let graphs = read_graphs(input, stdin)?;
    let mut records = Vec::new();
    let mut human = String::new();
    for (line, g) in &graphs {
        if !g.is_connected() || g.n() == 0 {
            human.push_str(&format!("{line}\tskipped (not connected)\n"));
            records.push(json!({ "graph6": line, "connected": false }));
            continue;
        }
        let p = spectral_radius(g);
        let d = decompose(g, &p).map_err(Failure::from)?;
        let identities = eigen_identities(g, &p, &d);
        let eb = eb_bound_check(g, &p, &d);
        let etas = fanfree::claim_ceilings(g, &p, &d);
        human.push_str(&format!(
            "{line}\trho={:.8} u*={} |A|={} |A0|={} |A+|={} |B|={} e(A+)={} e(A,B)={} e(B)={} identities_ok={} eb_applicable={} eta_ok={}\n",
            p.rho,
            d.ustar,
            d.a.len(),
            d.a0.len(),
            d.aplus.len(),
            d.b.len(),
            d.e_aplus,
            d.e_ab,
            d.e_b,
            identities.within_tolerance,
            eb.applicable,
            etas.all_satisfied,
        ));
        records.push(json!({
            "graph6": line,
            "connected": true,
            "rho": p.rho,
            "decomposition": {
                "ustar": d.ustar,
                "a": d.a.to_vec(),
                "a0": d.a0.to_vec(),
                "aplus": d.aplus.to_vec(),
                "b": d.b.to_vec(),
                "e_aplus": d.e_aplus,
                "e_ab": d.e_ab,
                "e_b": d.e_b,
                "size_identity": g.m() == d.a.len() + d.e_aplus + d.e_ab + d.e_b,
            },
            "eigen_identities": serde_json::to_value(&identities).expect("serializable"),
            "eb_bound": serde_json::to_value(&eb).expect("serializable"),
            "eta_report": serde_json::to_value(&etas).expect("serializable"),
        }));
    }
    Ok(RunResult {
        subcommand: "proofcheck",
        parameters: json!({ "graphs": graphs.len() }),
        seed: None,
        payload: Value::Array(records),
        human,
        violation: false,
    })
}

fn cmd_localmax(
    forbid: Option<&str>,
    input: &InputArgs,
    stdin: &str,
) -> Result<RunResult, Failure> {
    let forbidden = parse_forbidden(forbid)?;
    let graphs = read_graphs(input, stdin)?;
    let mut records = Vec::new();
    let mut human = String::new();
    for (line, g) in &graphs {
        let cert = is_local_max(g, forbidden)?;
        human.push_str(&format!(
            "{line}\trho={:.10}\tlocal_max={}\n",
            cert.rho, cert.is_local_max
        ));
        let mut record = serde_json::to_value(&cert).expect("serializable");
        record["graph6"] = json!(line);
        records.push(record);
    }
    Ok(RunResult {
        subcommand: "localmax",
        parameters: json!({ "forbid": forbidden.map(|f| f.name()), "graphs": graphs.len() }),
        seed: None,
        payload: Value::Array(records),
        human,
        violation: false,
    })
}
