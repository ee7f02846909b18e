use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hamspec::certify::{
    evaluate_condition, theorem1_k_values, theorem2_k_values, Outcome, Part, TheoremId, Verdict,
};
use hamspec::graph::Graph;
use hamspec::graph6::{encode_graph6, parse_graph6_file};
use hamspec::oracles::{invariant_bundle, is_hamiltonian, vertex_connectivity};
use hamspec::spectral::{
    build_matrix, eigenvalues, mean_square_term, parse_rational, rational_to_f64, SpectralParams,
};
use hamspec::sweep::{
    default_param_grid, sweep, Check, Source, SweepSpec, Tolerances, Verbosity, ALL_CHECKS,
};

#[derive(Parser)]
#[command(
    name = "hamspec",
    version,
    about = "Spectral certificates of spanning cycles and paths, verified against exact oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the eigenvalue conditions on one graph and report verdicts.
    Certify {
        /// graph6 string, or - to read one from stdin.
        #[arg(long)]
        graph: String,
        /// Degree-matrix weight: integer, fraction p/q or decimal.
        #[arg(long)]
        alpha: String,
        /// Adjacency-matrix weight.
        #[arg(long)]
        beta: String,
        /// Evaluate a single k instead of every admissible one.
        #[arg(long)]
        k: Option<usize>,
        /// Restrict the scan: 1 (spanning cycle), 2 (spanning path) or all.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// Print the spectrum of a*D + b*A and the mean-square bracketing.
    Spectrum {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Print order, size, degree extremes, independence number,
    /// connectivity and the spanning cycle/path facts.
    Invariants {
        #[arg(long)]
        graph: String,
    },
    /// Run checks over a corpus and emit a JSONL report.
    Sweep {
        /// labeled:N, dedup:N, file:PATH or random:N,P,COUNT,SEED.
        #[arg(long)]
        source: String,
        /// Comma-separated alpha values, zipped with --betas; both omitted
        /// uses the grid (1,1) (2,1) (3,2) (5,1).
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        betas: Vec<String>,
        /// Subset of theorem1,theorem2,corollary,rayleigh,psd,lemmas,rowsum
        /// (default: all of them).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Write the JSONL report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; the HAMSPEC_JOBS variable supplies the default.
        #[arg(long)]
        jobs: Option<usize>,
        /// counterexamples (default) or full (adds per-evaluation events).
        #[arg(long, default_value = "counterexamples")]
        verbosity: String,
        /// Skip disconnected graphs; the random source resamples to keep
        /// the requested count.
        #[arg(long)]
        connected_only: bool,
        #[arg(long)]
        tol_condition: Option<f64>,
        #[arg(long)]
        tol_rayleigh: Option<f64>,
        #[arg(long)]
        tol_psd: Option<f64>,
        #[arg(long)]
        tol_corollary: Option<f64>,
        #[arg(long)]
        tol_quadratic: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Certify { graph, alpha, beta, k, theorem } => {
            cmd_certify(&graph, &alpha, &beta, k, &theorem)
        }
        Command::Spectrum { graph, alpha, beta } => cmd_spectrum(&graph, &alpha, &beta),
        Command::Invariants { graph } => cmd_invariants(&graph),
        Command::Sweep {
            source,
            alphas,
            betas,
            checks,
            out,
            jobs,
            verbosity,
            connected_only,
            tol_condition,
            tol_rayleigh,
            tol_psd,
            tol_corollary,
            tol_quadratic,
        } => {
            let mut tolerances = Tolerances::default();
            if let Some(t) = tol_condition {
                tolerances.condition = t;
            }
            if let Some(t) = tol_rayleigh {
                tolerances.rayleigh = t;
            }
            if let Some(t) = tol_psd {
                tolerances.psd = t;
            }
            if let Some(t) = tol_corollary {
                tolerances.corollary = t;
            }
            if let Some(t) = tol_quadratic {
                tolerances.quadratic = t;
            }
            cmd_sweep(&source, &alphas, &betas, &checks, out, jobs, &verbosity, connected_only, tolerances)
        }
    }
}

fn read_graph(arg: &str) -> Result<Graph, String> {
    let owned;
    let text: &str = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| format!("reading stdin: {e}"))?;
        owned = buf;
        &owned
    } else {
        arg
    };
    let graphs = parse_graph6_file(text).map_err(|e| e.to_string())?;
    match graphs.len() {
        0 => Err("no graph found in input".to_string()),
        1 => Ok(graphs.into_iter().next().expect("length checked")),
        more => Err(format!("expected exactly one graph, found {more}")),
    }
}

fn parse_params(alpha: &str, beta: &str) -> Result<SpectralParams, String> {
    let a = parse_rational(alpha).map_err(|e| format!("--alpha: {e}"))?;
    let b = parse_rational(beta).map_err(|e| format!("--beta: {e}"))?;
    SpectralParams::new(a, b).map_err(|e| e.to_string())
}

fn graph_header(g: &Graph) -> String {
    let label = encode_graph6(g).unwrap_or_else(|_| format!("(unencodable n={})", g.n()));
    format!("graph: {label} (n={}, e={})", g.n(), g.edge_count())
}

fn verdict_line(v: &Verdict) -> String {
    match &v.reason {
        Some(why) => {
            format!("{} k={} part={}: precondition-failed ({why})", v.theorem, v.k, v.part)
        }
        None => {
            let lam = match v.part {
                Part::One => "lambda1",
                Part::Two => "lambda_n",
            };
            let mut s = format!(
                "{} k={} part={}: {lam}={:.9} bound={:.9} margin={:+.9} -> {}",
                v.theorem, v.k, v.part, v.lambda, v.bound, v.margin, v.outcome
            );
            if let Some(h) = v.hamiltonian_also_held {
                s.push_str(&format!(" (hamiltonian={h})"));
            }
            s
        }
    }
}

fn cmd_certify(
    graph: &str,
    alpha: &str,
    beta: &str,
    k: Option<usize>,
    theorem: &str,
) -> Result<u8, String> {
    let g = read_graph(graph)?;
    let p = parse_params(alpha, beta)?;
    let theorems: &[TheoremId] = match theorem {
        "1" => &[TheoremId::T1],
        "2" => &[TheoremId::T2],
        "all" => &[TheoremId::T1, TheoremId::T2],
        other => return Err(format!("--theorem must be 1, 2 or all, got {other:?}")),
    };
    let spectrum = eigenvalues(&build_matrix(&g, &p)).map_err(|e| e.to_string())?;
    let kappa = vertex_connectivity(&g);
    let mut verdicts = Vec::new();
    for &t in theorems {
        let ks = match k {
            Some(k) => vec![k],
            None => match t {
                TheoremId::T1 => theorem1_k_values(kappa, g.n()),
                TheoremId::T2 => theorem2_k_values(kappa, g.n()),
            },
        };
        for k in ks {
            for part in [Part::One, Part::Two] {
                verdicts.push(evaluate_condition(t, part, &g, &p, k, kappa, &spectrum));
            }
        }
    }
    if verdicts.iter().any(|v| v.theorem == TheoremId::T2 && v.holds) {
        let ham = is_hamiltonian(&g).ok();
        for v in &mut verdicts {
            if v.theorem == TheoremId::T2 && v.holds {
                v.hamiltonian_also_held = ham;
            }
        }
    }
    println!("{}", graph_header(&g));
    println!("params: alpha={} beta={}", p.alpha(), p.beta());
    for v in &verdicts {
        println!("{}", verdict_line(v));
    }
    let best = verdicts
        .iter()
        .min_by_key(|v| (v.outcome, v.k, v.theorem, v.part))
        .expect("at least one verdict per theorem");
    match best.outcome {
        Outcome::PreconditionFailed | Outcome::Inconclusive => {
            println!("verdict: {}", best.outcome)
        }
        _ => println!(
            "verdict: {} ({} k={} part={})",
            best.outcome, best.theorem, best.k, best.part
        ),
    }
    Ok(0)
}

fn cmd_spectrum(graph: &str, alpha: &str, beta: &str) -> Result<u8, String> {
    let g = read_graph(graph)?;
    let p = parse_params(alpha, beta)?;
    let spectrum = eigenvalues(&build_matrix(&g, &p)).map_err(|e| e.to_string())?;
    println!("{}", graph_header(&g));
    println!("params: alpha={} beta={}", p.alpha(), p.beta());
    let evs: Vec<String> = spectrum.eigenvalues.iter().map(|x| format!("{x:.9}")).collect();
    println!("eigenvalues: {}", evs.join(" "));
    println!("residual: {:.3e}", spectrum.residual);
    let mean = rational_to_f64(&mean_square_term(&g, &p));
    println!(
        "rayleigh: lambda1^2={:.9} >= mean_square={:.9} >= lambda_n^2={:.9}",
        spectrum.lambda1 * spectrum.lambda1,
        mean,
        spectrum.lambda_n * spectrum.lambda_n
    );
    Ok(0)
}

fn cmd_invariants(graph: &str) -> Result<u8, String> {
    let g = read_graph(graph)?;
    let b = invariant_bundle(&g).map_err(|e| e.to_string())?;
    println!("{}", graph_header(&g));
    println!(
        "n={} e={} delta={} Delta={} gamma={} kappa={}",
        b.n, b.e, b.delta, b.big_delta, b.gamma, b.kappa
    );
    let witness: Vec<String> =
        (0..b.n).filter(|&v| b.gamma_witness >> v & 1 == 1).map(|v| v.to_string()).collect();
    println!("gamma_witness: {{{}}}", witness.join(","));
    println!("hamiltonian={} traceable={}", b.hamiltonian, b.traceable);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    source: &str,
    alphas: &[String],
    betas: &[String],
    checks: &[String],
    out: Option<PathBuf>,
    jobs: Option<usize>,
    verbosity: &str,
    connected_only: bool,
    tolerances: Tolerances,
) -> Result<u8, String> {
    let source: Source = source.parse().map_err(|e: hamspec::sweep::ParseSpecError| e.to_string())?;
    let params = if alphas.is_empty() && betas.is_empty() {
        default_param_grid()
    } else {
        if alphas.is_empty() || alphas.len() != betas.len() {
            return Err(format!(
                "--alphas and --betas must be nonempty lists of equal length, got {} and {}",
                alphas.len(),
                betas.len()
            ));
        }
        alphas
            .iter()
            .zip(betas)
            .map(|(a, b)| parse_params(a, b))
            .collect::<Result<Vec<_>, _>>()?
    };
    let checks: Vec<Check> = if checks.is_empty() {
        ALL_CHECKS.to_vec()
    } else {
        checks
            .iter()
            .map(|c| c.parse().map_err(|e: hamspec::sweep::ParseSpecError| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?
    };
    let verbosity: Verbosity =
        verbosity.parse().map_err(|e: hamspec::sweep::ParseSpecError| e.to_string())?;
    let jobs = jobs.or_else(|| match std::env::var("HAMSPEC_JOBS") {
        Ok(v) => match v.parse() {
            Ok(j) => Some(j),
            Err(_) => {
                eprintln!("warning: ignoring unparsable HAMSPEC_JOBS={v:?}");
                None
            }
        },
        Err(_) => None,
    });
    let spec = SweepSpec {
        source,
        params,
        checks,
        tolerances,
        jobs,
        verbosity,
        connected_only,
    };
    let report = sweep(&spec).map_err(|e| e.to_string())?;
    let jsonl = report.to_jsonl();
    match &out {
        Some(path) => std::fs::write(path, &jsonl)
            .map_err(|e| format!("writing {}: {e}", path.display()))?,
        None => print!("{jsonl}"),
    }
    eprintln!(
        "swept {} graphs: {} counterexamples, {} budget skips, {:.2}s",
        report.summary.graphs_total,
        report.summary.counterexample_count,
        report.summary.budget_skips,
        report.wall.as_secs_f64()
    );
    Ok(if report.exit_code() == 0 { 0 } else { 1 })
}
