//! End-to-end tests against the compiled binary: output shapes, exit codes,
//! determinism across thread counts, and replay of emitted counterexample
//! records through the library.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use hamspec::certify::corollary_bounds;
use hamspec::graph6::parse_graph6;
use hamspec::spectral::{build_matrix, eigenvalues, parse_rational, SpectralParams};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hamspec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hamspec-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn certify_reports_precondition_failures_on_tiny_graphs() {
    let out = run(&["certify", "--graph", "Bw", "--alpha", "1", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("graph: Bw (n=3, e=3)"), "header missing: {text}");
    assert!(text.contains("precondition-failed"), "no precondition line: {text}");
    assert!(text.contains("verdict: precondition-failed"), "wrong verdict: {text}");
}

#[test]
fn certify_certifies_a_complete_graph() {
    let out = run(&["certify", "--graph", "D~{", "--alpha", "1", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("verdict: certified-hamiltonian (T1 k=2 part=1)"),
        "unexpected verdict: {text}"
    );
}

#[test]
fn certify_flags_traceable_but_not_hamiltonian_equality_case() {
    let out = run(&["certify", "--graph", "IheA@GUAo", "--alpha", "1", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("T2 k=3 part=1: lambda1=6.000000000 bound=6.000000000"),
        "equality case not reported: {text}"
    );
    assert!(text.contains("certified-traceable (hamiltonian=false)"), "flag missing: {text}");
    assert!(text.contains("verdict: certified-traceable (T2 k=3 part=1)"), "verdict: {text}");
}

#[test]
fn spectrum_prints_eigenvalues_and_bracketing() {
    let out = run(&["spectrum", "--graph", "Bg", "--alpha", "2", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("eigenvalues: 4.732050808 2.000000000 1.267949192"), "{text}");
    assert!(text.contains("rayleigh: lambda1^2="), "{text}");
}

#[test]
fn invariants_reports_petersen_facts() {
    let out = run(&["invariants", "--graph", "IheA@GUAo"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("n=10 e=15 delta=3 Delta=3 gamma=4 kappa=3"), "{text}");
    assert!(text.contains("hamiltonian=false traceable=true"), "{text}");
    assert!(text.contains("gamma_witness: {"), "{text}");
}

#[test]
fn reads_one_graph_from_stdin() {
    let mut child = bin()
        .args(["invariants", "--graph", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().expect("stdin open").write_all(b"IheA@GUAo\n").expect("write stdin");
    let out = child.wait_with_output().expect("binary exits");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("gamma=4"), "{}", stdout_of(&out));
}

#[test]
fn malformed_graph_input_exits_2() {
    let out = run(&["certify", "--graph", "#nonsense", "--alpha", "1", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("error:"), "{}", stderr_of(&out));
}

#[test]
fn oversized_sweep_source_exits_2() {
    let out = run(&["sweep", "--source", "labeled:99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("error:"), "{}", stderr_of(&out));
}

#[test]
fn sweep_reports_are_identical_across_thread_counts() {
    let one = temp_path("jobs1.jsonl");
    let four = temp_path("jobs4.jsonl");
    for (jobs, path) in [("1", &one), ("4", &four)] {
        let out = run(&[
            "sweep",
            "--source",
            "labeled:5",
            "--checks",
            "theorem1,rayleigh",
            "--jobs",
            jobs,
            "--out",
            path.to_str().expect("utf8 path"),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    }
    let a = std::fs::read(&one).expect("first report written");
    let b = std::fs::read(&four).expect("second report written");
    assert!(!a.is_empty());
    assert_eq!(a, b, "reports differ between --jobs 1 and --jobs 4");
    let _ = std::fs::remove_file(&one);
    let _ = std::fs::remove_file(&four);
}

/// A negative tolerance turns bound-attaining graphs into counterexample
/// records; every record must replay exactly through the library.
#[test]
fn emitted_counterexample_records_replay_through_the_library() {
    let path = temp_path("replay.jsonl");
    let out = run(&[
        "sweep",
        "--source",
        "dedup:4",
        "--alphas",
        "1",
        "--betas",
        "1",
        "--checks",
        "corollary",
        "--tol-corollary=-1e-6",
        "--out",
        path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr_of(&out));
    assert!(stderr_of(&out).contains("swept 11 graphs: 2 counterexamples"), "{}", stderr_of(&out));

    let text = std::fs::read_to_string(&path).expect("report written");
    let mut replayed = 0usize;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid json line");
        if v["record"] != "counterexample" {
            continue;
        }
        assert_eq!(v["check"], "corollary");
        assert_eq!(v["part"], 1, "only the lower bound is attained at order 4");
        let g = parse_graph6(v["graph6"].as_str().expect("graph6 string")).expect("replayable");
        let p = SpectralParams::new(
            parse_rational(v["alpha"].as_str().expect("alpha")).expect("alpha parses"),
            parse_rational(v["beta"].as_str().expect("beta")).expect("beta parses"),
        )
        .expect("valid params");
        let bounds = corollary_bounds(&g, &p).expect("bounds defined");
        let spectrum = eigenvalues(&build_matrix(&g, &p)).expect("spectrum");
        let lambda = v["lambda"].as_f64().expect("lambda");
        let bound = v["bound"].as_f64().expect("bound");
        assert!(
            (lambda - spectrum.lambda1).abs() <= 1e-12 * (1.0 + lambda.abs()),
            "recorded lambda {lambda} vs recomputed {}",
            spectrum.lambda1
        );
        assert!(
            (bound - bounds.lower1).abs() <= 1e-12 * (1.0 + bound.abs()),
            "recorded bound {bound} vs recomputed {}",
            bounds.lower1
        );
        // The records exist precisely because lambda1 attains the bound.
        assert!((lambda - bound).abs() <= 1e-9 * (1.0 + bound.abs()));
        replayed += 1;
    }
    assert_eq!(replayed, 2, "expected the two bound-attaining order-4 graphs");
    let _ = std::fs::remove_file(&path);
}
