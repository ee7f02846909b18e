//! Batch verification sweeps over graph corpora.
//!
//! A sweep runs selected checks on every (graph, parameter) pair drawn from a
//! source, tallies per-check counters, and records every violation with
//! enough detail to replay it in isolation. Reports are deterministic: the
//! same spec produces byte-identical JSONL regardless of thread count, which
//! is why wall time is tracked on the report struct but never serialized.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{
    corollary_bounds_with_gamma, evaluate_condition_with_tol, theorem1_k_values,
    theorem2_k_values, Outcome, Part, TheoremId, CONDITION_TOL,
};
use crate::enumerate::{dedup_isomorphs, labeled_count};
use crate::graph::{degree_profile, Graph};
use crate::graph6::{encode_graph6, parse_graph6_file, Graph6FileError};
use crate::oracles::{
    independence_number, is_hamiltonian, is_traceable, lemma_audit, vertex_connectivity,
};
use crate::rng::{sample_random, SampleError};
use crate::spectral::{
    build_matrix, eigenvalues, m_squared_row_sums_direct, mean_square_term, rational_to_f64,
    row_sum_m_squared, SpectralParams, SpectrumSummary,
};

/// Exhaustive sources stop here; the full labeled corpus on 7 vertices is
/// already 2^21 graphs.
pub const MAX_CORPUS_ORDER: usize = 7;

const MASK_CHUNK: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0}")]
pub struct ParseSpecError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Theorem1,
    Theorem2,
    Corollary,
    Rayleigh,
    Psd,
    Lemmas,
    RowSum,
}

pub const ALL_CHECKS: [Check; 7] = [
    Check::Theorem1,
    Check::Theorem2,
    Check::Corollary,
    Check::Rayleigh,
    Check::Psd,
    Check::Lemmas,
    Check::RowSum,
];

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Theorem2 => "theorem2",
            Check::Corollary => "corollary",
            Check::Rayleigh => "rayleigh",
            Check::Psd => "psd",
            Check::Lemmas => "lemmas",
            Check::RowSum => "rowsum",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = ParseSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_CHECKS
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                ParseSpecError(format!(
                    "unknown check {s:?}, expected one of theorem1 theorem2 corollary rayleigh psd lemmas rowsum"
                ))
            })
    }
}

/// Relative tolerances used by the individual checks. `quadratic` belongs to
/// the quadratic-form identity exercised by the test suite; it rides along
/// here so one struct carries every knob a report echoes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub condition: f64,
    pub rayleigh: f64,
    pub psd: f64,
    pub corollary: f64,
    pub quadratic: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            condition: CONDITION_TOL,
            rayleigh: 1e-9,
            psd: 1e-9,
            corollary: 1e-8,
            quadratic: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    /// Every labeled graph on n vertices (2^C(n,2) of them), n <= 7.
    Labeled(usize),
    /// One representative per isomorphism class on n vertices, n <= 7.
    Dedup(usize),
    /// graph6 lines from a file.
    File(PathBuf),
    /// G(n, p) samples from the documented splitmix64 stream.
    Random { n: usize, p: f64, count: usize, seed: u64 },
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Labeled(n) => write!(f, "labeled:{n}"),
            Source::Dedup(n) => write!(f, "dedup:{n}"),
            Source::File(p) => write!(f, "file:{}", p.display()),
            Source::Random { n, p, count, seed } => write!(f, "random:{n},{p},{count},{seed}"),
        }
    }
}

impl FromStr for Source {
    type Err = ParseSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| {
            ParseSpecError(format!(
                "source {s:?} is missing a kind, expected labeled:N, dedup:N, file:PATH or random:N,P,COUNT,SEED"
            ))
        })?;
        let order = |rest: &str| -> Result<usize, ParseSpecError> {
            let n: usize = rest
                .parse()
                .map_err(|_| ParseSpecError(format!("bad order {rest:?} in source {s:?}")))?;
            if n == 0 || n > MAX_CORPUS_ORDER {
                return Err(ParseSpecError(format!(
                    "exhaustive sources support 1..={MAX_CORPUS_ORDER} vertices, got {n}"
                )));
            }
            Ok(n)
        };
        match kind {
            "labeled" => Ok(Source::Labeled(order(rest)?)),
            "dedup" => Ok(Source::Dedup(order(rest)?)),
            "file" => {
                if rest.is_empty() {
                    return Err(ParseSpecError("file source needs a path".into()));
                }
                Ok(Source::File(PathBuf::from(rest)))
            }
            "random" => {
                let fields: Vec<&str> = rest.split(',').collect();
                if fields.len() != 4 {
                    return Err(ParseSpecError(format!(
                        "random source {s:?} needs n,p,count,seed"
                    )));
                }
                let n = fields[0]
                    .parse()
                    .map_err(|_| ParseSpecError(format!("bad n {:?}", fields[0])))?;
                let p = fields[1]
                    .parse()
                    .map_err(|_| ParseSpecError(format!("bad p {:?}", fields[1])))?;
                let count = fields[2]
                    .parse()
                    .map_err(|_| ParseSpecError(format!("bad count {:?}", fields[2])))?;
                let seed = fields[3]
                    .parse()
                    .map_err(|_| ParseSpecError(format!("bad seed {:?}", fields[3])))?;
                Ok(Source::Random { n, p, count, seed })
            }
            other => Err(ParseSpecError(format!(
                "unknown source kind {other:?}, expected labeled, dedup, file or random"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verbosity {
    /// Config, counterexamples and summary only.
    Counterexamples,
    /// Additionally one event line per (graph, params, check).
    Full,
}

impl fmt::Display for Verbosity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verbosity::Counterexamples => f.write_str("counterexamples"),
            Verbosity::Full => f.write_str("full"),
        }
    }
}

impl FromStr for Verbosity {
    type Err = ParseSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "counterexamples" => Ok(Verbosity::Counterexamples),
            "full" => Ok(Verbosity::Full),
            other => Err(ParseSpecError(format!(
                "unknown verbosity {other:?}, expected counterexamples or full"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub source: Source,
    pub params: Vec<SpectralParams>,
    pub checks: Vec<Check>,
    pub tolerances: Tolerances,
    /// Worker threads; None uses the global rayon pool.
    pub jobs: Option<usize>,
    pub verbosity: Verbosity,
    /// Skip disconnected graphs; the random source resamples instead so the
    /// requested count is still delivered.
    pub connected_only: bool,
}

impl SweepSpec {
    pub fn new(source: Source, params: Vec<SpectralParams>) -> Self {
        SweepSpec {
            source,
            params,
            checks: ALL_CHECKS.to_vec(),
            tolerances: Tolerances::default(),
            jobs: None,
            verbosity: Verbosity::Counterexamples,
            connected_only: false,
        }
    }
}

/// (1,1), (2,1), (3,2), (5,1): the signless Laplacian plus three slopes.
pub fn default_param_grid() -> Vec<SpectralParams> {
    [(1, 1), (2, 1), (3, 2), (5, 1)]
        .iter()
        .map(|&(a, b)| SpectralParams::from_ints(a, b).expect("grid params are nonzero"))
        .collect()
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckCounters {
    pub graphs_examined: u64,
    pub conditions_evaluated: u64,
    pub holds: u64,
    pub certified: u64,
    pub exceptional: u64,
    pub counterexamples: u64,
}

impl CheckCounters {
    fn absorb(&mut self, o: &CheckCounters) {
        self.graphs_examined += o.graphs_examined;
        self.conditions_evaluated += o.conditions_evaluated;
        self.holds += o.holds;
        self.certified += o.certified;
        self.exceptional += o.exceptional;
        self.counterexamples += o.counterexamples;
    }
}

/// Everything needed to replay one violation: rebuild the graph from
/// `graph6`, the parameters from `alpha`/`beta`, rerun the named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub graph6: String,
    pub alpha: String,
    pub beta: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<u8>,
    pub lambda: f64,
    pub bound: f64,
    pub oracle: String,
}

/// Full-verbosity trace line. Param-independent checks use "-" for both
/// parameter fields.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventRecord {
    pub graph6: String,
    pub alpha: String,
    pub beta: String,
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub graphs_total: u64,
    pub examined_per_order: BTreeMap<usize, u64>,
    pub skipped_disconnected: u64,
    /// (graph, check) evaluations abandoned because an oracle refused the
    /// order; never a counterexample, always counted.
    pub budget_skips: u64,
    pub checks: BTreeMap<String, CheckCounters>,
    pub counterexample_count: u64,
    /// Path-condition certifications where the graph is traceable but not
    /// Hamiltonian. The spanning-path conclusion is exactly right for these;
    /// the count shows it cannot be strengthened to a spanning cycle.
    pub traceable_only_certifications: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub source: String,
    pub alphas: Vec<String>,
    pub betas: Vec<String>,
    pub checks: Vec<String>,
    pub tolerances: Tolerances,
    pub connected_only: bool,
    pub verbosity: String,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub config: ConfigEcho,
    pub events: Vec<EventRecord>,
    pub counterexamples: Vec<CounterexampleRecord>,
    pub summary: SweepSummary,
    /// Measured but never serialized, so reruns diff clean.
    pub wall: Duration,
}

impl SweepReport {
    /// One JSON object per line: config, events (full verbosity), one line
    /// per counterexample, then the summary.
    pub fn to_jsonl(&self) -> String {
        #[derive(Serialize)]
        #[serde(tag = "record", rename_all = "lowercase")]
        enum Line<'a> {
            Config(&'a ConfigEcho),
            Event(&'a EventRecord),
            Counterexample(&'a CounterexampleRecord),
            Summary(&'a SweepSummary),
        }
        let mut out = String::new();
        let mut push = |line: Line| {
            out.push_str(&serde_json::to_string(&line).expect("report values are finite"));
            out.push('\n');
        };
        push(Line::Config(&self.config));
        for e in &self.events {
            push(Line::Event(e));
        }
        for c in &self.counterexamples {
            push(Line::Counterexample(c));
        }
        push(Line::Summary(&self.summary));
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.counterexample_count == 0 {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("source: {0}")]
    Source(String),
    #[error("cannot read {path}: {err}")]
    Io {
        path: PathBuf,
        #[source]
        err: std::io::Error,
    },
    #[error(transparent)]
    File(#[from] Graph6FileError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("no parameter pairs supplied")]
    EmptyGrid,
    #[error("no checks selected")]
    EmptyChecks,
    #[error("thread pool: {0}")]
    Threads(String),
}

enum Work {
    Masks { n: usize, count: u64 },
    Graphs(Vec<Graph>),
}

#[derive(Default)]
struct Partial {
    counters: BTreeMap<Check, CheckCounters>,
    events: Vec<EventRecord>,
    counterexamples: Vec<CounterexampleRecord>,
    examined_per_order: BTreeMap<usize, u64>,
    graphs_total: u64,
    skipped_disconnected: u64,
    budget_skips: u64,
    traceable_only: u64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        for (check, c) in other.counters {
            self.counters.entry(check).or_default().absorb(&c);
        }
        self.events.extend(other.events);
        self.counterexamples.extend(other.counterexamples);
        for (n, c) in other.examined_per_order {
            *self.examined_per_order.entry(n).or_default() += c;
        }
        self.graphs_total += other.graphs_total;
        self.skipped_disconnected += other.skipped_disconnected;
        self.budget_skips += other.budget_skips;
        self.traceable_only += other.traceable_only;
        self
    }
}

/// Per-graph memo so checks share oracle calls. `None` inside means the
/// oracle refused the order.
#[derive(Default)]
struct OracleCache {
    kappa: Option<usize>,
    gamma: Option<usize>,
    ham: Option<Option<bool>>,
    trace: Option<Option<bool>>,
}

impl OracleCache {
    fn kappa(&mut self, g: &Graph) -> usize {
        *self.kappa.get_or_insert_with(|| vertex_connectivity(g))
    }

    fn gamma(&mut self, g: &Graph) -> usize {
        *self.gamma.get_or_insert_with(|| independence_number(g).0)
    }

    fn hamiltonian(&mut self, g: &Graph) -> Option<bool> {
        *self.ham.get_or_insert_with(|| is_hamiltonian(g).ok())
    }

    fn traceable(&mut self, g: &Graph) -> Option<bool> {
        *self.trace.get_or_insert_with(|| is_traceable(g).ok())
    }
}

fn bump(out: &mut Partial, check: Check, f: impl FnOnce(&mut CheckCounters)) {
    f(out.counters.entry(check).or_default())
}

fn graph_label(g: &Graph) -> String {
    encode_graph6(g).unwrap_or_else(|_| format!("(unencodable n={})", g.n()))
}

fn push_event(out: &mut Partial, spec: &SweepSpec, event: EventRecord) {
    if spec.verbosity == Verbosity::Full {
        out.events.push(event);
    }
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepReport, SweepError> {
    if spec.params.is_empty() {
        return Err(SweepError::EmptyGrid);
    }
    if spec.checks.is_empty() {
        return Err(SweepError::EmptyChecks);
    }
    let started = Instant::now();
    // Canonical check order, duplicates collapsed, so reports do not depend
    // on how the list was written.
    let checks: Vec<Check> = ALL_CHECKS
        .iter()
        .copied()
        .filter(|c| spec.checks.contains(c))
        .collect();

    let work = materialize(spec)?;
    let run = || match &work {
        Work::Masks { n, count } => {
            let chunks = count.div_ceil(MASK_CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let lo = c * MASK_CHUNK;
                    let hi = (lo + MASK_CHUNK).min(*count);
                    let mut out = Partial::default();
                    for mask in lo..hi {
                        let g = Graph::from_edge_mask(*n, mask).expect("mask in range");
                        process_graph(&g, spec, &checks, &mut out);
                    }
                    out
                })
                .reduce(Partial::default, Partial::merge)
        }
        Work::Graphs(graphs) => graphs
            .par_iter()
            .map(|g| {
                let mut out = Partial::default();
                process_graph(g, spec, &checks, &mut out);
                out
            })
            .reduce(Partial::default, Partial::merge),
    };
    let partial = match spec.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| SweepError::Threads(e.to_string()))?
            .install(run),
        None => run(),
    };

    let mut counterexamples = partial.counterexamples;
    counterexamples.sort_by(|a, b| {
        (
            a.graph6.as_str(),
            a.alpha.as_str(),
            a.beta.as_str(),
            a.check.as_str(),
            a.theorem.as_deref(),
            a.k,
            a.part,
        )
            .cmp(&(
                b.graph6.as_str(),
                b.alpha.as_str(),
                b.beta.as_str(),
                b.check.as_str(),
                b.theorem.as_deref(),
                b.k,
                b.part,
            ))
    });
    let mut events = partial.events;
    events.sort_by(|a, b| {
        (a.graph6.as_str(), a.alpha.as_str(), a.beta.as_str(), a.check.as_str()).cmp(&(
            b.graph6.as_str(),
            b.alpha.as_str(),
            b.beta.as_str(),
            b.check.as_str(),
        ))
    });

    let summary = SweepSummary {
        graphs_total: partial.graphs_total,
        examined_per_order: partial.examined_per_order,
        skipped_disconnected: partial.skipped_disconnected,
        budget_skips: partial.budget_skips,
        checks: checks
            .iter()
            .map(|c| {
                (c.name().to_string(), partial.counters.get(c).copied().unwrap_or_default())
            })
            .collect(),
        counterexample_count: counterexamples.len() as u64,
        traceable_only_certifications: partial.traceable_only,
    };
    let config = ConfigEcho {
        source: spec.source.to_string(),
        alphas: spec.params.iter().map(|p| p.alpha().to_string()).collect(),
        betas: spec.params.iter().map(|p| p.beta().to_string()).collect(),
        checks: checks.iter().map(|c| c.name().to_string()).collect(),
        tolerances: spec.tolerances,
        connected_only: spec.connected_only,
        verbosity: spec.verbosity.to_string(),
    };
    Ok(SweepReport {
        config,
        events,
        counterexamples,
        summary,
        wall: started.elapsed(),
    })
}

fn materialize(spec: &SweepSpec) -> Result<Work, SweepError> {
    match &spec.source {
        Source::Labeled(n) => {
            if *n == 0 || *n > MAX_CORPUS_ORDER {
                return Err(SweepError::Source(format!(
                    "labeled corpus supports 1..={MAX_CORPUS_ORDER} vertices, got {n}"
                )));
            }
            Ok(Work::Masks { n: *n, count: labeled_count(*n) })
        }
        Source::Dedup(n) => {
            if *n == 0 || *n > MAX_CORPUS_ORDER {
                return Err(SweepError::Source(format!(
                    "dedup corpus supports 1..={MAX_CORPUS_ORDER} vertices, got {n}"
                )));
            }
            let graphs = dedup_isomorphs(*n).map_err(|e| SweepError::Source(e.to_string()))?;
            Ok(Work::Graphs(graphs))
        }
        Source::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|err| SweepError::Io { path: path.clone(), err })?;
            Ok(Work::Graphs(parse_graph6_file(&text)?))
        }
        Source::Random { n, p, count, seed } => {
            if spec.connected_only {
                // Rejection sampling from the same stream keeps the draw
                // deterministic; the attempt cap turns a hopeless (n, p)
                // into an error instead of a hang.
                let cap = count.saturating_mul(1000).max(10_000);
                let graphs: Vec<Graph> = sample_random(*n, *p, cap, *seed)?
                    .filter(|g| g.is_connected())
                    .take(*count)
                    .collect();
                if graphs.len() < *count {
                    return Err(SweepError::Source(format!(
                        "drew only {} connected graphs in {cap} attempts at n={n}, p={p}",
                        graphs.len()
                    )));
                }
                Ok(Work::Graphs(graphs))
            } else {
                Ok(Work::Graphs(sample_random(*n, *p, *count, *seed)?.collect()))
            }
        }
    }
}

fn process_graph(g: &Graph, spec: &SweepSpec, checks: &[Check], out: &mut Partial) {
    if spec.connected_only && !g.is_connected() {
        out.skipped_disconnected += 1;
        return;
    }
    let g6 = graph_label(g);
    out.graphs_total += 1;
    *out.examined_per_order.entry(g.n()).or_default() += 1;

    let mut cache = OracleCache::default();
    for &check in checks {
        if check != Check::Lemmas {
            bump(out, check, |c| c.graphs_examined += 1);
        }
    }
    if checks.contains(&Check::Lemmas) {
        run_lemmas(g, &g6, spec, out);
    }

    let needs_spectrum = checks.iter().any(|c| {
        matches!(c, Check::Theorem1 | Check::Theorem2 | Check::Corollary | Check::Rayleigh | Check::Psd)
    });
    for p in &spec.params {
        let spectrum = if needs_spectrum {
            match eigenvalues(&build_matrix(g, p)) {
                Ok(s) => Some(s),
                Err(_) => {
                    // Jacobi on a real symmetric matrix converging is not in
                    // doubt, but a sweep must not die mid-corpus.
                    out.budget_skips += 1;
                    continue;
                }
            }
        } else {
            None
        };
        for &check in checks {
            match check {
                Check::Theorem1 => run_theorem(
                    TheoremId::T1,
                    g,
                    &g6,
                    p,
                    spectrum.as_ref().expect("spectrum computed for theorem checks"),
                    &mut cache,
                    spec,
                    out,
                ),
                Check::Theorem2 => run_theorem(
                    TheoremId::T2,
                    g,
                    &g6,
                    p,
                    spectrum.as_ref().expect("spectrum computed for theorem checks"),
                    &mut cache,
                    spec,
                    out,
                ),
                Check::Corollary => run_corollary(
                    g,
                    &g6,
                    p,
                    spectrum.as_ref().expect("spectrum computed for corollary"),
                    &mut cache,
                    spec,
                    out,
                ),
                Check::Rayleigh => run_rayleigh(
                    g,
                    &g6,
                    p,
                    spectrum.as_ref().expect("spectrum computed for rayleigh"),
                    spec,
                    out,
                ),
                Check::Psd => run_psd(
                    &g6,
                    p,
                    spectrum.as_ref().expect("spectrum computed for psd"),
                    spec,
                    out,
                ),
                Check::RowSum => run_rowsum(g, &g6, p, spec, out),
                Check::Lemmas => {}
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_theorem(
    theorem: TheoremId,
    g: &Graph,
    g6: &str,
    p: &SpectralParams,
    spectrum: &SpectrumSummary,
    cache: &mut OracleCache,
    spec: &SweepSpec,
    out: &mut Partial,
) {
    let check = match theorem {
        TheoremId::T1 => Check::Theorem1,
        TheoremId::T2 => Check::Theorem2,
    };
    let kappa = cache.kappa(g);
    let n = g.n();
    let ks = match theorem {
        TheoremId::T1 => theorem1_k_values(kappa, n),
        TheoremId::T2 => theorem2_k_values(kappa, n),
    };
    let (mut evaluated, mut holds, mut certified, mut exceptional, mut bad) =
        (0u64, 0u64, 0u64, 0u64, 0u64);
    for k in ks {
        for part in [Part::One, Part::Two] {
            let v = evaluate_condition_with_tol(
                theorem,
                part,
                g,
                p,
                k,
                kappa,
                spectrum,
                spec.tolerances.condition,
            );
            if v.reason.is_some() {
                continue;
            }
            evaluated += 1;
            if !v.holds {
                continue;
            }
            holds += 1;
            if v.outcome == Outcome::ExceptionalCompleteBipartite {
                // The graph is the stated exception, so the disjunctive
                // conclusion is satisfied without any oracle call.
                exceptional += 1;
                continue;
            }
            certified += 1;
            let claim = match theorem {
                TheoremId::T1 => cache.hamiltonian(g),
                TheoremId::T2 => cache.traceable(g),
            };
            match claim {
                None => out.budget_skips += 1,
                Some(true) => {
                    if theorem == TheoremId::T2 && cache.hamiltonian(g) == Some(false) {
                        out.traceable_only += 1;
                    }
                }
                Some(false) => {
                    bad += 1;
                    out.counterexamples.push(CounterexampleRecord {
                        graph6: g6.to_string(),
                        alpha: p.alpha().to_string(),
                        beta: p.beta().to_string(),
                        check: check.name().to_string(),
                        theorem: Some(theorem.to_string()),
                        k: Some(v.k),
                        part: Some(match v.part {
                            Part::One => 1,
                            Part::Two => 2,
                        }),
                        lambda: v.lambda,
                        bound: v.bound,
                        oracle: match theorem {
                            TheoremId::T1 => "hamiltonian=false".to_string(),
                            TheoremId::T2 => "traceable=false".to_string(),
                        },
                    });
                }
            }
        }
    }
    bump(out, check, |c| {
        c.conditions_evaluated += evaluated;
        c.holds += holds;
        c.certified += certified;
        c.exceptional += exceptional;
        c.counterexamples += bad;
    });
    push_event(
        out,
        spec,
        EventRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: check.name().to_string(),
            ok: bad == 0,
            detail: format!(
                "{evaluated} instances, {holds} hold, {certified} certified, {exceptional} exceptional"
            ),
        },
    );
}

fn run_corollary(
    g: &Graph,
    g6: &str,
    p: &SpectralParams,
    spectrum: &SpectrumSummary,
    cache: &mut OracleCache,
    spec: &SweepSpec,
    out: &mut Partial,
) {
    let gamma = cache.gamma(g);
    let (mut evaluated, mut holds, mut bad) = (0u64, 0u64, 0u64);
    let mut detail = String::from("not applicable");
    if let Ok(b) = corollary_bounds_with_gamma(g, p, gamma) {
        evaluated = 2;
        let tol = spec.tolerances.corollary;
        let slack_lo = tol * (1.0 + b.lower1.abs());
        if spectrum.lambda1 >= b.lower1 - slack_lo {
            holds += 1;
        } else {
            bad += 1;
            out.counterexamples.push(CounterexampleRecord {
                graph6: g6.to_string(),
                alpha: p.alpha().to_string(),
                beta: p.beta().to_string(),
                check: Check::Corollary.name().to_string(),
                theorem: None,
                k: None,
                part: Some(1),
                lambda: spectrum.lambda1,
                bound: b.lower1,
                oracle: format!("gamma={gamma}"),
            });
        }
        let slack_hi = tol * (1.0 + b.upper_n.abs());
        if spectrum.lambda_n <= b.upper_n + slack_hi {
            holds += 1;
        } else {
            bad += 1;
            out.counterexamples.push(CounterexampleRecord {
                graph6: g6.to_string(),
                alpha: p.alpha().to_string(),
                beta: p.beta().to_string(),
                check: Check::Corollary.name().to_string(),
                theorem: None,
                k: None,
                part: Some(2),
                lambda: spectrum.lambda_n,
                bound: b.upper_n,
                oracle: format!("gamma={gamma}"),
            });
        }
        detail = format!("lower {:.6} <= {:.6}, upper {:.6} >= {:.6}", b.lower1, spectrum.lambda1, b.upper_n, spectrum.lambda_n);
    }
    bump(out, Check::Corollary, |c| {
        c.conditions_evaluated += evaluated;
        c.holds += holds;
        c.counterexamples += bad;
    });
    push_event(
        out,
        spec,
        EventRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::Corollary.name().to_string(),
            ok: bad == 0,
            detail,
        },
    );
}

fn run_rayleigh(
    g: &Graph,
    g6: &str,
    p: &SpectralParams,
    spectrum: &SpectrumSummary,
    spec: &SweepSpec,
    out: &mut Partial,
) {
    let mean = mean_square_term(g, p);
    let mean_f = rational_to_f64(&mean);
    let tol = spec.tolerances.rayleigh * (1.0 + mean_f.abs());
    let (mut holds, mut bad) = (0u64, 0u64);
    let l1 = spectrum.lambda1;
    let ln = spectrum.lambda_n;
    if l1 * l1 >= mean_f - tol {
        holds += 1;
    } else {
        bad += 1;
        out.counterexamples.push(CounterexampleRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::Rayleigh.name().to_string(),
            theorem: None,
            k: None,
            part: Some(1),
            lambda: l1,
            bound: mean_f.max(0.0).sqrt(),
            oracle: format!("mean_square={mean}"),
        });
    }
    if ln * ln <= mean_f + tol {
        holds += 1;
    } else {
        bad += 1;
        out.counterexamples.push(CounterexampleRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::Rayleigh.name().to_string(),
            theorem: None,
            k: None,
            part: Some(2),
            lambda: ln,
            bound: mean_f.max(0.0).sqrt(),
            oracle: format!("mean_square={mean}"),
        });
    }
    bump(out, Check::Rayleigh, |c| {
        c.conditions_evaluated += 2;
        c.holds += holds;
        c.counterexamples += bad;
    });
    push_event(
        out,
        spec,
        EventRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::Rayleigh.name().to_string(),
            ok: bad == 0,
            detail: format!("lambda1^2={:.6}, mean={mean_f:.6}, lambda_n^2={:.6}", l1 * l1, ln * ln),
        },
    );
}

fn run_psd(
    g6: &str,
    p: &SpectralParams,
    spectrum: &SpectrumSummary,
    spec: &SweepSpec,
    out: &mut Partial,
) {
    if !p.certifiable() {
        push_event(
            out,
            spec,
            EventRecord {
                graph6: g6.to_string(),
                alpha: p.alpha().to_string(),
                beta: p.beta().to_string(),
                check: Check::Psd.name().to_string(),
                ok: true,
                detail: "not applicable (needs alpha >= beta > 0)".to_string(),
            },
        );
        return;
    }
    let floor = -spec.tolerances.psd * (1.0 + spectrum.lambda1.abs());
    let ok = spectrum.lambda_n >= floor;
    if !ok {
        out.counterexamples.push(CounterexampleRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::Psd.name().to_string(),
            theorem: None,
            k: None,
            part: None,
            lambda: spectrum.lambda_n,
            bound: floor,
            oracle: format!("lambda1={}", spectrum.lambda1),
        });
    }
    bump(out, Check::Psd, |c| {
        c.conditions_evaluated += 1;
        c.holds += ok as u64;
        c.counterexamples += (!ok) as u64;
    });
    push_event(
        out,
        spec,
        EventRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::Psd.name().to_string(),
            ok,
            detail: format!("lambda_n={}", spectrum.lambda_n),
        },
    );
}

fn run_rowsum(g: &Graph, g6: &str, p: &SpectralParams, spec: &SweepSpec, out: &mut Partial) {
    let n = g.n();
    let direct = m_squared_row_sums_direct(g, p);
    let (mut holds, mut bad) = (0u64, 0u64);
    let mut total = BigRational::zero();
    for (u, direct_u) in direct.iter().enumerate() {
        let closed = row_sum_m_squared(g, p, u);
        total += direct_u;
        if closed == *direct_u {
            holds += 1;
        } else {
            bad += 1;
            out.counterexamples.push(CounterexampleRecord {
                graph6: g6.to_string(),
                alpha: p.alpha().to_string(),
                beta: p.beta().to_string(),
                check: Check::RowSum.name().to_string(),
                theorem: None,
                k: Some(u),
                part: None,
                lambda: 0.0,
                bound: 0.0,
                oracle: format!("row {u}: closed form {closed}, direct {}", direct[u]),
            });
        }
    }
    let prof = degree_profile(g);
    let ab = p.alpha() + p.beta();
    let expected = &ab * &ab * BigRational::from_integer(BigInt::from(prof.sum_squares));
    if total == expected {
        holds += 1;
    } else {
        bad += 1;
        out.counterexamples.push(CounterexampleRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::RowSum.name().to_string(),
            theorem: None,
            k: None,
            part: None,
            lambda: 0.0,
            bound: 0.0,
            oracle: format!("total {total}, expected {expected}"),
        });
    }
    bump(out, Check::RowSum, |c| {
        c.conditions_evaluated += n as u64 + 1;
        c.holds += holds;
        c.counterexamples += bad;
    });
    push_event(
        out,
        spec,
        EventRecord {
            graph6: g6.to_string(),
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            check: Check::RowSum.name().to_string(),
            ok: bad == 0,
            detail: format!("{} row sums plus total", n),
        },
    );
}

fn run_lemmas(g: &Graph, g6: &str, spec: &SweepSpec, out: &mut Partial) {
    let audit = match lemma_audit(g) {
        Ok(a) => a,
        Err(_) => {
            out.budget_skips += 1;
            return;
        }
    };
    let (mut evaluated, mut holds, mut certified, mut bad) = (0u64, 0u64, 0u64, 0u64);
    let mut failing = Vec::new();
    for (name, applicable, premise, conclusion) in [
        ("lemma1", audit.lemma1.applicable, audit.lemma1.premise, audit.lemma1.conclusion),
        ("lemma2", audit.lemma2.applicable, audit.lemma2.premise, audit.lemma2.conclusion),
        ("lemma3", audit.lemma3.applicable, audit.lemma3.premise, audit.lemma3.conclusion),
        (
            "lemma4",
            audit.lemma4.applicable,
            audit.lemma4.applicable,
            audit.lemma4.circumference >= audit.lemma4.bound,
        ),
    ] {
        if !applicable {
            continue;
        }
        evaluated += 1;
        if !premise {
            continue;
        }
        holds += 1;
        if conclusion {
            certified += 1;
        } else {
            bad += 1;
            failing.push(name);
            out.counterexamples.push(CounterexampleRecord {
                graph6: g6.to_string(),
                alpha: "-".to_string(),
                beta: "-".to_string(),
                check: Check::Lemmas.name().to_string(),
                theorem: None,
                k: None,
                part: None,
                lambda: 0.0,
                bound: 0.0,
                oracle: format!("{name}: premise holds, conclusion fails"),
            });
        }
    }
    bump(out, Check::Lemmas, |c| {
        c.graphs_examined += 1;
        c.conditions_evaluated += evaluated;
        c.holds += holds;
        c.certified += certified;
        c.counterexamples += bad;
    });
    push_event(
        out,
        spec,
        EventRecord {
            graph6: g6.to_string(),
            alpha: "-".to_string(),
            beta: "-".to_string(),
            check: Check::Lemmas.name().to_string(),
            ok: bad == 0,
            detail: if failing.is_empty() {
                format!("{evaluated} applicable, {holds} premises hold")
            } else {
                format!("failed: {}", failing.join(","))
            },
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<SpectralParams> {
        default_param_grid()
    }

    #[test]
    fn source_parsing() {
        assert_eq!("labeled:4".parse::<Source>().unwrap(), Source::Labeled(4));
        assert_eq!("dedup:6".parse::<Source>().unwrap(), Source::Dedup(6));
        assert_eq!(
            "file:/tmp/graphs.g6".parse::<Source>().unwrap(),
            Source::File(PathBuf::from("/tmp/graphs.g6"))
        );
        assert_eq!(
            "random:9,0.5,100,42".parse::<Source>().unwrap(),
            Source::Random { n: 9, p: 0.5, count: 100, seed: 42 }
        );
        assert!("labeled:8".parse::<Source>().is_err());
        assert!("labeled:0".parse::<Source>().is_err());
        assert!("random:9,0.5".parse::<Source>().is_err());
        assert!("bogus:1".parse::<Source>().is_err());
        assert!("labeled".parse::<Source>().is_err());
        for s in ["labeled:4", "dedup:6", "random:9,0.5,100,42"] {
            assert_eq!(s.parse::<Source>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn check_parsing_round_trips() {
        for c in ALL_CHECKS {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("theorem3".parse::<Check>().is_err());
    }

    #[test]
    fn labeled_four_clean() {
        let spec = SweepSpec::new(Source::Labeled(4), grid());
        let report = sweep(&spec).unwrap();
        assert_eq!(report.summary.graphs_total, 64);
        assert_eq!(report.summary.examined_per_order.get(&4), Some(&64));
        assert_eq!(report.summary.counterexample_count, 0);
        assert_eq!(report.exit_code(), 0);
        let t1 = &report.summary.checks["theorem1"];
        assert_eq!(t1.graphs_examined, 64);
        assert!(t1.conditions_evaluated > 0);
        assert!(t1.certified > 0);
        // No graph on 4 vertices clears the path theorem's order floor.
        assert_eq!(report.summary.checks["theorem2"].conditions_evaluated, 0);
        let psd = &report.summary.checks["psd"];
        assert_eq!(psd.conditions_evaluated, 64 * 4);
        assert_eq!(psd.holds, 64 * 4);
    }

    #[test]
    fn reports_identical_across_jobs() {
        let mut spec = SweepSpec::new(Source::Labeled(4), grid());
        spec.jobs = Some(1);
        let one = sweep(&spec).unwrap().to_jsonl();
        spec.jobs = Some(4);
        let four = sweep(&spec).unwrap().to_jsonl();
        assert_eq!(one, four);
    }

    #[test]
    fn full_verbosity_emits_events() {
        let mut spec = SweepSpec::new(Source::Labeled(3), grid());
        spec.checks = vec![Check::Rayleigh, Check::Lemmas];
        spec.verbosity = Verbosity::Full;
        let report = sweep(&spec).unwrap();
        // 8 graphs: one rayleigh event per (graph, params), one lemmas event
        // per graph.
        assert_eq!(report.events.len(), 8 * 4 + 8);
        assert!(report.events.iter().all(|e| e.ok));
        let jsonl = report.to_jsonl();
        assert_eq!(jsonl.lines().count(), 1 + report.events.len() + 1);
    }

    #[test]
    fn negative_tolerance_flushes_out_equality_cases() {
        // K_2 attains the lower bound exactly, so demanding strict excess
        // manufactures a counterexample record; the empty graph has no edges
        // and stays out of scope.
        let mut spec = SweepSpec::new(Source::Dedup(2), grid()[..1].to_vec());
        spec.checks = vec![Check::Corollary];
        spec.tolerances.corollary = -1e-6;
        let report = sweep(&spec).unwrap();
        assert_eq!(report.exit_code(), 1);
        assert_eq!(report.counterexamples.len(), 1);
        let r = &report.counterexamples[0];
        assert_eq!(r.graph6, "A_");
        assert_eq!(r.check, "corollary");
        assert_eq!(r.part, Some(1));
        assert!((r.lambda - 2.0).abs() < 1e-9);
        assert!((r.bound - 2.0).abs() < 1e-9);
        let parsed: CounterexampleRecord = serde_json::from_str(
            report
                .to_jsonl()
                .lines()
                .find(|l| l.contains("\"counterexample\""))
                .unwrap(),
        )
        .unwrap();
        assert_eq!(&parsed, r);
    }

    #[test]
    fn random_connected_source_delivers_count() {
        let mut spec = SweepSpec::new(
            Source::Random { n: 9, p: 0.3, count: 50, seed: 7 },
            grid()[..1].to_vec(),
        );
        spec.connected_only = true;
        spec.checks = vec![Check::Theorem2, Check::Psd];
        let report = sweep(&spec).unwrap();
        assert_eq!(report.summary.graphs_total, 50);
        assert_eq!(report.summary.skipped_disconnected, 0);
        assert_eq!(report.summary.counterexample_count, 0);
        let again = sweep(&spec).unwrap();
        assert_eq!(report.to_jsonl(), again.to_jsonl());
    }

    #[test]
    fn oversized_graph_counts_budget_skip() {
        // K_28 holds the cycle condition at large k but the Hamiltonicity
        // oracle refuses 28 vertices, so the verdict is skipped, not failed.
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("big.g6");
        let g6 = encode_graph6(&Graph::complete(28).unwrap()).unwrap();
        std::fs::write(&path, format!("{g6}\n")).unwrap();
        let mut spec = SweepSpec::new(Source::File(path), grid()[..1].to_vec());
        spec.checks = vec![Check::Theorem1];
        let report = sweep(&spec).unwrap();
        assert_eq!(report.summary.graphs_total, 1);
        assert!(report.summary.budget_skips > 0);
        assert_eq!(report.summary.counterexample_count, 0);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn empty_grid_and_checks_rejected() {
        let spec = SweepSpec::new(Source::Labeled(3), vec![]);
        assert!(matches!(sweep(&spec), Err(SweepError::EmptyGrid)));
        let mut spec = SweepSpec::new(Source::Labeled(3), grid());
        spec.checks.clear();
        assert!(matches!(sweep(&spec), Err(SweepError::EmptyChecks)));
    }

    #[test]
    fn missing_file_is_reported() {
        let spec = SweepSpec::new(Source::File(PathBuf::from("/nonexistent/x.g6")), grid());
        assert!(matches!(sweep(&spec), Err(SweepError::Io { .. })));
    }

    #[test]
    fn inflated_tolerance_reaches_exception_counter() {
        // No admissible weights let K_{2,3} attain the k=2 cycle bound
        // (that would need the AM-GM inequality reversed), so the counter
        // is only reachable by inflating the condition tolerance.
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kk1.g6");
        std::fs::write(&path, "D]o\n").unwrap();
        let mut spec = SweepSpec::new(Source::File(path), grid()[..1].to_vec());
        spec.checks = vec![Check::Theorem1];
        spec.tolerances.condition = 0.05;
        let report = sweep(&spec).unwrap();
        let c = &report.summary.checks["theorem1"];
        assert_eq!(c.conditions_evaluated, 2);
        assert_eq!(c.exceptional, 1);
        assert_eq!(c.certified, 0);
        assert_eq!(report.summary.counterexample_count, 0);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn jsonl_shape() {
        let mut spec = SweepSpec::new(Source::Dedup(3), grid()[..2].to_vec());
        spec.checks = vec![Check::Rayleigh];
        let report = sweep(&spec).unwrap();
        let jsonl = report.to_jsonl();
        let lines: Vec<&str> = jsonl.lines().collect();
        assert_eq!(lines.len(), 2);
        let config: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(config["record"], "config");
        assert_eq!(config["source"], "dedup:3");
        assert_eq!(config["alphas"], serde_json::json!(["1", "2"]));
        let summary: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(summary["record"], "summary");
        assert_eq!(summary["graphs_total"], 4);
        assert!(summary.get("wall").is_none());
    }
}
