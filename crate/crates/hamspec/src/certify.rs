//! The sufficient conditions themselves: two theorems (spanning cycle,
//! spanning path) with eigenvalue tests on both ends of the spectrum, and
//! a corollary pair of unconditional eigenvalue bounds.
//!
//! Conditions are compared in squared form against exact rational
//! right-hand sides: both sides are nonnegative whenever alpha >= beta > 0
//! (the matrix is positive semidefinite), and squaring avoids square-root
//! rounding exactly where it matters, since the equality cases are attained.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::graph::{degree_profile, recognize_complete_bipartite, Graph};
use crate::oracles::{independence_number, is_hamiltonian, vertex_connectivity};
use crate::spectral::{
    build_matrix, eigenvalues, rational_to_f64, EigenError, SpectralParams, SpectrumSummary,
};

/// Relative tolerance on squared-condition comparisons.
pub const CONDITION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    T1,
    T2,
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TheoremId::T1 => write!(f, "T1"),
            TheoremId::T2 => write!(f, "T2"),
        }
    }
}

/// Part 1 bounds lambda_1 from above; part 2 bounds lambda_n from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    One,
    Two,
}

impl std::fmt::Display for Part {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Part::One => write!(f, "1"),
            Part::Two => write!(f, "2"),
        }
    }
}

/// Declared strongest-first so the derived order picks winners directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    CertifiedHamiltonian,
    CertifiedTraceable,
    /// The condition holds but the graph is the theorem's stated exception.
    ExceptionalCompleteBipartite,
    Inconclusive,
    PreconditionFailed,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Outcome::CertifiedHamiltonian => "certified-hamiltonian",
            Outcome::CertifiedTraceable => "certified-traceable",
            Outcome::ExceptionalCompleteBipartite => "exceptional-complete-bipartite",
            Outcome::Inconclusive => "inconclusive",
            Outcome::PreconditionFailed => "precondition-failed",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreconditionFailure {
    /// The conditions require alpha >= beta > 0.
    ParamsNotCertifiable,
    OrderTooSmall { n: usize, required: usize },
    KBelowMinimum { k: usize, minimum: usize },
    /// The bound divides by n-k-1 (resp. n-k-2), which must be positive.
    KTooLargeForOrder { k: usize, n: usize },
    KExceedsConnectivity { k: usize, kappa: usize },
    /// The corollary needs at least one edge.
    NoEdges,
}

impl std::fmt::Display for PreconditionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PreconditionFailure::ParamsNotCertifiable => {
                write!(f, "parameters must satisfy alpha >= beta > 0")
            }
            PreconditionFailure::OrderTooSmall { n, required } => {
                write!(f, "graph has {n} vertices, condition requires at least {required}")
            }
            PreconditionFailure::KBelowMinimum { k, minimum } => {
                write!(f, "k = {k} is below the condition's minimum {minimum}")
            }
            PreconditionFailure::KTooLargeForOrder { k, n } => {
                write!(f, "k = {k} leaves no slack on {n} vertices (bound undefined)")
            }
            PreconditionFailure::KExceedsConnectivity { k, kappa } => {
                write!(f, "k = {k} exceeds the vertex connectivity {kappa}")
            }
            PreconditionFailure::NoEdges => write!(f, "graph has no edges"),
        }
    }
}

/// Exact right-hand sides of one (theorem, k) instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTerms {
    /// (k+1) d_min^2 + e^2/(n-k-1), with k+2 and n-k-2 for the path theorem.
    pub m_bound: BigRational,
    /// e^2/(k+1) + (n-k-1) d_max^2, same substitution for the path theorem.
    pub n_bound: BigRational,
    /// (a+b)^2 * m_bound / n: squared RHS for part 1.
    pub rhs_sq_1: BigRational,
    /// (a+b)^2 * n_bound / n: squared RHS for part 2.
    pub rhs_sq_2: BigRational,
}

/// `k_plus` is k+1 for the cycle theorem and k+2 for the path theorem;
/// `n - k_plus` must be at least 1.
pub fn bound_terms(
    n: usize,
    e: usize,
    delta: usize,
    big_delta: usize,
    k_plus: usize,
    p: &SpectralParams,
) -> BoundTerms {
    debug_assert!(n > k_plus);
    let int = |x: usize| BigInt::from(x);
    let rat = |num: BigInt, den: BigInt| BigRational::new(num, den);
    let rem = n - k_plus;
    let e_sq = int(e) * int(e);
    let m_bound = BigRational::from_integer(int(k_plus) * int(delta) * int(delta))
        + rat(e_sq.clone(), int(rem));
    let n_bound = rat(e_sq, int(k_plus))
        + BigRational::from_integer(int(rem) * int(big_delta) * int(big_delta));
    let ab = p.alpha() + p.beta();
    let ab_sq = &ab * &ab;
    let n_rat = BigRational::from_integer(int(n));
    BoundTerms {
        rhs_sq_1: &ab_sq * &m_bound / &n_rat,
        rhs_sq_2: &ab_sq * &n_bound / &n_rat,
        m_bound,
        n_bound,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub part: Part,
    pub k: usize,
    /// Condition satisfied within tolerance (squared comparison).
    pub holds: bool,
    pub outcome: Outcome,
    /// The eigenvalue the condition constrains: lambda_1 for part 1,
    /// lambda_n for part 2. NaN when preconditions failed.
    pub lambda: f64,
    /// Square root of the exact squared right-hand side. NaN when
    /// preconditions failed.
    pub bound: f64,
    /// Signed slack in the eigenvalue comparison; nonnegative when the
    /// condition holds cleanly.
    pub margin: f64,
    pub reason: Option<PreconditionFailure>,
    /// Path-theorem verdicts that hold record whether the graph is in fact
    /// Hamiltonian, the stronger reading of the theorem's printed claim.
    /// None when unevaluated (condition did not hold, or oracle budget).
    pub hamiltonian_also_held: Option<bool>,
}

impl Verdict {
    fn precondition_failed(theorem: TheoremId, part: Part, k: usize, why: PreconditionFailure) -> Verdict {
        Verdict {
            theorem,
            part,
            k,
            holds: false,
            outcome: Outcome::PreconditionFailed,
            lambda: f64::NAN,
            bound: f64::NAN,
            margin: f64::NAN,
            reason: Some(why),
            hamiltonian_also_held: None,
        }
    }

    /// Sort key implementing "strongest outcome, then smallest k, cycle
    /// theorem first, part 1 first".
    fn rank(&self) -> (Outcome, usize, TheoremId, Part) {
        (self.outcome, self.k, self.theorem, self.part)
    }
}

/// Evaluates one condition instance from precomputed connectivity and
/// spectrum. Pure arithmetic: no oracle calls, no eigensolves, so scans
/// over k can share both.
pub fn evaluate_condition(
    theorem: TheoremId,
    part: Part,
    g: &Graph,
    p: &SpectralParams,
    k: usize,
    kappa: usize,
    spectrum: &SpectrumSummary,
) -> Verdict {
    evaluate_condition_with_tol(theorem, part, g, p, k, kappa, spectrum, CONDITION_TOL)
}

/// Same comparison with an explicit relative tolerance; sweeps route their
/// override through here.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_condition_with_tol(
    theorem: TheoremId,
    part: Part,
    g: &Graph,
    p: &SpectralParams,
    k: usize,
    kappa: usize,
    spectrum: &SpectrumSummary,
    tol_rel: f64,
) -> Verdict {
    let n = g.n();
    let fail = |why| Verdict::precondition_failed(theorem, part, k, why);
    if !p.certifiable() {
        return fail(PreconditionFailure::ParamsNotCertifiable);
    }
    let (min_n, min_k, gap) = match theorem {
        TheoremId::T1 => (3, 2, 1),
        TheoremId::T2 => (9, 1, 2),
    };
    if n < min_n {
        return fail(PreconditionFailure::OrderTooSmall { n, required: min_n });
    }
    if k < min_k {
        return fail(PreconditionFailure::KBelowMinimum { k, minimum: min_k });
    }
    if k + gap + 1 > n {
        return fail(PreconditionFailure::KTooLargeForOrder { k, n });
    }
    if k > kappa {
        return fail(PreconditionFailure::KExceedsConnectivity { k, kappa });
    }

    let prof = degree_profile(g);
    let terms = bound_terms(n, prof.edge_count, prof.min_degree, prof.max_degree, k + gap, p);
    let rhs_sq = match part {
        Part::One => &terms.rhs_sq_1,
        Part::Two => &terms.rhs_sq_2,
    };
    let rhs_sq_f = rational_to_f64(rhs_sq);
    let tol = tol_rel * (1.0 + rhs_sq_f);
    let (lambda, holds) = match part {
        Part::One => {
            let l1 = spectrum.lambda1;
            (l1, l1 * l1 <= rhs_sq_f + tol)
        }
        Part::Two => {
            let ln = spectrum.lambda_n;
            (ln, ln >= 0.0 && ln * ln >= rhs_sq_f - tol)
        }
    };
    let bound = rhs_sq_f.sqrt();
    let margin = match part {
        Part::One => bound - lambda,
        Part::Two => lambda - bound,
    };
    let outcome = if !holds {
        Outcome::Inconclusive
    } else {
        let exception = recognize_complete_bipartite(g) == Some((k, k + gap));
        match (exception, theorem) {
            (true, _) => Outcome::ExceptionalCompleteBipartite,
            (false, TheoremId::T1) => Outcome::CertifiedHamiltonian,
            (false, TheoremId::T2) => Outcome::CertifiedTraceable,
        }
    };
    Verdict {
        theorem,
        part,
        k,
        holds,
        outcome,
        lambda,
        bound,
        margin,
        reason: None,
        hamiltonian_also_held: None,
    }
}

fn condition_with_fresh_context(
    theorem: TheoremId,
    g: &Graph,
    p: &SpectralParams,
    k: usize,
    part: Part,
) -> Result<Verdict, EigenError> {
    let spectrum = eigenvalues(&build_matrix(g, p))?;
    let kappa = vertex_connectivity(g);
    let mut v = evaluate_condition(theorem, part, g, p, k, kappa, &spectrum);
    if theorem == TheoremId::T2 && v.holds {
        v.hamiltonian_also_held = is_hamiltonian(g).ok();
    }
    Ok(v)
}

/// The cycle theorem at one (k, part).
pub fn theorem1_condition(
    g: &Graph,
    p: &SpectralParams,
    k: usize,
    part: Part,
) -> Result<Verdict, EigenError> {
    condition_with_fresh_context(TheoremId::T1, g, p, k, part)
}

/// The path theorem at one (k, part).
pub fn theorem2_condition(
    g: &Graph,
    p: &SpectralParams,
    k: usize,
    part: Part,
) -> Result<Verdict, EigenError> {
    condition_with_fresh_context(TheoremId::T2, g, p, k, part)
}

/// Admissible k values to scan for the cycle theorem; when none are
/// admissible the minimum k is still evaluated so the reported verdict
/// carries the precondition diagnosis.
pub fn theorem1_k_values(kappa: usize, n: usize) -> Vec<usize> {
    let hi = kappa.min(n.saturating_sub(2));
    if hi >= 2 {
        (2..=hi).collect()
    } else {
        vec![2]
    }
}

pub fn theorem2_k_values(kappa: usize, n: usize) -> Vec<usize> {
    let hi = kappa.min(n.saturating_sub(3));
    if hi >= 1 {
        (1..=hi).collect()
    } else {
        vec![1]
    }
}

/// Every condition instance the scan evaluates, in scan order (cycle
/// theorem first, then k ascending, part 1 before part 2). No oracle
/// calls beyond the provided connectivity.
pub fn scan_verdicts(
    g: &Graph,
    p: &SpectralParams,
    kappa: usize,
    spectrum: &SpectrumSummary,
) -> Vec<Verdict> {
    let n = g.n();
    let mut out = Vec::new();
    for k in theorem1_k_values(kappa, n) {
        for part in [Part::One, Part::Two] {
            out.push(evaluate_condition(TheoremId::T1, part, g, p, k, kappa, spectrum));
        }
    }
    for k in theorem2_k_values(kappa, n) {
        for part in [Part::One, Part::Two] {
            out.push(evaluate_condition(TheoremId::T2, part, g, p, k, kappa, spectrum));
        }
    }
    out
}

/// Full scan with the path-theorem oracle flag filled in.
pub fn certify_all(g: &Graph, p: &SpectralParams) -> Result<Vec<Verdict>, EigenError> {
    let spectrum = eigenvalues(&build_matrix(g, p))?;
    let kappa = vertex_connectivity(g);
    let mut verdicts = scan_verdicts(g, p, kappa, &spectrum);
    if verdicts.iter().any(|v| v.theorem == TheoremId::T2 && v.holds) {
        let ham = is_hamiltonian(g).ok();
        for v in &mut verdicts {
            if v.theorem == TheoremId::T2 && v.holds {
                v.hamiltonian_also_held = ham;
            }
        }
    }
    Ok(verdicts)
}

/// Strongest verdict over all admissible (theorem, k, part) instances.
pub fn certify(g: &Graph, p: &SpectralParams) -> Result<Verdict, EigenError> {
    let verdicts = certify_all(g, p)?;
    Ok(verdicts
        .into_iter()
        .min_by_key(Verdict::rank)
        .expect("scan always evaluates at least one instance"))
}

/// The corollary's unconditional bounds: lambda_1 is at least `lower1` and
/// lambda_n is at most `upper_n`, both exact in squared form.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryBounds {
    pub gamma: usize,
    pub lower1_sq: BigRational,
    pub upper_n_sq: BigRational,
    pub lower1: f64,
    pub upper_n: f64,
}

/// Corollary bounds with the independence number supplied by the caller
/// (sweeps cache it per graph).
pub fn corollary_bounds_with_gamma(
    g: &Graph,
    p: &SpectralParams,
    gamma: usize,
) -> Result<CorollaryBounds, PreconditionFailure> {
    if !p.certifiable() {
        return Err(PreconditionFailure::ParamsNotCertifiable);
    }
    let prof = degree_profile(g);
    let n = g.n();
    if prof.edge_count == 0 {
        return Err(PreconditionFailure::NoEdges);
    }
    // An edge keeps one endpoint out of any independent set, so gamma < n.
    debug_assert!(gamma < n);
    let int = |x: usize| BigInt::from(x);
    let e_sq = int(prof.edge_count) * int(prof.edge_count);
    let lower_core = BigRational::from_integer(int(gamma) * int(prof.min_degree) * int(prof.min_degree))
        + BigRational::new(e_sq.clone(), int(n - gamma));
    let upper_core = BigRational::from_integer(
        int(n - gamma) * int(prof.max_degree) * int(prof.max_degree),
    ) + BigRational::new(e_sq, int(gamma));
    let ab = p.alpha() + p.beta();
    let ab_sq = &ab * &ab;
    let n_rat = BigRational::from_integer(int(n));
    let lower1_sq = &ab_sq * lower_core / &n_rat;
    let upper_n_sq = &ab_sq * upper_core / &n_rat;
    Ok(CorollaryBounds {
        gamma,
        lower1: rational_to_f64(&lower1_sq).sqrt(),
        upper_n: rational_to_f64(&upper_n_sq).sqrt(),
        lower1_sq,
        upper_n_sq,
    })
}

pub fn corollary_bounds(g: &Graph, p: &SpectralParams) -> Result<CorollaryBounds, PreconditionFailure> {
    let (gamma, _) = independence_number(g);
    corollary_bounds_with_gamma(g, p, gamma)
}
