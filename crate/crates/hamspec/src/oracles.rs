//! Exact combinatorial ground truth for small graphs: independence number,
//! vertex connectivity, Hamiltonicity, traceability, circumference, and
//! empirical audits of the four cycle/path lemmas the certificates rest on.
//!
//! Everything here is exponential-time by design and guarded by explicit
//! vertex budgets chosen so the worst case stays under seconds per graph.

use thiserror::Error;

use crate::graph::{bipartition, degree_profile, Graph};

/// Cap for the spanning cycle/path DPs.
pub const HAMILTON_BUDGET: usize = 24;
/// Cap for the longest-cycle DP, which anchors every subset.
pub const CIRCUMFERENCE_BUDGET: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{oracle} oracle supports at most {limit} vertices, got {n}")]
pub struct BudgetError {
    pub oracle: &'static str,
    pub n: usize,
    pub limit: usize,
}

/// Size of a maximum independent set, with a deterministic witness: the
/// lexicographically smallest maximum independent set (compare sorted
/// vertex lists, so lower-numbered vertices are preferred), as a bitset.
pub fn independence_number(g: &Graph) -> (usize, u64) {
    let gamma = mis_size(g, g.vertex_mask());
    let mut witness = 0u64;
    let mut need = gamma;
    let mut candidates = g.vertex_mask();
    for v in 0..g.n() {
        if need == 0 {
            break;
        }
        if candidates >> v & 1 == 0 {
            continue;
        }
        let without_v = candidates & !(1 << v);
        let with_v_rest = without_v & !g.neighbors(v);
        if 1 + mis_size(g, with_v_rest) >= need {
            witness |= 1 << v;
            need -= 1;
            candidates = with_v_rest;
        } else {
            candidates = without_v;
        }
    }
    debug_assert_eq!(witness.count_ones() as usize, gamma);
    (gamma, witness)
}

/// Maximum independent set size within the candidate set `p`.
///
/// Branch and bound: candidates with at most one candidate neighbor can be
/// taken greedily (exchange argument); otherwise branch on a candidate of
/// maximum degree.
fn mis_size(g: &Graph, mut p: u64) -> usize {
    let mut taken = 0;
    'reduce: loop {
        if p == 0 {
            return taken;
        }
        let mut q = p;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= q - 1;
            let nbrs = g.neighbors(v) & p;
            if nbrs.count_ones() <= 1 {
                p &= !(1 << v) & !nbrs;
                taken += 1;
                continue 'reduce;
            }
        }
        break;
    }
    let mut v_best = 0;
    let mut d_best = 0;
    let mut q = p;
    while q != 0 {
        let v = q.trailing_zeros() as usize;
        q &= q - 1;
        let d = (g.neighbors(v) & p).count_ones();
        if d > d_best {
            d_best = d;
            v_best = v;
        }
    }
    let without = p & !(1 << v_best);
    let with_rest = without & !g.neighbors(v_best);
    taken + (1 + mis_size(g, with_rest)).max(mis_size(g, without))
}

/// Internally vertex-disjoint s-t paths for non-adjacent s, t: unit-capacity
/// max flow on the split network (each vertex becomes an in/out arc of
/// capacity one), stopping once `cutoff` paths are found.
fn local_connectivity(g: &Graph, s: usize, t: usize, cutoff: usize) -> usize {
    let n = g.n();
    let nodes = 2 * n;
    let mut cap = vec![0u8; nodes * nodes];
    for v in 0..n {
        cap[(2 * v) * nodes + 2 * v + 1] = 1;
    }
    for (u, v) in g.edges() {
        cap[(2 * u + 1) * nodes + 2 * v] = 1;
        cap[(2 * v + 1) * nodes + 2 * u] = 1;
    }
    let src = 2 * s + 1;
    let snk = 2 * t;
    let mut flow = 0;
    let mut prev = vec![usize::MAX; nodes];
    let mut queue = Vec::with_capacity(nodes);
    while flow < cutoff {
        prev.fill(usize::MAX);
        prev[src] = src;
        queue.clear();
        queue.push(src);
        let mut head = 0;
        while head < queue.len() && prev[snk] == usize::MAX {
            let a = queue[head];
            head += 1;
            for b in 0..nodes {
                if prev[b] == usize::MAX && cap[a * nodes + b] > 0 {
                    prev[b] = a;
                    queue.push(b);
                }
            }
        }
        if prev[snk] == usize::MAX {
            break;
        }
        let mut b = snk;
        while b != src {
            let a = prev[b];
            cap[a * nodes + b] -= 1;
            cap[b * nodes + a] += 1;
            b = a;
        }
        flow += 1;
    }
    flow
}

/// Vertex connectivity. Complete graphs are (n-1)-connected by convention;
/// otherwise the minimum over non-adjacent pairs of the Menger flow value.
/// Disconnected graphs (and K_1) give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.edge_count() == n * (n - 1) / 2 {
        return n - 1;
    }
    if !g.is_connected() {
        return 0;
    }
    // kappa <= delta for non-complete graphs, so delta seeds the cutoff.
    let mut best = degree_profile(g).min_degree;
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(local_connectivity(g, s, t, best));
            }
        }
    }
    best
}

/// Spanning-cycle test by DP over (visited subset, endpoint) states for
/// paths anchored at vertex 0. No cycle exists on fewer than 3 vertices.
pub fn is_hamiltonian(g: &Graph) -> Result<bool, BudgetError> {
    let n = g.n();
    if n > HAMILTON_BUDGET {
        return Err(BudgetError { oracle: "spanning cycle", n, limit: HAMILTON_BUDGET });
    }
    if n < 3 {
        return Ok(false);
    }
    let full: u32 = ((1u64 << n) - 1) as u32;
    // ends[s] = endpoints v of paths that start at 0 and visit exactly s.
    let mut ends = vec![0u32; 1 << n];
    ends[1] = 1;
    for s in 1..=full {
        if s & 1 == 0 || ends[s as usize] == 0 {
            continue;
        }
        let mut e = ends[s as usize];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = g.neighbors(v) as u32 & !s;
            while ext != 0 {
                let w = ext.trailing_zeros();
                ext &= ext - 1;
                ends[(s | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    Ok(ends[full as usize] & g.neighbors(0) as u32 != 0)
}

/// Spanning-path test: the same DP with every vertex as a possible start.
pub fn is_traceable(g: &Graph) -> Result<bool, BudgetError> {
    let n = g.n();
    if n > HAMILTON_BUDGET {
        return Err(BudgetError { oracle: "spanning path", n, limit: HAMILTON_BUDGET });
    }
    let full: u32 = ((1u64 << n) - 1) as u32;
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for s in 1..=full {
        if ends[s as usize] == 0 {
            continue;
        }
        let mut e = ends[s as usize];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = g.neighbors(v) as u32 & !s;
            while ext != 0 {
                let w = ext.trailing_zeros();
                ext &= ext - 1;
                ends[(s | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    Ok(ends[full as usize] != 0)
}

/// Length of a longest cycle, 0 if the graph is acyclic.
///
/// DP over (subset, endpoint) where each subset's paths are anchored at its
/// minimum vertex; a subset closes into a cycle when some endpoint is
/// adjacent to the anchor.
pub fn circumference(g: &Graph) -> Result<usize, BudgetError> {
    let n = g.n();
    if n > CIRCUMFERENCE_BUDGET {
        return Err(BudgetError { oracle: "longest cycle", n, limit: CIRCUMFERENCE_BUDGET });
    }
    let full: u32 = ((1u64 << n) - 1) as u32;
    let mut ends = vec![0u16; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = 0;
    for s in 1..=full {
        let e0 = ends[s as usize];
        if e0 == 0 {
            continue;
        }
        let anchor = s.trailing_zeros() as usize;
        let size = s.count_ones() as usize;
        if size >= 3 && u64::from(e0) & g.neighbors(anchor) != 0 {
            best = best.max(size);
        }
        // Extensions stay above the anchor so it remains the subset minimum.
        let above = !((1u32 << anchor) - 1) & !(1 << anchor);
        let mut e = e0;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = g.neighbors(v) as u32 & !s & above;
            while ext != 0 {
                let w = ext.trailing_zeros();
                ext &= ext - 1;
                ends[(s | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    Ok(best)
}

/// The graph facts the certificates quantify over, computed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBundle {
    pub n: usize,
    pub e: usize,
    pub delta: usize,
    pub big_delta: usize,
    pub gamma: usize,
    pub gamma_witness: u64,
    pub kappa: usize,
    pub hamiltonian: bool,
    pub traceable: bool,
}

pub fn invariant_bundle(g: &Graph) -> Result<InvariantBundle, BudgetError> {
    let prof = degree_profile(g);
    let (gamma, gamma_witness) = independence_number(g);
    Ok(InvariantBundle {
        n: g.n(),
        e: prof.edge_count,
        delta: prof.min_degree,
        big_delta: prof.max_degree,
        gamma,
        gamma_witness,
        kappa: vertex_connectivity(g),
        hamiltonian: is_hamiltonian(g)?,
        traceable: is_traceable(g)?,
    })
}

/// One lemma's audit: a FAILURE is premise true, conclusion false, on a
/// graph the lemma applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaCheck {
    pub applicable: bool,
    pub premise: bool,
    pub conclusion: bool,
}

impl LemmaCheck {
    pub fn failed(&self) -> bool {
        self.applicable && self.premise && !self.conclusion
    }
}

/// The long-cycle lemma claims circumference >= bound whenever applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma4Check {
    pub applicable: bool,
    pub bound: usize,
    pub circumference: usize,
}

impl Lemma4Check {
    pub fn failed(&self) -> bool {
        self.applicable && self.circumference < self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaAudit {
    /// k-connected, n >= 3, independence number <= k: Hamiltonian.
    pub lemma1: LemmaCheck,
    /// k-connected, independence number <= k+1: traceable.
    pub lemma2: LemmaCheck,
    /// Balanced bipartite on sides of size m >= 2, every non-adjacent cross
    /// pair has degree sum >= m+1: Hamiltonian. (m = 1 is excluded: K_2
    /// satisfies the degree condition vacuously but has no spanning cycle.)
    pub lemma3: LemmaCheck,
    /// 2-connected bipartite, |A| >= |B|, s/t the minimum degrees on A/B:
    /// circumference >= 2 min(|B|, s+t-1, 2s-2). Audited only up to the
    /// circumference budget; larger graphs are reported inapplicable rather
    /// than failing the whole audit.
    pub lemma4: Lemma4Check,
}

impl LemmaAudit {
    pub fn failed(&self) -> bool {
        self.lemma1.failed() || self.lemma2.failed() || self.lemma3.failed() || self.lemma4.failed()
    }
}

pub fn lemma_audit(g: &Graph) -> Result<LemmaAudit, BudgetError> {
    let n = g.n();
    let (gamma, _) = independence_number(g);
    let kappa = vertex_connectivity(g);
    let hamiltonian = is_hamiltonian(g)?;
    let traceable = is_traceable(g)?;

    let lemma1 = LemmaCheck { applicable: n >= 3, premise: gamma <= kappa, conclusion: hamiltonian };
    let lemma2 = LemmaCheck { applicable: true, premise: gamma <= kappa + 1, conclusion: traceable };

    let bip = bipartition(g);

    let lemma3 = match &bip {
        Some(b) => {
            let (a, bb) = b.side_sizes();
            if a == bb && a >= 2 {
                let m = a;
                let mut premise = true;
                'pairs: for x in 0..n {
                    if b.side_a >> x & 1 == 0 {
                        continue;
                    }
                    for y in 0..n {
                        if b.side_b >> y & 1 == 0 || g.has_edge(x, y) {
                            continue;
                        }
                        if g.degree(x) + g.degree(y) < m + 1 {
                            premise = false;
                            break 'pairs;
                        }
                    }
                }
                LemmaCheck { applicable: true, premise, conclusion: hamiltonian }
            } else {
                LemmaCheck { applicable: false, premise: false, conclusion: hamiltonian }
            }
        }
        None => LemmaCheck { applicable: false, premise: false, conclusion: hamiltonian },
    };

    let lemma4 = match &bip {
        Some(b) if kappa >= 2 && n <= CIRCUMFERENCE_BUDGET => {
            let (ca, cb) = b.side_sizes();
            // |A| >= |B|; on a tie the side holding vertex 0 (side_a by
            // construction) goes second.
            let (side_a, side_b) = if ca > cb { (b.side_a, b.side_b) } else { (b.side_b, b.side_a) };
            let min_deg = |side: u64| {
                (0..n)
                    .filter(|&v| side >> v & 1 == 1)
                    .map(|v| g.degree(v))
                    .min()
                    .expect("2-connected graphs have nonempty sides")
            };
            let s = min_deg(side_a);
            let t = min_deg(side_b);
            let b_size = side_b.count_ones() as usize;
            let bound = 2 * b_size.min(s + t - 1).min(2 * s - 2);
            Lemma4Check { applicable: true, bound, circumference: circumference(g)? }
        }
        _ => Lemma4Check { applicable: false, bound: 0, circumference: 0 },
    };

    Ok(LemmaAudit { lemma1, lemma2, lemma3, lemma4 })
}
