//! Reference oracles built the dumbest way that works, on purpose: the
//! library uses subset DP, branch and bound and max-flow, so these use plain
//! permutation backtracking and exhaustive subset scans. Agreement between
//! the two implementations is the point.

use hamspec::graph::Graph;

fn exists_perm(order: &mut Vec<usize>, k: usize, pred: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == order.len() {
        return pred(order);
    }
    for i in k..order.len() {
        order.swap(k, i);
        if exists_perm(order, k + 1, pred) {
            order.swap(k, i);
            return true;
        }
        order.swap(k, i);
    }
    false
}

pub fn naive_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    // Fix vertex 0 first; a cycle can be rotated to start anywhere.
    let mut order: Vec<usize> = (1..n).collect();
    exists_perm(&mut order, 0, &mut |rest| {
        let mut prev = 0;
        for &v in rest {
            if !g.has_edge(prev, v) {
                return false;
            }
            prev = v;
        }
        g.has_edge(prev, 0)
    })
}

pub fn naive_traceable(g: &Graph) -> bool {
    let n = g.n();
    if n == 1 {
        return true;
    }
    let mut order: Vec<usize> = (0..n).collect();
    exists_perm(&mut order, 0, &mut |path| {
        path.windows(2).all(|w| g.has_edge(w[0], w[1]))
    })
}

pub fn naive_independence(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for mask in 0u64..(1 << n) {
        if (mask.count_ones() as usize) <= best {
            continue;
        }
        let independent =
            (0..n).filter(|&v| mask >> v & 1 == 1).all(|v| g.neighbors(v) & mask == 0);
        if independent {
            best = mask.count_ones() as usize;
        }
    }
    best
}

fn connected_outside(g: &Graph, removed: u64) -> bool {
    let n = g.n();
    let alive = if n == 64 { !removed } else { ((1u64 << n) - 1) & !removed };
    if alive == 0 {
        return true;
    }
    let start = alive.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= g.neighbors(v) & alive;
            }
        }
        next &= !seen;
        seen |= next;
        frontier = next;
    }
    seen == alive
}

pub fn naive_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if !g.is_connected() {
        return 0;
    }
    // Try every candidate cut, smallest first; a cut must leave at least two
    // vertices behind. Complete graphs have none and get n-1 by convention.
    for size in 1..n.saturating_sub(1) {
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize == size && !connected_outside(g, mask) {
                return size;
            }
        }
    }
    n - 1
}
