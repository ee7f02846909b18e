//! Exhaustive corpora of small graphs: every labeled graph on n vertices,
//! and one canonical representative per isomorphism class.

use thiserror::Error;

use crate::graph::{pair_index, Graph};

/// Labeled enumeration works on edge masks, so C(n,2) must fit 64 bits
/// and the mask count 2^C(n,2) must stay enumerable. n <= 11 keeps the
/// masks valid; callers wanting full sweeps should stay at n <= 7.
pub const MAX_ENUM_VERTICES: usize = 11;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("enumeration supports 1..={MAX_ENUM_VERTICES} vertices, got {0}")]
    TooLarge(usize),
}

/// Number of labeled graphs on `n` vertices: 2^C(n,2).
pub fn labeled_count(n: usize) -> u64 {
    1 << (n * (n - 1) / 2)
}

/// All labeled graphs on `n` vertices in increasing edge-mask order.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>, CorpusError> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(CorpusError::TooLarge(n));
    }
    Ok((0..labeled_count(n)).map(move |mask| {
        Graph::from_edge_mask(n, mask).expect("mask within range for n")
    }))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

fn apply_perm(n: usize, mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> t & 1 == 1 {
                let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                out |= 1 << pair_index(a, b);
            }
            t += 1;
        }
    }
    out
}

/// Lexicographically smallest edge mask over all relabelings.
pub fn canonical_form(g: &Graph) -> Result<u64, CorpusError> {
    let n = g.n();
    if n > MAX_ENUM_VERTICES {
        return Err(CorpusError::TooLarge(n));
    }
    let mask = g.edge_mask();
    Ok(permutations(n)
        .iter()
        .map(|perm| apply_perm(n, mask, perm))
        .min()
        .expect("at least the identity"))
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// each in canonical (minimum edge mask) form, in increasing mask order.
///
/// Walks all masks once; when a mask has not been seen, its whole orbit is
/// marked in one scan over the relabelings, so the permutation work is per
/// class rather than per graph.
pub fn dedup_isomorphs(n: usize) -> Result<Vec<Graph>, CorpusError> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(CorpusError::TooLarge(n));
    }
    let count = labeled_count(n);
    let perms = permutations(n);
    let mut seen = vec![0u64; (count as usize).div_ceil(64)];
    let mut reps = Vec::new();
    for mask in 0..count {
        if seen[(mask / 64) as usize] >> (mask % 64) & 1 == 1 {
            continue;
        }
        let mut canonical = mask;
        for perm in &perms {
            let image = apply_perm(n, mask, perm);
            seen[(image / 64) as usize] |= 1 << (image % 64);
            canonical = canonical.min(image);
        }
        debug_assert_eq!(canonical, mask, "first unseen mask of an orbit is its minimum");
        reps.push(Graph::from_edge_mask(n, mask).expect("mask within range"));
    }
    Ok(reps)
}
