//! Seeded random graphs from a portable generator.
//!
//! The generator is pinned down exactly (not delegated to a crate) so that
//! a seed printed in a report reproduces the same graphs anywhere: splitmix64
//! over a 64-bit state, unit floats from the top 53 bits, one coin flip per
//! vertex pair in column-major upper-triangle order, graphs drawn back to
//! back from one stream. The README states the same contract.

use thiserror::Error;

use crate::graph::Graph;
use crate::oracles::HAMILTON_BUDGET;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("edge probability must satisfy 0 < p < 1, got {0}")]
    BadProbability(f64),
    #[error("random graphs support 1..={HAMILTON_BUDGET} vertices (oracle budget), got {0}")]
    BadOrder(usize),
}

/// splitmix64: Weyl increment 0x9E3779B97F4A7C15, two xor-multiply mixes.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1): the top 53 bits scaled by 2^-53.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// G(n, p) samples: each of the C(n,2) pairs is an edge independently with
/// probability p. Same seed, same stream.
pub fn sample_random(
    n: usize,
    p: f64,
    count: usize,
    seed: u64,
) -> Result<impl Iterator<Item = Graph>, SampleError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(SampleError::BadProbability(p));
    }
    if n == 0 || n > HAMILTON_BUDGET {
        return Err(SampleError::BadOrder(n));
    }
    let mut rng = SplitMix64::new(seed);
    Ok((0..count).map(move |_| {
        let mut g = Graph::new(n).expect("order validated");
        for j in 1..n {
            for i in 0..j {
                if rng.next_unit() < p {
                    g.add_edge(i, j).expect("i < j < n");
                }
            }
        }
        g
    }))
}
