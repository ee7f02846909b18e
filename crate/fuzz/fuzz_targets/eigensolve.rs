#![no_main]

use hamspec::graph::Graph;
use hamspec::spectral::{build_matrix, eigenvalues, SpectralParams};
use libfuzzer_sys::fuzz_target;

// Decodes (order, edge mask, weights) from the input and checks the solver
// invariants that hold for every graph: sorted output, trace identity,
// small residual, and the eigenvalue floor when the weights admit the
// quadratic-form argument.
fuzz_target!(|data: &[u8]| {
    if data.len() < 11 {
        return;
    }
    let n = 1 + (data[0] as usize) % 11;
    let mut mask = 0u64;
    for (i, b) in data[1..9].iter().enumerate() {
        mask |= (*b as u64) << (8 * i);
    }
    let pairs = n * (n - 1) / 2;
    if pairs < 64 {
        mask &= (1u64 << pairs) - 1;
    }
    let g = Graph::from_edge_mask(n, mask).expect("order in range");
    let beta = 1 + (data[9] % 7) as i64;
    let alpha = beta + (data[10] % 7) as i64;
    let p = SpectralParams::from_ints(alpha, beta).expect("positive weights");

    let s = eigenvalues(&build_matrix(&g, &p)).expect("solver converges");
    assert_eq!(s.eigenvalues.len(), n);
    for w in s.eigenvalues.windows(2) {
        assert!(w[0] >= w[1], "eigenvalues not sorted: {:?}", s.eigenvalues);
    }
    let trace = alpha as f64 * 2.0 * g.edge_count() as f64;
    let sum: f64 = s.eigenvalues.iter().sum();
    assert!(
        (sum - trace).abs() <= 1e-8 * (1.0 + trace.abs()),
        "eigenvalue sum {sum} drifted from trace {trace}"
    );
    assert!(s.residual <= 1e-8 * (1.0 + s.lambda1.abs()), "residual {} too large", s.residual);
    if p.certifiable() {
        let floor = -1e-8 * (1.0 + s.lambda1.abs());
        assert!(s.lambda_n >= floor, "lambda_n {} below psd floor {floor}", s.lambda_n);
    }
});
