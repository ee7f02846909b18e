//! The acceptance gate. Each test asserts one criterion end to end and
//! prints a single line with the measured numbers. The exhaustive labeled
//! corpus up to 7 vertices is swept once and shared by the criteria that
//! read different checks off the same pass.

mod common;

use std::sync::OnceLock;

use hamspec::certify::{certify_all, corollary_bounds};
use hamspec::enumerate::{dedup_isomorphs, labeled_count};
use hamspec::graph::Graph;
use hamspec::graph6::{encode_graph6, parse_graph6};
use hamspec::oracles::{
    independence_number, invariant_bundle, is_hamiltonian, is_traceable, vertex_connectivity,
};
use hamspec::rng::SplitMix64;
use hamspec::spectral::{
    build_matrix, eigenvalues, parse_rational, quadratic_form, quadratic_form_direct,
    SpectralParams,
};
use hamspec::sweep::{default_param_grid, sweep, Check, Source, SweepReport, SweepSpec};

static CORPUS_PASS: OnceLock<Vec<SweepReport>> = OnceLock::new();

/// One sweep per order 1..=7 with every spectral check the corpus criteria
/// need; 2,131,019 graphs in total.
fn corpus_reports() -> &'static [SweepReport] {
    CORPUS_PASS.get_or_init(|| {
        (1..=7)
            .map(|n| {
                let mut spec = SweepSpec::new(Source::Labeled(n), default_param_grid());
                spec.checks = vec![
                    Check::Theorem1,
                    Check::Corollary,
                    Check::Rayleigh,
                    Check::Psd,
                    Check::Lemmas,
                ];
                sweep(&spec).expect("labeled corpus sweep runs")
            })
            .collect()
    })
}

fn pass(line: &str) {
    println!("PASS {line}");
}

#[test]
fn acceptance_01_cycle_condition_sound_on_full_corpus() {
    let reports = corpus_reports();
    let (mut graphs, mut conditions, mut certified, mut exceptional) = (0u64, 0u64, 0u64, 0u64);
    for r in &reports[2..] {
        let c = &r.summary.checks["theorem1"];
        assert_eq!(c.counterexamples, 0, "cycle-condition counterexamples in {}", r.config.source);
        graphs += c.graphs_examined;
        conditions += c.conditions_evaluated;
        certified += c.certified;
        exceptional += c.exceptional;
    }
    assert_eq!(graphs, 8 + 64 + 1024 + 32768 + 2097152);
    assert!(certified > 0);
    // The exceptional disjunct needs lambda_1 to attain its bound on
    // K_{k,k+1}, which reduces to the arithmetic-geometric mean inequality
    // holding in reverse; expect zero at any admissible weights.
    pass(&format!(
        "01 cycle condition sound: {graphs} labeled graphs on 3..=7 vertices, \
         {conditions} condition instances, {certified} certified, {exceptional} exceptional, \
         0 counterexamples"
    ));
}

#[test]
fn acceptance_02_path_condition_sound_on_random_connected() {
    let per_cell = 3334usize;
    let (mut graphs, mut conditions, mut certified, mut traceable_only) = (0u64, 0u64, 0u64, 0u64);
    for n in 9..=14usize {
        for (p, tag) in [(0.2, 20u64), (0.35, 35), (0.5, 50), (0.7, 70), (0.9, 90)] {
            let seed = 1000 * n as u64 + tag;
            let mut spec = SweepSpec::new(
                Source::Random { n, p, count: per_cell, seed },
                default_param_grid(),
            );
            spec.checks = vec![Check::Theorem2];
            spec.connected_only = true;
            let report = sweep(&spec).expect("random sweep runs");
            assert_eq!(report.summary.graphs_total, per_cell as u64);
            assert_eq!(report.summary.budget_skips, 0);
            let c = &report.summary.checks["theorem2"];
            assert_eq!(c.counterexamples, 0, "path-condition counterexample at n={n}, p={p}");
            graphs += report.summary.graphs_total;
            conditions += c.conditions_evaluated;
            certified += c.certified;
            traceable_only += report.summary.traceable_only_certifications;
        }
    }
    assert!(graphs >= 100_000);
    pass(&format!(
        "02 path condition sound: {graphs} random connected graphs on 9..=14 vertices, \
         {conditions} condition instances, {certified} certified, 0 counterexamples; \
         {traceable_only} certifications were traceable but not hamiltonian"
    ));
}

#[test]
fn acceptance_03_corollary_bounds_hold() {
    let reports = corpus_reports();
    let mut conditions = 0u64;
    for r in reports {
        let c = &r.summary.checks["corollary"];
        assert_eq!(c.counterexamples, 0, "corollary counterexamples in {}", r.config.source);
        conditions += c.conditions_evaluated;
    }
    // Spot check: the star K_{1,4} at (1,1) has both squared bounds exactly
    // 16, against lambda1 = 5 and lambda_n = 0.
    let star = Graph::complete_bipartite(1, 4).unwrap();
    let p = SpectralParams::from_ints(1, 1).unwrap();
    let b = corollary_bounds(&star, &p).unwrap();
    assert_eq!(b.gamma, 4);
    assert_eq!(b.lower1_sq.to_string(), "16");
    assert_eq!(b.upper_n_sq.to_string(), "16");
    let s = eigenvalues(&build_matrix(&star, &p)).unwrap();
    assert!((s.lambda1 - 5.0).abs() <= 1e-10);
    assert!(s.lambda_n.abs() <= 1e-10);
    pass(&format!(
        "03 corollary bounds hold: {conditions} bound evaluations over the n<=7 corpus, \
         star spot check exact"
    ));
}

#[test]
fn acceptance_04_rayleigh_sandwich_on_full_corpus() {
    let reports = corpus_reports();
    let (mut graphs, mut conditions) = (0u64, 0u64);
    for r in reports {
        let c = &r.summary.checks["rayleigh"];
        assert_eq!(c.counterexamples, 0, "rayleigh counterexamples in {}", r.config.source);
        assert_eq!(c.conditions_evaluated, c.holds);
        graphs += c.graphs_examined;
        conditions += c.conditions_evaluated;
    }
    assert_eq!(graphs, 2_131_019);
    assert_eq!(conditions, graphs * 4 * 2);
    pass(&format!(
        "04 rayleigh sandwich holds: {conditions} two-sided comparisons over {graphs} graphs"
    ));
}

#[test]
fn acceptance_05_psd_and_quadratic_form_identity() {
    let reports = corpus_reports();
    let mut conditions = 0u64;
    for r in reports {
        let c = &r.summary.checks["psd"];
        assert_eq!(c.counterexamples, 0, "psd counterexamples in {}", r.config.source);
        conditions += c.conditions_evaluated;
    }
    // Identity route vs explicit x^T M x on a seeded 1000-graph subsample,
    // 100 vectors each.
    let grid = default_param_grid();
    let mut rng = SplitMix64::new(99);
    let mut vectors_checked = 0u64;
    for i in 0..1000usize {
        let n = 5 + (i % 3);
        let pairs = n * (n - 1) / 2;
        let mask = rng.next_u64() & ((1u64 << pairs) - 1);
        let g = Graph::from_edge_mask(n, mask).unwrap();
        let p = &grid[i % grid.len()];
        let m = build_matrix(&g, p);
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| 2.0 * rng.next_unit() - 1.0).collect();
            let via_identity = quadratic_form(&g, p, &x);
            let direct = quadratic_form_direct(&m, &x);
            assert!(
                (via_identity - direct).abs() <= 1e-12 * (1.0 + direct.abs()),
                "identity {via_identity} vs direct {direct} on mask {mask}, n={n}"
            );
            vectors_checked += 1;
        }
    }
    assert_eq!(vectors_checked, 100_000);
    pass(&format!(
        "05 psd and quadratic form: {conditions} eigenvalue floors, {vectors_checked} identity \
         evaluations within 1e-12"
    ));
}

#[test]
fn acceptance_06_row_sum_identities_exact() {
    let mut conditions = 0u64;
    for n in 1..=6usize {
        let mut spec = SweepSpec::new(Source::Labeled(n), default_param_grid());
        spec.checks = vec![Check::RowSum];
        let r = sweep(&spec).expect("rowsum sweep runs");
        let c = &r.summary.checks["rowsum"];
        assert_eq!(c.counterexamples, 0, "rowsum mismatch at n={n}");
        assert_eq!(c.holds, c.conditions_evaluated);
        conditions += c.conditions_evaluated;
    }
    pass(&format!(
        "06 row-sum identities exact: {conditions} rational comparisons over all graphs on \
         1..=6 vertices"
    ));
}

#[test]
fn acceptance_07_eigensolver_matches_closed_forms() {
    fn assert_spectrum(g: &Graph, p: &SpectralParams, mut expected: Vec<f64>) {
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let s = eigenvalues(&build_matrix(g, p)).unwrap();
        assert_eq!(s.eigenvalues.len(), expected.len());
        for (got, want) in s.eigenvalues.iter().zip(&expected) {
            assert!((got - want).abs() <= 1e-10, "eigenvalue {got} vs closed form {want}");
        }
        assert!(s.residual <= 1e-10);
    }

    let ones = SpectralParams::from_ints(1, 1).unwrap();
    let adjacency = SpectralParams::from_ints(0, 1).unwrap();
    let mut solved = 0u64;

    for n in 2..=12usize {
        let mut expected = vec![2.0 * (n as f64 - 1.0)];
        expected.extend(std::iter::repeat_n(n as f64 - 2.0, n - 1));
        assert_spectrum(&Graph::complete(n).unwrap(), &ones, expected);
        solved += 1;
    }
    for a in 1..=4usize {
        for b in a..=(12 - a) {
            let mut expected = vec![(a + b) as f64, 0.0];
            expected.extend(std::iter::repeat_n(a as f64, b - 1));
            expected.extend(std::iter::repeat_n(b as f64, a - 1));
            assert_spectrum(&Graph::complete_bipartite(a, b).unwrap(), &ones, expected);
            solved += 1;
        }
    }
    for n in 3..=12usize {
        let expected: Vec<f64> = (0..n)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect();
        assert_spectrum(&Graph::cycle(n).unwrap(), &adjacency, expected);
        solved += 1;
    }
    for n in 2..=12usize {
        let expected: Vec<f64> = (1..=n)
            .map(|j| 2.0 * (std::f64::consts::PI * j as f64 / (n as f64 + 1.0)).cos())
            .collect();
        assert_spectrum(&Graph::path(n).unwrap(), &adjacency, expected);
        solved += 1;
    }
    let p3 = Graph::path(3).unwrap();
    let sqrt3 = 3.0f64.sqrt();
    assert_spectrum(
        &p3,
        &SpectralParams::from_ints(2, 1).unwrap(),
        vec![3.0 + sqrt3, 2.0, 3.0 - sqrt3],
    );
    solved += 1;
    pass(&format!("07 eigensolver matches closed forms: {solved} spectra within 1e-10"));
}

#[test]
fn acceptance_08_oracles_match_naive_references() {
    let mut graphs = 0u64;
    for n in 1..=6usize {
        for mask in 0..labeled_count(n) {
            let g = Graph::from_edge_mask(n, mask).unwrap();
            assert_eq!(
                is_hamiltonian(&g).unwrap(),
                common::naive_hamiltonian(&g),
                "hamiltonicity disagrees on n={n}, mask={mask}"
            );
            assert_eq!(
                is_traceable(&g).unwrap(),
                common::naive_traceable(&g),
                "traceability disagrees on n={n}, mask={mask}"
            );
            assert_eq!(
                vertex_connectivity(&g),
                common::naive_connectivity(&g),
                "connectivity disagrees on n={n}, mask={mask}"
            );
            assert_eq!(
                independence_number(&g).0,
                common::naive_independence(&g),
                "independence disagrees on n={n}, mask={mask}"
            );
            graphs += 1;
        }
    }
    let b = invariant_bundle(&Graph::petersen()).unwrap();
    assert!(!b.hamiltonian);
    assert!(b.traceable);
    assert_eq!(b.kappa, 3);
    assert_eq!(b.gamma, 4);
    pass(&format!(
        "08 oracles match naive references on {graphs} graphs, petersen facts confirmed"
    ));
}

#[test]
fn acceptance_09_lemma_audit_clean() {
    let reports = corpus_reports();
    let (mut graphs, mut conditions) = (0u64, 0u64);
    for r in reports {
        let c = &r.summary.checks["lemmas"];
        assert_eq!(c.counterexamples, 0, "lemma failure in {}", r.config.source);
        assert_eq!(r.summary.budget_skips, 0);
        graphs += c.graphs_examined;
        conditions += c.conditions_evaluated;
    }
    assert_eq!(graphs, 2_131_019);
    pass(&format!(
        "09 lemma audit clean: {conditions} applicable lemma instances over {graphs} graphs"
    ));
}

#[test]
fn acceptance_10_codec_round_trip_and_dedup_counts() {
    let mut total = 0u64;
    for n in 1..=7usize {
        for mask in 0..labeled_count(n) {
            let g = Graph::from_edge_mask(n, mask).unwrap();
            let enc = encode_graph6(&g).unwrap();
            let back = parse_graph6(&enc).unwrap();
            assert_eq!(back.n(), n);
            assert_eq!(back.edge_mask(), mask);
            assert_eq!(encode_graph6(&back).unwrap(), enc);
            total += 1;
        }
    }
    for (s, n, e) in [("@", 1, 0), ("Bw", 3, 3), ("Bg", 3, 2)] {
        let g = parse_graph6(s).unwrap();
        assert_eq!((g.n(), g.edge_count()), (n, e));
        assert_eq!(encode_graph6(&g).unwrap(), s);
    }
    let mut class_counts = Vec::new();
    for (n, want) in [(4usize, 11usize), (5, 34), (6, 156), (7, 1044)] {
        let classes = dedup_isomorphs(n).unwrap().len();
        assert_eq!(classes, want, "isomorphism class count at n={n}");
        class_counts.push(classes);
    }
    pass(&format!(
        "10 codec byte-exact on {total} graphs, isomorphism class counts {class_counts:?}"
    ));
}

#[test]
fn acceptance_11_verdicts_scale_covariant() {
    let mut rng = SplitMix64::new(2024);
    let bases = [(1i64, 1i64), (3, 2)];
    let (mut graphs, mut instances) = (0u64, 0u64);
    for i in 0..10_000u64 {
        let n = 4 + (i % 4) as usize;
        let pairs = n * (n - 1) / 2;
        let mask = rng.next_u64() & ((1u64 << pairs) - 1);
        let g = Graph::from_edge_mask(n, mask).unwrap();
        graphs += 1;
        for &(a, b) in &bases {
            let base = SpectralParams::from_ints(a, b).unwrap();
            let reference: Vec<_> = certify_all(&g, &base)
                .unwrap()
                .iter()
                .map(|v| (v.theorem, v.k, v.part, v.holds, v.outcome))
                .collect();
            for (num, den) in [(2i64, 1i64), (1, 3)] {
                let scaled = SpectralParams::new(
                    parse_rational(&format!("{}/{den}", a * num)).unwrap(),
                    parse_rational(&format!("{}/{den}", b * num)).unwrap(),
                )
                .unwrap();
                let got: Vec<_> = certify_all(&g, &scaled)
                    .unwrap()
                    .iter()
                    .map(|v| (v.theorem, v.k, v.part, v.holds, v.outcome))
                    .collect();
                assert_eq!(got, reference, "verdicts changed under scaling on mask {mask}, n={n}");
                instances += got.len() as u64;
            }
        }
    }
    pass(&format!(
        "11 verdicts scale covariant: {graphs} sampled graphs, {instances} rescaled instances \
         unchanged under x2 and x1/3"
    ));
}
