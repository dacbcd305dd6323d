//! Acceptance suite: one test per claimed behavior, each printing a
//! pass/fail line. Tolerances and corpus seeds are pinned here.

use pewl_core::encode::{rpe_matrix, MatrixKind};
use pewl_core::graph::{apply_permutation, generate, Family, FeaturedGraph, Graph, Permutation};
use pewl_core::gt::{
    forward_ape_gt, forward_rpe_gt, max_rel_row_diff, sorted_rows, ApeMode, RpeAttentionMaps,
    RpeMapKind, TransformerConfig, WeightInit,
};
use pewl_core::harness::{
    build_corpus, csl_experiment, pair_verdict, verify, Corpus, CorpusSpec, Engine, RpeId,
};
use pewl_core::refine::{compare, PairTest};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Frozen corpus seeds; reports embed them.
const SEED_RANDOM_N10: u64 = 1105;
const SEED_RANDOM_N8: u64 = 8108;
const SEED_RANDOM_N12: u64 = 1212;
const SEED_DIAG_N12: u64 = 1213;

fn report(criterion: &str, name: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] {criterion} {name}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion} {name} failed: {detail}");
}

fn filter_max_n(corpus: Corpus, max_n: usize) -> Corpus {
    Corpus {
        name: format!("{} (n<={max_n})", corpus.name),
        pairs: corpus
            .pairs
            .into_iter()
            .filter(|p| p.a.n() <= max_n && p.b.n() <= max_n)
            .collect(),
    }
}

fn merge(name: &str, parts: Vec<Corpus>) -> Corpus {
    Corpus {
        name: name.into(),
        pairs: parts.into_iter().flat_map(|c| c.pairs).collect(),
    }
}

fn standard_plus_random(n_max: usize, count: usize, seed: u64) -> Corpus {
    merge(
        "standard+random",
        vec![
            build_corpus(&CorpusSpec::Standard).unwrap(),
            build_corpus(&CorpusSpec::Random { n_max, count, seed }).unwrap(),
        ],
    )
}

/// Criterion 1: skip-links distinguishability table, single-threaded
/// under 60 seconds: adjacency 0/45, rd 45/45, rspe 45/45,
/// stack(sym_adj,20) 45/45, spd strictly below 45.
#[test]
fn c01_csl_table() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let table = pool.install(|| csl_experiment().unwrap());
    let elapsed = start.elapsed();

    let get = |name: &str| {
        table
            .rows
            .iter()
            .find(|r| r.encoding == name)
            .unwrap_or_else(|| panic!("row {name} missing"))
    };
    let adjacency = get("adjacency");
    let spd = get("spd");
    let rd = get("rd");
    let rspe = get("rspe:recip0");
    let stack = get("stack:sym_adj:20");
    let detail = format!(
        "adjacency {}/45, spd {}/45, rd {}/45, rspe {}/45, stack {}/45 in {:.1?}",
        adjacency.distinguished,
        spd.distinguished,
        rd.distinguished,
        rspe.distinguished,
        stack.distinguished,
        elapsed
    );
    let pass = adjacency.distinguished == 0
        && rd.distinguished == 45
        && rspe.distinguished == 45
        && stack.distinguished == 45
        && spd.distinguished < 45
        && elapsed.as_secs() < 60;
    report("C01", "csl_table", pass, &detail);
}

/// Criterion 2: resistance and pseudoinverse refinements agree on the
/// standard corpus plus 200 random matched pairs with n <= 10.
#[test]
fn c02_resistance_equals_pseudoinverse() {
    let start = Instant::now();
    let corpus = standard_plus_random(10, 200, SEED_RANDOM_N10);
    let result = verify("C5.4", &corpus).unwrap();
    let elapsed = start.elapsed();
    let pass = result.pass && result.checked >= 200 && elapsed.as_secs() < 30;
    report(
        "C02",
        "rd_equals_pinv",
        pass,
        &format!("{} pairs, {} violations in {elapsed:.1?}", result.checked, result.violations.len()),
    );
}

/// Criterion 3: node and pair refinement verdicts agree for adjacency,
/// spd, rd, and heat(1) on all corpus pairs with n <= 8.
#[test]
fn c03_node_vs_pair_refinement() {
    let start = Instant::now();
    let corpus = filter_max_n(standard_plus_random(8, 100, SEED_RANDOM_N8), 8);
    let result = verify("T3.5", &corpus).unwrap();
    let elapsed = start.elapsed();
    let pass = result.pass && result.checked > 0 && elapsed.as_secs() < 120;
    report(
        "C03",
        "psi_wl_equals_psi_2wl",
        pass,
        &format!("{} checks, {} violations in {elapsed:.1?}", result.checked, result.violations.len()),
    );
}

/// Criterion 4: absolute-to-relative round trips preserve verdicts for
/// degree, rwse(1..4), hkdiagse(1,2) on every corpus pair.
#[test]
fn c04_ape_to_rpe_roundtrip() {
    let corpus = standard_plus_random(8, 100, SEED_RANDOM_N8);
    let result = verify("T4.2", &corpus).unwrap();
    let pass = result.pass && result.checked > 0;
    report(
        "C04",
        "ape_roundtrip",
        pass,
        &format!("{} checks, {} violations", result.checked, result.violations.len()),
    );
}

/// Criterion 5: relative-to-absolute round trips preserve verdicts on
/// unfeatured pairs for rd, spd, adjacency+diag; the featured C4 pair
/// splits under pair refinement but not under the canonical readout.
#[test]
fn c05_rpe_to_ape_roundtrip_and_counterexample() {
    let corpus = standard_plus_random(8, 100, SEED_RANDOM_N8);
    let roundtrip = verify("T4.4", &corpus).unwrap();
    let counterexample = verify("EX4.5", &corpus).unwrap();
    let pass = roundtrip.pass && roundtrip.checked > 0 && counterexample.pass;
    report(
        "C05",
        "canonical_readout",
        pass,
        &format!(
            "{} roundtrip checks ({} violations); counterexample {}",
            roundtrip.checked,
            roundtrip.violations.len(),
            if counterexample.pass { "holds" } else { "broken" }
        ),
    );
}

/// Criterion 6: the six common matrices reproduce the classical verdict
/// on the full corpus.
#[test]
fn c06_common_matrices_equal_classical() {
    let corpus = merge(
        "standard+random+csl",
        vec![
            build_corpus(&CorpusSpec::Standard).unwrap(),
            build_corpus(&CorpusSpec::Random { n_max: 10, count: 100, seed: SEED_RANDOM_N10 })
                .unwrap(),
            build_corpus(&CorpusSpec::Csl).unwrap(),
        ],
    );
    let result = verify("P5.10", &corpus).unwrap();
    let pass = result.pass && result.checked > 0;
    report(
        "C06",
        "common_matrices",
        pass,
        &format!("{} checks, {} violations", result.checked, result.violations.len()),
    );
}

/// Criterion 7: kernel/distance and stack dominance over all n <= 8
/// corpus pairs and the frozen function set.
#[test]
fn c07_spectral_dominance_stack() {
    let corpus = filter_max_n(standard_plus_random(8, 100, SEED_RANDOM_N8), 8);
    let mut all_pass = true;
    let mut details = Vec::new();
    for id in ["T5.3", "T5.7", "T5.8", "T5.9"] {
        let result = verify(id, &corpus).unwrap();
        all_pass &= result.pass && result.checked > 0;
        details.push(format!("{id}: {} checks, {} violations", result.checked, result.violations.len()));
    }
    report("C07", "dominance_stack", all_pass, &details.join("; "));
}

/// Criterion 8: no oriented corpus pair separated by the magnetic
/// encoding (alpha in {1/4, 1/3}) but not by the (D*, A, A^T) stack.
#[test]
fn c08_directed_stack_dominates_magnetic() {
    let corpus = standard_plus_random(8, 100, SEED_RANDOM_N8);
    let result = verify("P5.11", &corpus).unwrap();
    let pass = result.pass && result.checked > 0;
    report(
        "C08",
        "magnetic_dominance",
        pass,
        &format!("{} checks, {} violations", result.checked, result.violations.len()),
    );
}

/// Criterion 9: bridge resistance is exactly 1 on 100 random connected
/// graphs with n <= 12, and resistance-indistinguishable connected pairs
/// have isomorphic block cut-edge trees.
#[test]
fn c09_cut_edges_and_block_trees() {
    let corpus = merge(
        "standard+random12",
        vec![
            build_corpus(&CorpusSpec::Standard).unwrap(),
            build_corpus(&CorpusSpec::Random { n_max: 12, count: 50, seed: SEED_RANDOM_N12 })
                .unwrap(),
        ],
    );
    let result = verify("B-CUT", &corpus).unwrap();
    // 50 random pairs = 100 random connected graphs checked edge-by-edge.
    let pass = result.pass && result.checked >= 100;
    report(
        "C09",
        "cut_edges",
        pass,
        &format!("{} checks, {} violations", result.checked, result.violations.len()),
    );
}

/// Criterion 10: pseudoinverse diagonal reconstruction from resistance
/// sums within 1e-8 over 50 random connected graphs with n <= 12.
#[test]
fn c10_diagonal_identity() {
    let corpus = build_corpus(&CorpusSpec::Random { n_max: 12, count: 25, seed: SEED_DIAG_N12 })
        .unwrap();
    let result = verify("B-DIAG", &corpus).unwrap();
    let pass = result.pass && result.checked >= 50;
    report(
        "C10",
        "diag_identity",
        pass,
        &format!(
            "{} graphs, max error {}",
            result.checked,
            result.tolerances["max_observed_error"]
        ),
    );
}

/// Criterion 11: transformer equivariance within 1e-6 relative on 20
/// random triples, exact identity at zero weights, and equal sorted
/// output multisets for refinement-indistinguishable pairs across 10
/// seeds for both transformer kinds.
#[test]
fn c11_transformer_properties() {
    let mut pass = true;
    let mut notes = Vec::new();

    // Equivariance, both kinds, 20 triples.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = 3 + (rng.next_u64() % 5) as usize;
        let seed = rng.next_u64();
        let g = generate(&Family::Gnp { n, p: 0.5, seed }).unwrap().into_single();
        let d = 3usize;
        let feats: Vec<f64> =
            (0..n * d).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64).collect();
        let x = FeaturedGraph::new(g.clone(), d, feats).unwrap();
        let p = Permutation::random(n, &mut rng);
        let px = apply_permutation(&x, &p).unwrap();

        let phi = pewl_core::encode::ape_compute(&g, &pewl_core::encode::ApeKind::Degree).unwrap();
        let p_phi = {
            let mut values = vec![0.0; n];
            for v in 0..n {
                values[p.apply(v)] = phi.row(v)[0];
            }
            pewl_core::encode::ApeMatrix::new(n, 1, values, "degree", 1.0).unwrap()
        };
        let cfg = TransformerConfig {
            layers: 2,
            heads: 2,
            d_model: d + 1,
            d_head: 4,
            d_ff: 8,
            seed,
            ape_mode: ApeMode::Concat,
            rpe_map_kind: RpeMapKind::GaussianMlp,
        };
        let out = forward_ape_gt(&x, &phi, &cfg, WeightInit::Seeded).unwrap();
        let pout = forward_ape_gt(&px, &p_phi, &cfg, WeightInit::Seeded).unwrap();
        for v in 0..n {
            for c in 0..cfg.d_model {
                let scale = out.get(v, c).abs().max(1.0);
                worst = worst.max((out.get(v, c) - pout.get(p.apply(v), c)).abs() / scale);
            }
        }

        let psi = rpe_matrix(&g, MatrixKind::Adjacency).unwrap();
        let p_psi = rpe_matrix(&px.graph, MatrixKind::Adjacency).unwrap();
        let maps = RpeAttentionMaps::seeded(RpeMapKind::GaussianMlp, 1, seed ^ 5);
        let cfg = TransformerConfig { d_model: d, ..cfg };
        let out = forward_rpe_gt(&x, &psi, &maps, &cfg, WeightInit::Seeded).unwrap();
        let pout = forward_rpe_gt(&px, &p_psi, &maps, &cfg, WeightInit::Seeded).unwrap();
        for v in 0..n {
            for c in 0..cfg.d_model {
                let scale = out.get(v, c).abs().max(1.0);
                worst = worst.max((out.get(v, c) - pout.get(p.apply(v), c)).abs() / scale);
            }
        }
    }
    pass &= worst <= 1e-6;
    notes.push(format!("equivariance worst {worst:.2e}"));

    // Exact identity at zero weights.
    let g = generate(&Family::Cycle(5)).unwrap().into_single();
    let x = FeaturedGraph::new(g.clone(), 2, vec![0.5; 10]).unwrap();
    let phi = pewl_core::encode::ape_compute(&g, &pewl_core::encode::ApeKind::Degree).unwrap();
    let cfg = TransformerConfig {
        layers: 3,
        heads: 2,
        d_model: 3,
        d_head: 4,
        d_ff: 8,
        seed: 1,
        ape_mode: ApeMode::Concat,
        rpe_map_kind: RpeMapKind::GaussianMlp,
    };
    let out = forward_ape_gt(&x, &phi, &cfg, WeightInit::Zero).unwrap();
    let mut identity_exact = true;
    for v in 0..5 {
        identity_exact &= out.row(v)[..2] == *x.feature_row(v) && out.row(v)[2] == phi.row(v)[0];
    }
    pass &= identity_exact;
    notes.push(format!("zero-weight identity exact: {identity_exact}"));

    // Indistinguishable pair, equal sorted outputs across 10 seeds.
    let c6 = FeaturedGraph::new(
        generate(&Family::Cycle(6)).unwrap().into_single(),
        1,
        vec![1.0; 6],
    )
    .unwrap();
    let two = FeaturedGraph::new(
        Graph::from_edge_list(6, false, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
            .unwrap(),
        1,
        vec![1.0; 6],
    )
    .unwrap();
    let pa = rpe_matrix(&c6.graph, MatrixKind::Adjacency).unwrap();
    let pb = rpe_matrix(&two.graph, MatrixKind::Adjacency).unwrap();
    let deg_a = pewl_core::encode::ape_compute(&c6.graph, &pewl_core::encode::ApeKind::Degree)
        .unwrap();
    let deg_b = pewl_core::encode::ape_compute(&two.graph, &pewl_core::encode::ApeKind::Degree)
        .unwrap();
    let mut worst_rpe = 0.0f64;
    let mut worst_ape = 0.0f64;
    for seed in 0..10u64 {
        let cfg = TransformerConfig {
            layers: 2,
            heads: 2,
            d_model: 1,
            d_head: 4,
            d_ff: 8,
            seed,
            ape_mode: ApeMode::Concat,
            rpe_map_kind: RpeMapKind::GaussianMlp,
        };
        let maps = RpeAttentionMaps::seeded(RpeMapKind::GaussianMlp, 1, seed);
        let oa = forward_rpe_gt(&c6, &pa, &maps, &cfg, WeightInit::Seeded).unwrap();
        let ob = forward_rpe_gt(&two, &pb, &maps, &cfg, WeightInit::Seeded).unwrap();
        worst_rpe = worst_rpe.max(max_rel_row_diff(&sorted_rows(&oa), &sorted_rows(&ob)));

        let cfg = TransformerConfig { d_model: 2, ..cfg };
        let oa = forward_ape_gt(&c6, &deg_a, &cfg, WeightInit::Seeded).unwrap();
        let ob = forward_ape_gt(&two, &deg_b, &cfg, WeightInit::Seeded).unwrap();
        worst_ape = worst_ape.max(max_rel_row_diff(&sorted_rows(&oa), &sorted_rows(&ob)));
    }
    pass &= worst_rpe <= 1e-6 && worst_ape <= 1e-6;
    notes.push(format!("indistinguishable outputs: rpe {worst_rpe:.2e}, ape {worst_ape:.2e}"));

    report("C11", "transformer_properties", pass, &notes.join("; "));
}

/// Criterion 12: the strongly regular pair stays indistinguishable under
/// classical refinement, spd, rd, and every frozen spectral kernel.
#[test]
fn c12_negative_control_srg() {
    let shrikhande = FeaturedGraph::unfeatured(generate(&Family::Shrikhande).unwrap().into_single());
    let rook = FeaturedGraph::unfeatured(generate(&Family::Rook4x4).unwrap().into_single());
    let pair = pewl_core::harness::CorpusPair {
        label: "shrikhande_vs_rook".into(),
        provenance: "negative control".into(),
        a: shrikhande.clone(),
        b: rook.clone(),
    };

    let mut pass = true;
    let mut notes = Vec::new();

    let classical = compare(&shrikhande, &rook, PairTest::Classical).unwrap();
    pass &= !classical.distinguishable;
    notes.push(format!("classical: {}", !classical.distinguishable));

    for name in [
        "spd",
        "rd",
        "kernel:recip",
        "kernel:exp1",
        "kernel:exp2",
        "kernel:square",
    ] {
        let id = RpeId::parse(name).unwrap();
        let verdict = pair_verdict(&pair, &id, Engine::PsiWl).unwrap();
        pass &= !verdict.distinguishable;
        notes.push(format!("{name}: {}", !verdict.distinguishable));
    }
    report("C12", "srg_negative_control", pass, &notes.join(", "));
}
