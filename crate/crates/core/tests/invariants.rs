//! Cross-module invariants: equivariance of every encoding kind,
//! indistinguishability of feature-isomorphic pairs, and the symmetry
//! contracts of the tensors.

use pewl_core::encode::{ape_compute, ApeKind};
use pewl_core::graph::{apply_permutation, generate, Family, FeaturedGraph, Graph, Permutation};
use pewl_core::harness::RpeId;
use pewl_core::refine::{compare, PairTest};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EQUIVARIANCE_TOL: f64 = 1e-8;

fn random_graph(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize) -> Graph {
    let n = n_min + (rng.next_u64() as usize) % (n_max - n_min + 1);
    let seed = rng.next_u64();
    generate(&Family::Gnp { n, p: 0.5, seed }).unwrap().into_single()
}

fn random_digraph(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize) -> Graph {
    let base = random_graph(rng, n_min, n_max);
    let mut arcs = Vec::new();
    for &(u, v) in base.edges() {
        match rng.next_u64() % 3 {
            0 => arcs.push((u, v)),
            1 => arcs.push((v, u)),
            _ => {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
    }
    Graph::from_edge_list(base.n(), true, &arcs).unwrap()
}

/// Permuting the graph permutes both node axes of the tensor.
fn check_rpe_equivariance(id: &RpeId, directed: bool, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let g = if directed {
            random_digraph(&mut rng, 4, 8)
        } else {
            random_graph(&mut rng, 4, 8)
        };
        let n = g.n();
        let p = Permutation::random(n, &mut rng);
        let permuted = apply_permutation(&FeaturedGraph::unfeatured(g.clone()), &p).unwrap();

        let original = id.compute(&g, n).unwrap();
        let mapped = id.compute(&permuted.graph, n).unwrap();
        assert_eq!(original.channels(), mapped.channels(), "{}: channel drift", id.name());
        for u in 0..n {
            for v in 0..n {
                let a = original.entry(u, v);
                let b = mapped.entry(p.apply(u), p.apply(v));
                for c in 0..original.channels() {
                    assert!(
                        (a[c] - b[c]).abs() <= EQUIVARIANCE_TOL,
                        "{} trial {trial}: entry ({u},{v}) channel {c}: {} vs {}",
                        id.name(),
                        a[c],
                        b[c]
                    );
                }
            }
        }
    }
}

#[test]
fn undirected_rpe_kinds_are_equivariant() {
    for name in [
        "adjacency",
        "sym_adj",
        "rw_adj",
        "laplacian",
        "sym_lap",
        "rw_lap",
        "spd",
        "rd",
        "pinv",
        "kernel:recip",
        "dist:recip",
        "kernel:exp1",
        "nkernel:exp1",
        "heat:1,2",
        "stack:lap:3",
        "stack:sym_adj:3",
        "stack:adj:3",
        "stack:heat:2",
        "rspe:recip0",
        "eigproj",
        "pair:degree",
        "pair:rwse:1,2",
        "rd+diag",
        "spd+comb",
        "laplacian+sym",
    ] {
        check_rpe_equivariance(&RpeId::parse(name).unwrap(), false, 50, 0xE0 + name.len() as u64);
    }
}

#[test]
fn directed_rpe_kinds_are_equivariant() {
    for name in ["magnetic:0.25", "magnetic:0.3333333333333333", "dstack"] {
        check_rpe_equivariance(&RpeId::parse(name).unwrap(), true, 50, 0xD0 + name.len() as u64);
    }
}

#[test]
fn ape_kinds_are_equivariant() {
    let kinds = [
        ApeKind::Degree,
        ApeKind::Rwse(vec![1, 2, 3]),
        ApeKind::HkDiagSe(vec![1, 2]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xA9E);
    for kind in &kinds {
        for trial in 0..50 {
            let g = random_graph(&mut rng, 4, 8);
            let n = g.n();
            let p = Permutation::random(n, &mut rng);
            let permuted = apply_permutation(&FeaturedGraph::unfeatured(g.clone()), &p).unwrap();
            let original = ape_compute(&g, kind).unwrap();
            let mapped = ape_compute(&permuted.graph, kind).unwrap();
            for v in 0..n {
                let a = original.row(v);
                let b = mapped.row(p.apply(v));
                for c in 0..original.dim() {
                    assert!(
                        (a[c] - b[c]).abs() <= EQUIVARIANCE_TOL,
                        "{kind:?} trial {trial}: node {v} channel {c}"
                    );
                }
            }
        }
    }
}

/// The canonical readout is isomorphism-invariant exactly: content
/// addressing makes the permuted graph's tokens identical.
#[test]
fn canonical_readout_is_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCA0);
    let rd = RpeId::parse("rd").unwrap();
    for _ in 0..20 {
        let g = random_graph(&mut rng, 4, 8);
        let n = g.n();
        let p = Permutation::random(n, &mut rng);
        let permuted = apply_permutation(&FeaturedGraph::unfeatured(g.clone()), &p).unwrap();
        let canon_g =
            pewl_core::pe_map::rpe_to_ape_canonical(&g, &rd.compute(&g, n).unwrap()).unwrap();
        let canon_h = pewl_core::pe_map::rpe_to_ape_canonical(
            &permuted.graph,
            &rd.compute(&permuted.graph, n).unwrap(),
        )
        .unwrap();
        for v in 0..n {
            assert_eq!(canon_g.ape.row(v), canon_h.ape.row(p.apply(v)));
        }
    }
}

/// Feature-isomorphic pairs are indistinguishable under every test.
#[test]
fn feature_isomorphic_pairs_never_separate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFAC7);
    let encodings = ["adjacency", "spd", "rd", "heat:1", "pair:degree"];
    for trial in 0..50 {
        let g = random_graph(&mut rng, 4, 8);
        let n = g.n();
        let d = (rng.next_u64() % 3) as usize;
        let feats: Vec<f64> = (0..n * d)
            .map(|_| ((rng.next_u64() % 5) as f64) / 2.0)
            .collect();
        let fg = FeaturedGraph::new(g, d, feats).unwrap();
        let p = Permutation::random(n, &mut rng);
        let ph = apply_permutation(&fg, &p).unwrap();

        assert!(
            !compare(&fg, &ph, PairTest::Classical).unwrap().distinguishable,
            "trial {trial}: classical separated an isomorphic pair"
        );
        for name in encodings {
            let id = RpeId::parse(name).unwrap();
            let (ta, tb) = id.compute_pair(&fg.graph, &ph.graph).unwrap();
            for test in [
                PairTest::RawRpe(&ta, &tb),
                PairTest::PsiWl(&ta, &tb),
                PairTest::Psi2Wl(&ta, &tb),
            ] {
                assert!(
                    !compare(&fg, &ph, test).unwrap().distinguishable,
                    "trial {trial}: {name} separated an isomorphic pair"
                );
            }
        }
        let deg_a = ape_compute(&fg.graph, &ApeKind::Degree).unwrap();
        let deg_b = ape_compute(&ph.graph, &ApeKind::Degree).unwrap();
        assert!(
            !compare(&fg, &ph, PairTest::RawApe(&deg_a, &deg_b)).unwrap().distinguishable,
            "trial {trial}: raw degree separated an isomorphic pair"
        );
    }
}

/// Undirected tensors are symmetric; the magnetic tensor is Hermitian:
/// (re, im)(u,v) = (re, -im)(v,u).
#[test]
fn symmetry_contracts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x515);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 4, 8);
        let n = g.n();
        for name in ["adjacency", "spd", "rd", "pinv", "kernel:exp1", "rspe:recip0", "eigproj"] {
            let t = RpeId::parse(name).unwrap().compute(&g, n).unwrap();
            for u in 0..n {
                for v in 0..n {
                    for c in 0..t.channels() {
                        assert!(
                            (t.value(u, v, c) - t.value(v, u, c)).abs() < 1e-12,
                            "{name} not symmetric at ({u},{v})"
                        );
                    }
                }
            }
        }
        let dg = random_digraph(&mut rng, 4, 8);
        let m = RpeId::parse("magnetic:0.25").unwrap().compute(&dg, dg.n()).unwrap();
        for u in 0..dg.n() {
            for v in 0..dg.n() {
                assert!((m.value(u, v, 0) - m.value(v, u, 0)).abs() < 1e-12);
                assert!((m.value(u, v, 1) + m.value(v, u, 1)).abs() < 1e-12);
            }
        }
    }
}

/// Shortest-path tokens determine edge status: value 1 exactly on edges.
#[test]
fn spd_is_combinatorially_aware() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5bd);
    let spd = RpeId::parse("spd").unwrap();
    for _ in 0..50 {
        let g = random_graph(&mut rng, 4, 9);
        let t = spd.compute(&g, g.n()).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(t.value(u, v, 0) == 1.0, g.has_edge(u, v));
            }
        }
        assert!(pewl_core::harness::combinatorially_aware_on(&g, &spd).unwrap());
    }
}

/// Soft converse probe: for refinement-distinguishable pairs, random
/// transformer weights usually separate the sorted outputs too. The
/// equivalence only guarantees that some transformer exists, not that a
/// random one works, so misses are reported rather than fatal.
#[test]
fn converse_probe_reports_random_weight_separation() {
    use pewl_core::gt::{
        forward_rpe_gt, max_rel_row_diff, sorted_rows, ApeMode, RpeAttentionMaps, RpeMapKind,
        TransformerConfig, WeightInit,
    };
    let cases = [
        (Family::FigAPair, "adjacency"),
        (Family::CutvertexPair, "rd"),
        (Family::FeaturedC4Pair, "adjacency"),
    ];
    for (family, rpe) in cases {
        let (a, b) = generate(&family).unwrap().into_pair();
        let with_unit_features = |g: &FeaturedGraph| {
            if g.feature_dim() == 1 {
                g.clone()
            } else {
                FeaturedGraph::new(g.graph.clone(), 1, vec![1.0; g.n()]).unwrap()
            }
        };
        let fa = with_unit_features(&a);
        let fb = with_unit_features(&b);
        let id = RpeId::parse(rpe).unwrap();
        let (ta, tb) = id.compute_pair(&fa.graph, &fb.graph).unwrap();
        // Confirm the refinement side separates the pair.
        assert!(compare(&fa, &fb, PairTest::PsiWl(&ta, &tb)).unwrap().distinguishable);

        let mut separated = false;
        let mut best_gap = 0.0f64;
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
            let maps = RpeAttentionMaps::seeded(RpeMapKind::GaussianMlp, ta.channels(), seed);
            let oa = forward_rpe_gt(&fa, &ta, &maps, &cfg, WeightInit::Seeded).unwrap();
            let ob = forward_rpe_gt(&fb, &tb, &maps, &cfg, WeightInit::Seeded).unwrap();
            let gap = max_rel_row_diff(&sorted_rows(&oa), &sorted_rows(&ob));
            best_gap = best_gap.max(gap);
            if gap > 1e-4 {
                separated = true;
                break;
            }
        }
        println!(
            "[probe] {family:?} under {rpe}: random weights {} (best gap {best_gap:.2e})",
            if separated { "separated the pair" } else { "missed the pair" }
        );
    }
}

/// Sentinel behavior: disconnected pairs read n for spd and rd, strictly
/// above any finite value.
#[test]
fn sentinel_exceeds_finite_values() {
    let g = Graph::from_edge_list(7, false, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)])
        .unwrap();
    for name in ["spd", "rd"] {
        let t = RpeId::parse(name).unwrap().compute(&g, 7).unwrap();
        let mut max_finite = 0.0f64;
        for u in 0..7 {
            for v in 0..7 {
                let x = t.value(u, v, 0);
                if x != 7.0 {
                    max_finite = max_finite.max(x);
                }
            }
        }
        assert_eq!(t.value(0, 3, 0), 7.0, "{name} sentinel");
        assert!(max_finite < 7.0);
    }
}
