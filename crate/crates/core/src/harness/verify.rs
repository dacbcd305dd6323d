//! One named verifier per claimed property. A pass is corroboration on
//! the given corpus, not proof; reports say so and embed the tolerances
//! and seeds they ran with.

use super::corpus::{Corpus, CorpusPair};
use super::dominance::{pair_verdict, Engine};
use super::encoding::RpeId;
use crate::encode::SpectralFn;
use crate::error::{Error, Result};
use crate::graph::{block_cut_edge_tree, bridges, tree_isomorphic, FeaturedGraph, Graph};
use crate::refine::{compare, PairTest};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const THEOREM_IDS: [&str; 14] = [
    "T3.5", "T4.2", "T4.4", "T5.3", "C5.4", "T5.7", "T5.8", "T5.9", "P5.10", "P5.11", "T5.13",
    "B-CUT", "B-DIAG", "EX4.5",
];

/// Seed for the deterministic edge orientations the directed-encoding
/// verifier derives from undirected corpus pairs.
const ORIENTATION_SEED: u64 = 0x00d1_5eed;

/// (pair label, verdict pair when both engines ran, failure note).
type PairRow = (String, Option<(bool, bool)>, Option<String>);

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub pair: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremResult {
    pub schema_version: u32,
    pub id: String,
    pub corpus: String,
    pub pass: bool,
    /// Number of (pair, configuration) checks that ran.
    pub checked: usize,
    /// Pairs skipped with the hypothesis they failed.
    pub not_applicable: Vec<String>,
    pub violations: Vec<Violation>,
    pub tolerances: serde_json::Value,
    pub notes: String,
}

impl TheoremResult {
    fn new(id: &str, corpus: &Corpus, tolerances: serde_json::Value, notes: &str) -> Self {
        TheoremResult {
            schema_version: 1,
            id: id.into(),
            corpus: corpus.name.clone(),
            pass: true,
            checked: 0,
            not_applicable: Vec::new(),
            violations: Vec::new(),
            tolerances,
            notes: notes.into(),
        }
    }

    fn finish(mut self) -> Self {
        self.pass = self.violations.is_empty();
        self
    }
}

pub fn verify(theorem_id: &str, corpus: &Corpus) -> Result<TheoremResult> {
    match theorem_id {
        "T3.5" => node_vs_pair_refinement(corpus),
        "T4.2" => ape_to_rpe_roundtrip(corpus),
        "T4.4" => rpe_to_ape_roundtrip(corpus),
        "T5.3" => distance_vs_kernel(corpus),
        "C5.4" => resistance_vs_pinv(corpus),
        "T5.7" => stack_dominates_kernel(corpus, "stack:lap:2n-1", KernelSide::Plain, "T5.7"),
        "T5.8" => stack_dominates_kernel(corpus, "stack:sym_adj:2n-1", KernelSide::Normalized, "T5.8"),
        "T5.9" => stack_dominates_kernel(corpus, "stack:heat:2n-1", KernelSide::Plain, "T5.9"),
        "P5.10" => common_matrices_equal_classical(corpus),
        "P5.11" => directed_stack_dominates_magnetic(corpus),
        "T5.13" => combinatorially_aware_dominates_classical(corpus),
        "B-CUT" => cut_edges_and_trees(corpus),
        "B-DIAG" => diagonal_identity(corpus),
        "EX4.5" => featured_counterexample(corpus),
        other => Err(Error::UnknownName(format!("theorem id '{other}'"))),
    }
}

/// Runs an encoding comparison, mapping failures to "not applicable".
fn try_verdict(
    result: &mut TheoremResult,
    pair: &CorpusPair,
    id: &RpeId,
    engine: Engine,
) -> Option<bool> {
    match pair_verdict(pair, id, engine) {
        Ok(v) => Some(v.distinguishable),
        Err(e) => {
            result
                .not_applicable
                .push(format!("{}: {} under {}: {e}", pair.label, id.name(), engine.name()));
            None
        }
    }
}

/// Node refinement and pair refinement reach the same verdict for
/// symmetric encodings.
fn node_vs_pair_refinement(corpus: &Corpus) -> Result<TheoremResult> {
    let psis = ["adjacency", "spd", "rd", "pinv", "heat:1"];
    let mut result = TheoremResult::new(
        "T3.5",
        corpus,
        serde_json::json!({"quant_step": 1e-9, "pair_cap": crate::refine::PAIR_REFINEMENT_CAP}),
        "node-level and pair-level refinement verdicts agree for symmetric encodings",
    );
    for name in psis {
        let id = RpeId::parse(name)?;
        let rows: Vec<PairRow> = corpus
            .pairs
            .par_iter()
            .map(|pair| {
                let wl = pair_verdict(pair, &id, Engine::PsiWl);
                let wl2 = pair_verdict(pair, &id, Engine::Psi2Wl);
                match (wl, wl2) {
                    (Ok(a), Ok(b)) => {
                        (pair.label.clone(), Some((a.distinguishable, b.distinguishable)), None)
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        (pair.label.clone(), None, Some(format!("{name}: {e}")))
                    }
                }
            })
            .collect();
        for (label, verdicts, na) in rows {
            match verdicts {
                Some((a, b)) => {
                    result.checked += 1;
                    if a != b {
                        result.violations.push(Violation {
                            pair: label,
                            detail: format!(
                                "{name}: node verdict {a} but pair verdict {b}"
                            ),
                        });
                    }
                }
                None => result.not_applicable.push(format!("{label}: {}", na.unwrap())),
            }
        }
    }
    Ok(result.finish())
}

/// Raw APE multiset verdicts coincide with both refinement verdicts of
/// the derived symmetric pair encoding.
fn ape_to_rpe_roundtrip(corpus: &Corpus) -> Result<TheoremResult> {
    let apes = ["degree", "rwse:1-4", "hkdiagse:1,2"];
    let mut result = TheoremResult::new(
        "T4.2",
        corpus,
        serde_json::json!({"quant_step": 1e-9}),
        "raw absolute verdicts equal node and pair refinement verdicts of the derived pair encoding",
    );
    for name in apes {
        let ape_id = super::encoding::ApeId::parse(name)?;
        let rpe_id = RpeId::parse(&format!("pair:{name}"))?;
        for pair in &corpus.pairs {
            let phi_a = match ape_id.compute(&pair.a.graph) {
                Ok(x) => x,
                Err(e) => {
                    result.not_applicable.push(format!("{}: {name}: {e}", pair.label));
                    continue;
                }
            };
            let phi_b = match ape_id.compute(&pair.b.graph) {
                Ok(x) => x,
                Err(e) => {
                    result.not_applicable.push(format!("{}: {name}: {e}", pair.label));
                    continue;
                }
            };
            let raw = compare(&pair.a, &pair.b, PairTest::RawApe(&phi_a, &phi_b))?.distinguishable;
            let Some(wl) = try_verdict(&mut result, pair, &rpe_id, Engine::PsiWl) else {
                continue;
            };
            let Some(wl2) = try_verdict(&mut result, pair, &rpe_id, Engine::Psi2Wl) else {
                continue;
            };
            result.checked += 1;
            if raw != wl || raw != wl2 {
                result.violations.push(Violation {
                    pair: pair.label.clone(),
                    detail: format!("{name}: raw {raw}, node {wl}, pair {wl2}"),
                });
            }
        }
    }
    Ok(result.finish())
}

/// On unfeatured pairs, pair-refinement verdicts equal raw verdicts of
/// the canonical per-node readout.
fn rpe_to_ape_roundtrip(corpus: &Corpus) -> Result<TheoremResult> {
    let psis = ["rd", "spd", "adjacency+diag"];
    let mut result = TheoremResult::new(
        "T4.4",
        corpus,
        serde_json::json!({"quant_step": 1e-9}),
        "on unfeatured pairs the canonical readout preserves pair-refinement verdicts",
    );
    for name in psis {
        let id = RpeId::parse(name)?;
        for pair in &corpus.pairs {
            if pair.a.feature_dim() != 0 || pair.b.feature_dim() != 0 {
                result
                    .not_applicable
                    .push(format!("{}: featured pair excluded by hypothesis", pair.label));
                continue;
            }
            let Some(wl2) = try_verdict(&mut result, pair, &id, Engine::Psi2Wl) else {
                continue;
            };
            let canon = |g: &Graph| -> Result<crate::encode::ApeMatrix> {
                let psi = id.compute(g, g.n())?;
                Ok(crate::pe_map::rpe_to_ape_canonical(g, &psi)?.ape)
            };
            let ca = canon(&pair.a.graph)?;
            let cb = canon(&pair.b.graph)?;
            let raw = compare(&pair.a, &pair.b, PairTest::RawApe(&ca, &cb))?.distinguishable;
            result.checked += 1;
            if raw != wl2 {
                result.violations.push(Violation {
                    pair: pair.label.clone(),
                    detail: format!("{name}: pair refinement {wl2} but canonical readout {raw}"),
                });
            }
        }
    }
    Ok(result.finish())
}

/// Spectral distance dominates its kernel; the diagonally augmented
/// kernel dominates the distance.
fn distance_vs_kernel(corpus: &Corpus) -> Result<TheoremResult> {
    let mut result = TheoremResult::new(
        "T5.3",
        corpus,
        serde_json::json!({"functions": ["recip", "exp1", "exp2", "square"], "quant_step": 1e-9}),
        "checked as implications per pair, both directions",
    );
    for f in SpectralFn::frozen_set() {
        let kernel = RpeId::Kernel(f);
        let dist = RpeId::Distance(f);
        let kernel_diag =
            RpeId::Augmented { base: Box::new(kernel.clone()), kind: crate::encode::AugmentKind::Diagonal };
        for pair in &corpus.pairs {
            let (Some(k), Some(d), Some(kd)) = (
                try_verdict(&mut result, pair, &kernel, Engine::PsiWl),
                try_verdict(&mut result, pair, &dist, Engine::PsiWl),
                try_verdict(&mut result, pair, &kernel_diag, Engine::PsiWl),
            ) else {
                continue;
            };
            result.checked += 1;
            if k && !d {
                result.violations.push(Violation {
                    pair: pair.label.clone(),
                    detail: format!("f={}: kernel separates but distance does not", f.name()),
                });
            }
            if d && !kd {
                result.violations.push(Violation {
                    pair: pair.label.clone(),
                    detail: format!(
                        "f={}: distance separates but diagonally augmented kernel does not",
                        f.name()
                    ),
                });
            }
        }
    }
    Ok(result.finish())
}

/// Resistance refinement and pseudoinverse refinement are equally strong.
fn resistance_vs_pinv(corpus: &Corpus) -> Result<TheoremResult> {
    let mut result = TheoremResult::new(
        "C5.4",
        corpus,
        serde_json::json!({"quant_step": 1e-9}),
        "verdict equality on every pair",
    );
    let rd = RpeId::Resistance;
    let pinv = RpeId::Pinv;
    let rows: Vec<(String, Option<(bool, bool)>)> = corpus
        .pairs
        .par_iter()
        .map(|pair| {
            let a = pair_verdict(pair, &rd, Engine::PsiWl).ok();
            let b = pair_verdict(pair, &pinv, Engine::PsiWl).ok();
            (pair.label.clone(), a.zip(b).map(|(x, y)| (x.distinguishable, y.distinguishable)))
        })
        .collect();
    for (label, verdicts) in rows {
        match verdicts {
            Some((a, b)) => {
                result.checked += 1;
                if a != b {
                    result.violations.push(Violation {
                        pair: label,
                        detail: format!("resistance verdict {a} but pseudoinverse verdict {b}"),
                    });
                }
            }
            None => result.not_applicable.push(format!("{label}: encoding failed")),
        }
    }
    Ok(result.finish())
}

enum KernelSide {
    Plain,
    Normalized,
}

/// A 2n-1-deep matrix stack is at least as strong as every spectral
/// kernel in the frozen function set.
fn stack_dominates_kernel(
    corpus: &Corpus,
    stack_name: &str,
    side: KernelSide,
    id: &str,
) -> Result<TheoremResult> {
    let mut result = TheoremResult::new(
        id,
        corpus,
        serde_json::json!({"functions": ["recip", "exp1", "exp2", "square"], "quant_step": 1e-9}),
        "no pair where the stack fails but the kernel separates",
    );
    let stack = RpeId::parse(stack_name)?;
    for f in SpectralFn::frozen_set() {
        let kernel = match side {
            KernelSide::Plain => RpeId::Kernel(f),
            KernelSide::Normalized => RpeId::NormKernel(f),
        };
        let rows: Vec<(String, Option<(bool, bool)>)> = corpus
            .pairs
            .par_iter()
            .map(|pair| {
                let s = pair_verdict(pair, &stack, Engine::PsiWl).ok();
                let k = pair_verdict(pair, &kernel, Engine::PsiWl).ok();
                (pair.label.clone(), s.zip(k).map(|(x, y)| (x.distinguishable, y.distinguishable)))
            })
            .collect();
        for (label, verdicts) in rows {
            match verdicts {
                Some((s, k)) => {
                    result.checked += 1;
                    if k && !s {
                        result.violations.push(Violation {
                            pair: label,
                            detail: format!(
                                "f={}: kernel separates but {stack_name} does not",
                                f.name()
                            ),
                        });
                    }
                }
                None => result.not_applicable.push(format!("{label}: encoding failed")),
            }
        }
    }
    Ok(result.finish())
}

/// The six common matrices all reproduce the classical refinement
/// verdict.
fn common_matrices_equal_classical(corpus: &Corpus) -> Result<TheoremResult> {
    let names =
        ["adjacency", "sym_adj", "rw_adj", "laplacian", "sym_lap", "rw_lap"];
    let mut result = TheoremResult::new(
        "P5.10",
        corpus,
        serde_json::json!({"quant_step": 1e-9}),
        "each matrix encoding matches the classical verdict on every pair",
    );
    for pair in &corpus.pairs {
        let classical =
            compare(&pair.a, &pair.b, PairTest::Classical)?.distinguishable;
        for name in names {
            let id = RpeId::parse(name)?;
            let Some(v) = try_verdict(&mut result, pair, &id, Engine::PsiWl) else {
                continue;
            };
            result.checked += 1;
            if v != classical {
                result.violations.push(Violation {
                    pair: pair.label.clone(),
                    detail: format!("{name}: verdict {v} but classical {classical}"),
                });
            }
        }
    }
    Ok(result.finish())
}

/// Deterministically orients an undirected pair for the directed
/// verifiers: each edge becomes one arc or both, seeded per pair.
fn orient_pair(pair: &CorpusPair, index: usize) -> Result<Option<(FeaturedGraph, FeaturedGraph)>> {
    use rand::{RngCore, SeedableRng};
    if pair.a.graph.directed() || pair.b.graph.directed() {
        return Ok(Some((pair.a.clone(), pair.b.clone())));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ORIENTATION_SEED ^ index as u64);
    let mut orient = |g: &FeaturedGraph| -> Result<FeaturedGraph> {
        let mut arcs = Vec::new();
        for &(u, v) in g.graph.edges() {
            match rng.next_u64() % 3 {
                0 => arcs.push((u, v)),
                1 => arcs.push((v, u)),
                _ => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
        }
        let dg = Graph::from_edge_list(g.n(), true, &arcs)?;
        Ok(FeaturedGraph::unfeatured(dg))
    };
    let a = orient(&pair.a)?;
    let b = orient(&pair.b)?;
    Ok(Some((a, b)))
}

/// The (D*, A, A^T) stack is at least as strong as the magnetic
/// Laplacian for each tested alpha.
fn directed_stack_dominates_magnetic(corpus: &Corpus) -> Result<TheoremResult> {
    let alphas = [0.25, 1.0 / 3.0];
    let mut result = TheoremResult::new(
        "P5.11",
        corpus,
        serde_json::json!({
            "alphas": alphas,
            "quant_step": 1e-9,
            "orientation_seed": ORIENTATION_SEED,
        }),
        "undirected corpus pairs are oriented with a fixed seed before checking",
    );
    let dstack = RpeId::DirectedStack;
    for (index, pair) in corpus.pairs.iter().enumerate() {
        let Some((a, b)) = orient_pair(pair, index)? else {
            continue;
        };
        let oriented = CorpusPair {
            label: format!("{}@oriented", pair.label),
            provenance: pair.provenance.clone(),
            a,
            b,
        };
        for alpha in alphas {
            let magnetic = RpeId::Magnetic { alpha };
            let (Some(m), Some(s)) = (
                try_verdict(&mut result, &oriented, &magnetic, Engine::PsiWl),
                try_verdict(&mut result, &oriented, &dstack, Engine::PsiWl),
            ) else {
                continue;
            };
            result.checked += 1;
            if m && !s {
                result.violations.push(Violation {
                    pair: oriented.label.clone(),
                    detail: format!(
                        "alpha={alpha}: magnetic encoding separates but (D*,A,A^T) does not"
                    ),
                });
            }
        }
    }
    Ok(result.finish())
}

/// Whether token equality classes of psi are unchanged by combinatorial
/// augmentation on this graph (the awareness characterization).
pub fn combinatorially_aware_on(g: &Graph, id: &RpeId) -> Result<bool> {
    let psi = id.compute(g, g.n())?;
    let aug = crate::encode::augment(&psi, crate::encode::AugmentKind::Combinatorial, g)?;
    let t = psi.tokenize()?;
    let ta = aug.tokenize()?;
    let n = g.n();
    let mut classes: std::collections::HashMap<Vec<u8>, Vec<u8>> = std::collections::HashMap::new();
    for u in 0..n {
        for v in 0..n {
            let key = t.entry_bytes(u, v);
            let aug_key = ta.entry_bytes(u, v);
            match classes.get(&key) {
                Some(existing) if existing != &aug_key => return Ok(false),
                Some(_) => {}
                None => {
                    classes.insert(key, aug_key);
                }
            }
        }
    }
    Ok(true)
}

/// Combinatorially aware encodings dominate classical refinement.
fn combinatorially_aware_dominates_classical(corpus: &Corpus) -> Result<TheoremResult> {
    let names = ["spd", "laplacian", "rd+comb"];
    let mut result = TheoremResult::new(
        "T5.13",
        corpus,
        serde_json::json!({"quant_step": 1e-9}),
        "awareness is checked per graph via the augmentation characterization before the implication",
    );
    for name in names {
        let id = RpeId::parse(name)?;
        for pair in &corpus.pairs {
            let aware = combinatorially_aware_on(&pair.a.graph, &id)?
                && combinatorially_aware_on(&pair.b.graph, &id)?;
            if !aware {
                result.not_applicable.push(format!(
                    "{}: {name} is not combinatorially aware on this pair",
                    pair.label
                ));
                continue;
            }
            let classical = compare(&pair.a, &pair.b, PairTest::Classical)?.distinguishable;
            let Some(v) = try_verdict(&mut result, pair, &id, Engine::PsiWl) else {
                continue;
            };
            result.checked += 1;
            if classical && !v {
                result.violations.push(Violation {
                    pair: pair.label.clone(),
                    detail: format!("{name}: classical separates but {name} does not"),
                });
            }
        }
    }
    Ok(result.finish())
}

/// Edge resistance pins bridges exactly; resistance-indistinguishable
/// connected pairs share their block cut-edge tree.
fn cut_edges_and_trees(corpus: &Corpus) -> Result<TheoremResult> {
    let tol = 1e-9;
    let mut result = TheoremResult::new(
        "B-CUT",
        corpus,
        serde_json::json!({"edge_tolerance": tol}),
        "edge resistance equals 1 exactly on bridges; indistinguishable connected pairs get isomorphic block cut-edge trees",
    );
    let rd_id = RpeId::Resistance;
    for pair in &corpus.pairs {
        for (side, g) in [("a", &pair.a.graph), ("b", &pair.b.graph)] {
            if g.directed() || !g.is_connected() {
                result
                    .not_applicable
                    .push(format!("{}/{side}: not a connected undirected graph", pair.label));
                continue;
            }
            let rd = crate::encode::rpe_resistance(g)?;
            let bridge_set: std::collections::BTreeSet<(usize, usize)> =
                bridges(g)?.into_iter().collect();
            result.checked += 1;
            for &(u, v) in g.edges() {
                let r = rd.value(u, v, 0);
                if r > 1.0 + tol {
                    result.violations.push(Violation {
                        pair: pair.label.clone(),
                        detail: format!("edge ({u},{v}) has resistance {r} > 1"),
                    });
                }
                let is_bridge = bridge_set.contains(&(u.min(v), u.max(v)));
                let is_unit = (r - 1.0).abs() <= tol;
                if is_bridge != is_unit {
                    result.violations.push(Violation {
                        pair: pair.label.clone(),
                        detail: format!(
                            "edge ({u},{v}): resistance {r} but bridge status {is_bridge}"
                        ),
                    });
                }
            }
        }

        let connected = pair.a.graph.is_connected()
            && pair.b.graph.is_connected()
            && !pair.a.graph.directed()
            && !pair.b.graph.directed();
        if !connected {
            continue;
        }
        if let Some(false) = try_verdict(&mut result, pair, &rd_id, Engine::PsiWl) {
            let ta = block_cut_edge_tree(&pair.a.graph)?;
            let tb = block_cut_edge_tree(&pair.b.graph)?;
            result.checked += 1;
            if !tree_isomorphic(&ta, &tb)? {
                result.violations.push(Violation {
                    pair: pair.label.clone(),
                    detail: "resistance-indistinguishable pair with non-isomorphic block cut-edge trees"
                        .into(),
                });
            }
        }
    }
    Ok(result.finish())
}

/// Pseudoinverse diagonal reconstruction from resistance row and grand
/// sums.
fn diagonal_identity(corpus: &Corpus) -> Result<TheoremResult> {
    let tol = 1e-8;
    let mut result = TheoremResult::new(
        "B-DIAG",
        corpus,
        serde_json::json!({"max_abs_error": tol}),
        "pinv(k,k) = mean_i rd(i,k) - grand_sum(rd) / (2 n^2) on connected graphs",
    );
    let mut worst = 0.0f64;
    for pair in &corpus.pairs {
        for (side, g) in [("a", &pair.a.graph), ("b", &pair.b.graph)] {
            if g.directed() || !g.is_connected() || g.n() == 0 {
                result
                    .not_applicable
                    .push(format!("{}/{side}: not a connected undirected graph", pair.label));
                continue;
            }
            let n = g.n();
            let rd = crate::encode::rpe_resistance(g)?;
            let pinv = crate::encode::rpe_pinv_exact(g)?;
            let grand: f64 =
                (0..n).map(|i| (0..n).map(|j| rd.value(i, j, 0)).sum::<f64>()).sum();
            result.checked += 1;
            for k in 0..n {
                let row: f64 = (0..n).map(|i| rd.value(i, k, 0)).sum();
                let reconstructed = row / n as f64 - grand / (2.0 * (n * n) as f64);
                let err = (reconstructed - pinv.value(k, k, 0)).abs();
                worst = worst.max(err);
                if err >= tol {
                    result.violations.push(Violation {
                        pair: pair.label.clone(),
                        detail: format!("vertex {k}: reconstruction error {err:.3e}"),
                    });
                }
            }
        }
    }
    result.tolerances["max_observed_error"] = serde_json::json!(worst);
    Ok(result.finish())
}

/// The featured C4 pair splits under pair refinement but not under the
/// canonical readout with the original features attached.
fn featured_counterexample(corpus: &Corpus) -> Result<TheoremResult> {
    let mut result = TheoremResult::new(
        "EX4.5",
        corpus,
        serde_json::json!({"quant_step": 1e-9}),
        "exact counterexample on the featured C4 pair",
    );
    let pairs: Vec<CorpusPair> = corpus
        .pairs
        .iter()
        .filter(|p| p.label == "featured_c4")
        .cloned()
        .collect();
    let pairs = if pairs.is_empty() {
        let (a, b) = crate::graph::generate(&crate::graph::Family::FeaturedC4Pair)?.into_pair();
        result
            .not_applicable
            .push("corpus lacks the featured_c4 pair; using the generated one".into());
        vec![CorpusPair { label: "featured_c4".into(), provenance: "generated".into(), a, b }]
    } else {
        pairs
    };
    let adjacency = RpeId::parse("adjacency")?;
    for pair in &pairs {
        result.checked += 1;
        let Some(wl2) = try_verdict(&mut result, pair, &adjacency, Engine::Psi2Wl) else {
            continue;
        };
        if !wl2 {
            result.violations.push(Violation {
                pair: pair.label.clone(),
                detail: "pair refinement failed to separate the featured pair".into(),
            });
        }
        let canon = |g: &Graph| -> Result<crate::encode::ApeMatrix> {
            let psi = adjacency.compute(g, g.n())?;
            Ok(crate::pe_map::rpe_to_ape_canonical(g, &psi)?.ape)
        };
        let ca = canon(&pair.a.graph)?;
        let cb = canon(&pair.b.graph)?;
        let raw = compare(&pair.a, &pair.b, PairTest::RawApe(&ca, &cb))?.distinguishable;
        if raw {
            result.violations.push(Violation {
                pair: pair.label.clone(),
                detail: "canonical readout unexpectedly separates the featured pair".into(),
            });
        }
    }
    Ok(result.finish())
}
