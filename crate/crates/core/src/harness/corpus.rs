//! Benchmark corpora: deterministic collections of graph pairs.

use crate::error::{Error, Result};
use crate::graph::{
    apply_permutation, generate, Family, FeaturedGraph, Permutation,
};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::Path;

/// The frozen circular-skip-links parameters: 41 vertices, ten skip
/// classes, forty-five unordered class pairs.
pub const CSL_N: usize = 41;
pub const CSL_SKIPS: [usize; 10] = [2, 3, 4, 5, 6, 9, 11, 12, 13, 16];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusPair {
    pub label: String,
    pub provenance: String,
    pub a: FeaturedGraph,
    pub b: FeaturedGraph,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub pairs: Vec<CorpusPair>,
}

/// Corpus descriptors accepted by the harness and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorpusSpec {
    /// Named counterexample pairs plus permuted-copy controls.
    Standard,
    /// All 45 unordered skip-class pairs of CSL(41).
    Csl,
    /// Connected G(n, 1/2) pairs with matched vertex count and degree
    /// multiset.
    Random { n_max: usize, count: usize, seed: u64 },
    /// Pairs listed in a manifest file: `path_a path_b [label]` per line.
    File(String),
}

impl CorpusSpec {
    /// Parses "standard", "csl", "random(n,count,seed=s)", "file(path)".
    pub fn parse(s: &str) -> Result<CorpusSpec> {
        let s = s.trim();
        match s {
            "standard" => return Ok(CorpusSpec::Standard),
            "csl" => return Ok(CorpusSpec::Csl),
            _ => {}
        }
        if let Some(args) = s.strip_prefix("random(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(Error::UnknownName(format!("corpus spec '{s}'")));
            }
            let n_max: usize = parts[0]
                .parse()
                .map_err(|_| Error::UnknownName(format!("corpus spec '{s}'")))?;
            let count: usize = parts[1]
                .parse()
                .map_err(|_| Error::UnknownName(format!("corpus spec '{s}'")))?;
            let seed_str = parts[2].strip_prefix("seed=").unwrap_or(parts[2]);
            let seed: u64 = seed_str
                .parse()
                .map_err(|_| Error::UnknownName(format!("corpus spec '{s}'")))?;
            return Ok(CorpusSpec::Random { n_max, count, seed });
        }
        if let Some(path) = s.strip_prefix("file(").and_then(|r| r.strip_suffix(')')) {
            return Ok(CorpusSpec::File(path.to_string()));
        }
        Err(Error::UnknownName(format!("corpus spec '{s}'")))
    }
}

pub fn build_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    match spec {
        CorpusSpec::Standard => standard_corpus(),
        CorpusSpec::Csl => csl_corpus(),
        CorpusSpec::Random { n_max, count, seed } => random_corpus(*n_max, *count, *seed),
        CorpusSpec::File(path) => file_corpus(Path::new(path)),
    }
}

fn standard_corpus() -> Result<Corpus> {
    let mut pairs = Vec::new();

    let (a, b) = generate(&Family::FigAPair)?.into_pair();
    pairs.push(CorpusPair {
        label: "fig_a".into(),
        provenance: "4 vertices, 4 edges: cycle vs triangle with pendant".into(),
        a,
        b,
    });

    let (a, b) = generate(&Family::FeaturedC4Pair)?.into_pair();
    pairs.push(CorpusPair {
        label: "featured_c4".into(),
        provenance: "C4 with features [1,2,3,4] vs [1,3,2,4]".into(),
        a,
        b,
    });

    let c6 = generate(&Family::Cycle(6))?.into_single();
    let two_triangles = crate::graph::Graph::from_edge_list(
        6,
        false,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
    )?;
    pairs.push(CorpusPair {
        label: "c6_vs_2c3".into(),
        provenance: "6-cycle vs two disjoint triangles (2-regular pair)".into(),
        a: FeaturedGraph::unfeatured(c6),
        b: FeaturedGraph::unfeatured(two_triangles),
    });

    let shrikhande = generate(&Family::Shrikhande)?.into_single();
    let rook = generate(&Family::Rook4x4)?.into_single();
    pairs.push(CorpusPair {
        label: "shrikhande_vs_rook".into(),
        provenance: "strongly regular (16,6,2,2) pair".into(),
        a: FeaturedGraph::unfeatured(shrikhande),
        b: FeaturedGraph::unfeatured(rook),
    });

    let (a, b) = generate(&Family::CutvertexPair)?.into_pair();
    pairs.push(CorpusPair {
        label: "cutvertex".into(),
        provenance: "smallest pair split by resistance refinement but not distance refinement"
            .into(),
        a,
        b,
    });

    // Permuted-copy controls: feature-isomorphic pairs that every test
    // must call indistinguishable.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let control_sources = [
        ("control_c5", generate(&Family::Cycle(5))?.into_single()),
        ("control_gnp8", generate(&Family::Gnp { n: 8, p: 0.5, seed: 404 })?.into_single()),
        ("control_star4", generate(&Family::Star(4))?.into_single()),
    ];
    for (label, g) in control_sources {
        let fg = FeaturedGraph::unfeatured(g);
        let p = Permutation::random(fg.n(), &mut rng);
        let permuted = apply_permutation(&fg, &p)?;
        pairs.push(CorpusPair {
            label: label.into(),
            provenance: "graph vs seeded permuted copy (isomorphic control)".into(),
            a: fg,
            b: permuted,
        });
    }
    // One featured control.
    let base = generate(&Family::Cycle(6))?.into_single();
    let featured =
        FeaturedGraph::new(base, 1, vec![1.0, 1.0, 2.0, 2.0, 3.0, 3.0])?;
    let p = Permutation::random(6, &mut rng);
    let permuted = apply_permutation(&featured, &p)?;
    pairs.push(CorpusPair {
        label: "control_featured_c6".into(),
        provenance: "featured graph vs seeded permuted copy (feature-isomorphic control)".into(),
        a: featured,
        b: permuted,
    });

    Ok(Corpus { name: "standard".into(), pairs })
}

fn csl_corpus() -> Result<Corpus> {
    let graphs: Vec<(usize, FeaturedGraph)> = CSL_SKIPS
        .iter()
        .map(|&s| {
            Ok((
                s,
                FeaturedGraph::unfeatured(
                    generate(&Family::Csl { n: CSL_N, skip: s })?.into_single(),
                ),
            ))
        })
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            pairs.push(CorpusPair {
                label: format!("csl{}_vs_csl{}", graphs[i].0, graphs[j].0),
                provenance: format!(
                    "circular skip links on {CSL_N} vertices, skips {} and {}",
                    graphs[i].0, graphs[j].0
                ),
                a: graphs[i].1.clone(),
                b: graphs[j].1.clone(),
            });
        }
    }
    Ok(Corpus { name: "csl".into(), pairs })
}

/// Connected G(n, 1/2) pairs with equal vertex count and degree multiset.
/// Unmatched pairs are trivially separable and waste dominance
/// statistics. Graphs are drawn until enough matches accumulate.
fn random_corpus(n_max: usize, count: usize, seed: u64) -> Result<Corpus> {
    if n_max < 4 {
        return Err(Error::InvalidFamily("random corpus needs n_max >= 4".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unpaired: HashMap<(usize, Vec<usize>), FeaturedGraph> = HashMap::new();
    let mut pairs = Vec::new();
    let mut attempts = 0usize;
    let cap = count * 50_000;
    while pairs.len() < count {
        attempts += 1;
        if attempts > cap {
            return Err(Error::InvalidFamily(format!(
                "random corpus did not converge after {attempts} draws"
            )));
        }
        let n = 4 + (rng.next_u64() as usize) % (n_max - 3);
        let g_seed = rng.next_u64();
        let g = generate(&Family::Gnp { n, p: 0.5, seed: g_seed })?.into_single();
        if !g.is_connected() {
            continue;
        }
        let key = (n, g.degree_multiset());
        match unpaired.remove(&key) {
            Some(partner) => {
                pairs.push(CorpusPair {
                    label: format!("random{}", pairs.len()),
                    provenance: format!(
                        "connected G({n}, 1/2) pair with matched degree multiset, seed {seed}"
                    ),
                    a: partner,
                    b: FeaturedGraph::unfeatured(g),
                });
            }
            None => {
                unpaired.insert(key, FeaturedGraph::unfeatured(g));
            }
        }
    }
    Ok(Corpus { name: format!("random({n_max},{count},seed={seed})"), pairs })
}

fn file_corpus(path: &Path) -> Result<Corpus> {
    let text = std::fs::read_to_string(path)?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() < 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: "expected 'path_a path_b [label]'".into(),
            });
        }
        let a = crate::graph::read_edge_list(&dir.join(parts[0]))?;
        let b = crate::graph::read_edge_list(&dir.join(parts[1]))?;
        let label =
            parts.get(2).map(|s| s.to_string()).unwrap_or_else(|| format!("pair{}", idx + 1));
        pairs.push(CorpusPair {
            label,
            provenance: format!("file corpus line {}", idx + 1),
            a,
            b,
        });
    }
    Ok(Corpus { name: format!("file({})", path.display()), pairs })
}
