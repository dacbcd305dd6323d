//! Pairwise distinguishing-power grids over a corpus.

use super::corpus::Corpus;
use super::encoding::RpeId;
use crate::error::Result;
use crate::refine::{compare, PairTest, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Engine {
    PsiWl,
    Psi2Wl,
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::PsiWl => "psi_wl",
            Engine::Psi2Wl => "psi_2wl",
        }
    }

    pub fn parse(s: &str) -> Option<Engine> {
        match s {
            "psi_wl" => Some(Engine::PsiWl),
            "psi_2wl" => Some(Engine::Psi2Wl),
            _ => None,
        }
    }
}

/// Runs one encoding on one pair under the chosen engine.
pub fn pair_verdict(
    pair: &super::corpus::CorpusPair,
    id: &RpeId,
    engine: Engine,
) -> Result<Verdict> {
    let (ta, tb) = id.compute_pair(&pair.a.graph, &pair.b.graph)?;
    match engine {
        Engine::PsiWl => compare(&pair.a, &pair.b, PairTest::PsiWl(&ta, &tb)),
        Engine::Psi2Wl => compare(&pair.a, &pair.b, PairTest::Psi2Wl(&ta, &tb)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DominanceCell {
    pub first: String,
    pub second: String,
    pub both: usize,
    pub neither: usize,
    pub only_first: usize,
    pub only_second: usize,
    /// Labels of pairs the second encoding separates but the first does
    /// not: witnesses against "first is at least as strong as second".
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DominanceReport {
    pub schema_version: u32,
    pub corpus: String,
    pub engine: String,
    pub encodings: Vec<String>,
    pub pair_count: usize,
    /// Per-encoding verdict columns: verdicts[e][p] for pair p.
    pub verdicts: Vec<Vec<bool>>,
    /// Labels of pairs skipped because an encoding failed on them.
    pub skipped: Vec<String>,
    pub flagged: bool,
    pub cells: Vec<DominanceCell>,
    /// Derived edges: (first, second) where only_second == 0, read
    /// "first is at least as strong as second on this corpus".
    pub dominance_edges: Vec<(String, String)>,
}

pub fn dominance_matrix(
    corpus: &Corpus,
    encodings: &[RpeId],
    engine: Engine,
) -> Result<DominanceReport> {
    // Verdict grid, pair-parallel with deterministic ordering.
    let grid: Vec<Vec<Option<bool>>> = corpus
        .pairs
        .par_iter()
        .map(|pair| {
            encodings
                .iter()
                .map(|id| pair_verdict(pair, id, engine).map(|v| v.distinguishable).ok())
                .collect()
        })
        .collect();

    let mut skipped = Vec::new();
    let mut usable = Vec::new();
    for (p, row) in grid.iter().enumerate() {
        if row.iter().all(Option::is_some) {
            usable.push(p);
        } else {
            skipped.push(corpus.pairs[p].label.clone());
        }
    }

    let verdicts: Vec<Vec<bool>> = (0..encodings.len())
        .map(|e| usable.iter().map(|&p| grid[p][e].expect("usable")).collect())
        .collect();

    let mut cells = Vec::new();
    let mut dominance_edges = Vec::new();
    for (i, first) in encodings.iter().enumerate() {
        for (j, second) in encodings.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut cell = DominanceCell {
                first: first.name(),
                second: second.name(),
                both: 0,
                neither: 0,
                only_first: 0,
                only_second: 0,
                counterexamples: Vec::new(),
            };
            for (idx, &p) in usable.iter().enumerate() {
                match (verdicts[i][idx], verdicts[j][idx]) {
                    (true, true) => cell.both += 1,
                    (false, false) => cell.neither += 1,
                    (true, false) => cell.only_first += 1,
                    (false, true) => {
                        cell.only_second += 1;
                        cell.counterexamples.push(corpus.pairs[p].label.clone());
                    }
                }
            }
            if cell.only_second == 0 {
                dominance_edges.push((cell.first.clone(), cell.second.clone()));
            }
            cells.push(cell);
        }
    }

    Ok(DominanceReport {
        schema_version: 1,
        corpus: corpus.name.clone(),
        engine: engine.name().into(),
        encodings: encodings.iter().map(RpeId::name).collect(),
        pair_count: usable.len(),
        verdicts,
        flagged: !skipped.is_empty(),
        skipped,
        cells,
        dominance_edges,
    })
}

impl DominanceReport {
    /// Grid CSV: cell (row, col) counts pairs the column encoding
    /// separates but the row encoding does not. A zero row means the row
    /// encoding dominates every column on this corpus.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("encoding");
        for name in &self.encodings {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for (i, row_name) in self.encodings.iter().enumerate() {
            out.push_str(row_name);
            for (j, _) in self.encodings.iter().enumerate() {
                out.push(',');
                if i == j {
                    out.push('0');
                } else {
                    let cell = self
                        .cells
                        .iter()
                        .find(|c| c.first == self.encodings[i] && c.second == self.encodings[j])
                        .expect("cell exists");
                    out.push_str(&cell.only_second.to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}
