//! Pairwise distinguishability over the circular-skip-links classes.

use super::corpus::{CSL_N, CSL_SKIPS};
use super::encoding::RpeId;
use crate::error::Result;
use crate::graph::{generate, Family, FeaturedGraph};
use crate::refine::{compare, PairTest};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CslRow {
    pub encoding: String,
    pub distinguished: usize,
    pub total: usize,
    pub indistinguishable_pairs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CslReport {
    pub schema_version: u32,
    pub n: usize,
    pub skips: Vec<usize>,
    pub rows: Vec<CslRow>,
}

/// The encodings the experiment tabulates, in report order.
pub fn csl_encodings() -> Vec<RpeId> {
    vec![
        RpeId::parse("adjacency").expect("valid"),
        RpeId::parse("spd").expect("valid"),
        RpeId::parse("rd").expect("valid"),
        RpeId::parse("rspe:recip0").expect("valid"),
        RpeId::parse("stack:sym_adj:20").expect("valid"),
    ]
}

pub fn csl_experiment() -> Result<CslReport> {
    let classes: Vec<(usize, FeaturedGraph)> = CSL_SKIPS
        .iter()
        .map(|&skip| {
            Ok((
                skip,
                FeaturedGraph::unfeatured(generate(&Family::Csl { n: CSL_N, skip })?.into_single()),
            ))
        })
        .collect::<Result<_>>()?;
    let encodings = csl_encodings();
    let rows: Result<Vec<CslRow>> = encodings
        .iter()
        .map(|id| {
            // One tensor per class, reused across its nine pairings.
            let tensors: Result<Vec<_>> = classes
                .par_iter()
                .map(|(_, g)| id.compute(&g.graph, CSL_N))
                .collect();
            let tensors = tensors?;
            let index: Vec<(usize, usize)> = (0..classes.len())
                .flat_map(|i| (i + 1..classes.len()).map(move |j| (i, j)))
                .collect();
            let verdicts: Result<Vec<(String, bool)>> = index
                .par_iter()
                .map(|&(i, j)| {
                    let verdict = compare(
                        &classes[i].1,
                        &classes[j].1,
                        PairTest::PsiWl(&tensors[i], &tensors[j]),
                    )?;
                    Ok((
                        format!("csl{}_vs_csl{}", classes[i].0, classes[j].0),
                        verdict.distinguishable,
                    ))
                })
                .collect();
            let verdicts = verdicts?;
            let indistinguishable_pairs: Vec<String> = verdicts
                .iter()
                .filter(|(_, d)| !d)
                .map(|(label, _)| label.clone())
                .collect();
            Ok(CslRow {
                encoding: id.name(),
                distinguished: verdicts.len() - indistinguishable_pairs.len(),
                total: verdicts.len(),
                indistinguishable_pairs,
            })
        })
        .collect();
    Ok(CslReport {
        schema_version: 1,
        n: CSL_N,
        skips: CSL_SKIPS.to_vec(),
        rows: rows?,
    })
}

impl CslReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("encoding,distinguished,total\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{}\n", row.encoding, row.distinguished, row.total));
        }
        out
    }
}
