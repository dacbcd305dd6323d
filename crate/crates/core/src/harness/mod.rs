//! Corpus management, dominance grids, and named property verifiers.

mod corpus;
mod csl;
mod dominance;
mod encoding;
mod search;
mod verify;

pub use corpus::{build_corpus, Corpus, CorpusPair, CorpusSpec, CSL_N, CSL_SKIPS};
pub use csl::{csl_encodings, csl_experiment, CslReport, CslRow};
pub use dominance::{dominance_matrix, pair_verdict, DominanceCell, DominanceReport, Engine};
pub use encoding::{ApeId, RpeId, StackDepth};
pub use search::{smallest_rd_not_spd_pair, SearchHit};
pub use verify::{combinatorially_aware_on, verify, TheoremResult, Violation, THEOREM_IDS};
