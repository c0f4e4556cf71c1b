//! Exact searches over zero distributions: kernel rays, the saturation
//! search for states with many half-size supports, sharp bounds, the d = 3
//! classification and minor certificates.

use serde::{Deserialize, Serialize};

use crate::mub::StateJson;

pub mod classify;
pub mod framed;
pub mod kernel;
pub mod lemma5;
pub mod minors;
pub mod saturation;
pub mod sharp;

pub use classify::{classify_d3, qutrit_saturating_states};
pub use framed::{FramedEngine, FramedRay};
pub use kernel::{kernel_basis, kernel_ray, nullspace, rank, KernelSystem};
pub use lemma5::{verify_lemma5, Lemma5Report};
pub use minors::{all_selectors, minors_certify, MatrixSelector, MinorMode, MinorReport};
pub use saturation::{
    estimated_candidates, saturation_search, validate_saturation_dim, work_items, SaturationOptions, WorkKey,
};
pub use sharp::{
    sharp_bound, sharp_facts, support5_triple_search, two_term_count, two_term_states, verify_fact,
    zero_budget_min_total, FactCheck, SharpBound,
};

/// Reports keep at most this many hit states; `hit_count` has the full tally.
pub const MAX_STORED_HITS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Saturation,
    Support5Triples,
}

/// A state found by a search, with the zero sets that determined it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    pub bases: Vec<usize>,
    pub zeros: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub total: usize,
    pub state: StateJson,
}

/// Per ordered basis pair (j₁, j₂): how many candidates were solved, the
/// largest number of bases with support (d+1)/2 seen, and (when every
/// candidate was solved exactly) the smallest total support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStats {
    pub j1: usize,
    pub j2: usize,
    pub candidates: u64,
    pub max_half_bases: usize,
    pub min_total: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub d: u32,
    pub symmetry: bool,
    pub prefilter: bool,
    pub work_items: usize,
    pub completed_items: usize,
    pub complete: bool,
    pub candidates: u64,
    pub kernel_solves: u64,
    pub exact_solves: u64,
    pub escalations: u64,
    pub hit_count: u64,
    pub hits: Vec<Hit>,
    pub pair_stats: Vec<PairStats>,
    pub pair_witnesses: Vec<Hit>,
    /// Smallest total support among exactly solved candidates, when tracked.
    pub min_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}
