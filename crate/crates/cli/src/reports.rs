use mub_core::exactfield::Cyclotomic;
use mub_core::mub::{build_mub_set, monomial_decompose, qubit_monomials, MubSetJson, StateJson, StateVector};
use mub_core::search::{
    all_selectors, classify_d3, minors_certify, sharp_bound, support5_triple_search, FactCheck, MatrixSelector,
    MinorMode, MinorReport, SearchReport,
};
use mub_core::support::{all_pair_checks, check_complete_bound, support_profile, Achievable, BoundStatus, PairCheck};
use mub_core::{Error, Result};
use serde::Serialize;

use crate::output::{list, opt, Tabular};

impl Tabular for MubSetJson {
    fn headers(&self) -> Vec<&'static str> {
        vec!["basis", "label", "row", "exponents"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut out = Vec::new();
        for b in &self.bases {
            for (x, row) in b.exponents.iter().enumerate() {
                let exps: Vec<String> = row.iter().map(|e| e.map_or_else(|| "-".to_string(), |v| v.to_string())).collect();
                out.push(vec![b.index.to_string(), b.label.clone(), x.to_string(), exps.join(" ")]);
            }
        }
        out
    }
}

pub fn cmd_gen(d: u32) -> Result<MubSetJson> {
    Ok(MubSetJson::from(&build_mub_set(d)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileReport {
    pub dim: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub sizes: Vec<usize>,
    pub total: usize,
    pub complete_bound: String,
    pub bound_status: BoundStatus,
    pub pairs_hold: bool,
    pub pairs: Vec<PairCheck>,
}

impl Tabular for ProfileReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["j", "k", "size_j", "size_k", "sum", "sum_slack", "product", "product_slack"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.pairs
            .iter()
            .map(|p| {
                vec![
                    p.j.to_string(),
                    p.k.to_string(),
                    self.sizes[p.j].to_string(),
                    self.sizes[p.k].to_string(),
                    p.sum.to_string(),
                    p.sum_slack.to_string(),
                    p.product.to_string(),
                    p.product_slack.to_string(),
                ]
            })
            .collect()
    }
}

pub fn cmd_profile(d: u32, psi: &StateVector) -> Result<ProfileReport> {
    if psi.dim() != d {
        return Err(Error::DimensionMismatch { left: d, right: psi.dim() });
    }
    let set = build_mub_set(d)?;
    let p = support_profile(psi, &set)?;
    let pairs = all_pair_checks(&p);
    Ok(ProfileReport {
        dim: d,
        label: psi.label.clone(),
        complete_bound: mub_core::support::complete_bound(d).to_string(),
        bound_status: check_complete_bound(&p),
        pairs_hold: pairs.iter().all(PairCheck::holds),
        sizes: p.sizes,
        total: p.total,
        pairs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialRow {
    pub j: usize,
    pub k: usize,
    pub chi: i64,
    pub t: usize,
    pub permutation: Vec<usize>,
    /// power-basis coordinates of each phase
    pub phases: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialReport {
    pub d: u32,
    pub decompositions: Vec<MonomialRow>,
    /// For the qubit: the scaled products F†H₂H₂ and H₂†FH₂.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qubit: Option<[Vec<Vec<Vec<String>>>; 2]>,
}

impl Tabular for MonomialReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["j", "k", "chi", "t", "permutation"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.decompositions
            .iter()
            .map(|m| vec![m.j.to_string(), m.k.to_string(), m.chi.to_string(), m.t.to_string(), list(&m.permutation)])
            .collect()
    }
}

pub fn cmd_verify_monomial(d: u32, pair: Option<(usize, usize)>) -> Result<MonomialReport> {
    if d == 2 {
        let q = qubit_monomials()?;
        let strings = |m: &Vec<Vec<Cyclotomic>>| m.iter().map(|r| r.iter().map(Cyclotomic::to_strings).collect()).collect();
        return Ok(MonomialReport {
            d,
            decompositions: Vec::new(),
            qubit: Some([strings(&q.m), strings(&q.m_prime)]),
        });
    }
    let pairs: Vec<(usize, usize)> = match pair {
        Some(p) => vec![p],
        None => (1..=d as usize)
            .flat_map(|j| (1..=d as usize).filter(move |&k| k != j).map(move |k| (j, k)))
            .collect(),
    };
    let mut decompositions = Vec::with_capacity(pairs.len());
    for (j, k) in pairs {
        let m = monomial_decompose(j, k, d)?;
        decompositions.push(MonomialRow {
            j,
            k,
            chi: m.chi,
            t: m.t,
            permutation: m.permutation,
            phases: m.phases.iter().map(Cyclotomic::to_strings).collect(),
        });
    }
    Ok(MonomialReport { d, decompositions, qubit: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorsReport {
    pub d: u32,
    pub all_nonzero: bool,
    pub matrices: Vec<MinorReport>,
}

impl Tabular for MinorsReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["matrix", "mode", "minors_checked", "all_nonzero"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.matrices
            .iter()
            .map(|m| {
                let mode = match m.mode {
                    MinorMode::Exhaustive { max_order } => format!("exhaustive ≤ {max_order}"),
                    MinorMode::Sampled { samples, seed } => format!("{samples} samples (seed {seed})"),
                };
                vec![m.matrix.clone(), mode, m.minors_checked.to_string(), m.all_nonzero.to_string()]
            })
            .collect()
    }
}

/// Parses `F`, `H<j>` or `H<k>*H<j>` (the latter meaning H_k†H_j).
pub fn parse_selector(s: &str) -> Result<MatrixSelector> {
    let bad = || Error::Parse(format!("unknown matrix {s:?}; use F, H<j> or H<k>*H<j>"));
    let index = |t: &str| t.strip_prefix('H').and_then(|n| n.parse::<usize>().ok()).ok_or_else(bad);
    if s == "F" {
        return Ok(MatrixSelector::Fourier);
    }
    match s.split_once('*') {
        Some((k, j)) => Ok(MatrixSelector::Product { k: index(k)?, j: index(j)? }),
        None => Ok(MatrixSelector::Hadamard(index(s)?)),
    }
}

pub fn cmd_minors(d: u32, selector: Option<MatrixSelector>, mode: Option<MinorMode>) -> Result<MinorsReport> {
    let mode = mode.unwrap_or(if d <= 7 {
        MinorMode::Exhaustive { max_order: d as usize }
    } else {
        MinorMode::Sampled { samples: 10_000, seed: 0 }
    });
    let selectors = match selector {
        Some(s) => vec![s],
        None => all_selectors(d, d <= 5),
    };
    let matrices = selectors
        .into_iter()
        .map(|s| minors_certify(d, s, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(MinorsReport {
        d,
        all_nonzero: matrices.iter().all(|m| m.all_nonzero),
        matrices,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub d: u32,
    pub count: usize,
    pub states: Vec<StateJson>,
    pub sizes: Vec<Vec<usize>>,
}

impl Tabular for ClassifyReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["state", "entries", "sizes"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.states
            .iter()
            .zip(&self.sizes)
            .enumerate()
            .map(|(i, (s, z))| {
                let entries: Vec<String> = s.entries.iter().map(|e| format!("[{}]", e.join(" "))).collect();
                vec![i.to_string(), entries.join(" "), list(z)]
            })
            .collect()
    }
}

pub fn cmd_classify_d3() -> Result<ClassifyReport> {
    let set = build_mub_set(3)?;
    let rays = classify_d3()?;
    let sizes = rays
        .iter()
        .map(|r| support_profile(r, &set).map(|p| p.sizes))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassifyReport {
        d: 3,
        count: rays.len(),
        states: rays.iter().map(StateJson::from).collect(),
        sizes,
    })
}

impl Tabular for SearchReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["j1", "j2", "candidates", "max_half_bases", "min_total"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = self
            .pair_stats
            .iter()
            .map(|p| {
                vec![
                    p.j1.to_string(),
                    p.j2.to_string(),
                    p.candidates.to_string(),
                    p.max_half_bases.to_string(),
                    opt(&p.min_total),
                ]
            })
            .collect();
        rows.push(vec![
            "all".into(),
            "all".into(),
            self.candidates.to_string(),
            format!("hits: {}", self.hit_count),
            opt(&self.min_total),
        ]);
        rows
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpBoundReport {
    pub d: u32,
    pub t: String,
    pub t_s: Option<usize>,
    pub achievable: Achievable,
    pub witness_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<StateJson>>,
    pub facts: Vec<FactCheck>,
    pub excluded_profiles: usize,
    pub cross_check_min_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support5: Option<SearchReport>,
}

impl Tabular for SharpBoundReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["pattern", "rest", "systems", "observed_rest", "min_total", "max_total", "holds"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = self
            .facts
            .iter()
            .map(|f| {
                vec![
                    list(&f.pattern),
                    f.rest.to_string(),
                    f.systems.to_string(),
                    f.observed_rest.to_string(),
                    f.min_total.to_string(),
                    f.max_total.to_string(),
                    f.holds.to_string(),
                ]
            })
            .collect();
        rows.push(vec![
            format!("T_s = {}", opt(&self.t_s)),
            String::new(),
            format!("{} witnesses", self.witness_count),
            String::new(),
            opt(&self.cross_check_min_total),
            String::new(),
            String::new(),
        ]);
        rows
    }
}

pub fn cmd_sharp_bound(d: u32, with_witnesses: bool, support5: bool) -> Result<SharpBoundReport> {
    let s = sharp_bound(d)?;
    let support5 = if support5 {
        if d != 7 {
            return Err(Error::invalid_dimension(d, "the support-five search runs at d = 7"));
        }
        Some(support5_triple_search()?)
    } else {
        None
    };
    Ok(SharpBoundReport {
        d,
        t: s.bound.t.to_string(),
        t_s: s.bound.t_s,
        achievable: s.bound.achievable,
        witness_count: s.bound.witnesses.len(),
        witnesses: with_witnesses.then(|| s.bound.witnesses.iter().map(StateJson::from).collect()),
        facts: s.facts,
        excluded_profiles: s.excluded_profiles,
        cross_check_min_total: s.cross_check_min_total,
        support5,
    })
}
