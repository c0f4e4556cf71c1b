use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::framed::{cofactors_exact, cofactors_mod, complement, FramedEngine, FramedRay};
use super::{Hit, PairStats, SearchMode, SearchReport};
use crate::error::{Error, Result};
use crate::exactfield::{ModularImage, ZOmega};
use crate::mub::{build_mub_set, StateJson};
use crate::support::{canonical_shift, incompatibility_violation, mask_to_indices, subsets_of_size};

#[derive(Clone, Debug)]
pub struct SaturationOptions {
    /// Quotient the zero distributions of one side by the cyclic shift.
    pub symmetry: bool,
    /// Screen candidates in F_p and only confirm survivors exactly.
    pub prefilter: bool,
    pub checkpoint: Option<PathBuf>,
    /// Required for d ≥ 17.
    pub marathon: bool,
    pub workers: Option<usize>,
    /// Work items per parallel batch; a checkpoint is written after each.
    pub batch_size: usize,
    /// Stop (with a checkpoint) after this many work items in this run.
    pub stop_after: Option<usize>,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            symmetry: true,
            prefilter: true,
            checkpoint: None,
            marathon: false,
            workers: None,
            batch_size: 64,
            stop_after: None,
        }
    }
}

/// One unit of work: an ordered basis pair plus the fixed zero set on the
/// side that carries the shift quotient (j₁ unless j₁ is the computational
/// basis, whose zero sets the shift does not move).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WorkKey {
    pub j1: usize,
    pub j2: usize,
    pub fixed_basis: usize,
    pub fixed: Vec<usize>,
}

pub fn work_items(d: u32, symmetry: bool) -> Vec<WorkKey> {
    let m = (d - 1) / 2;
    let all = subsets_of_size(d, m);
    let fixed_sets: Vec<u32> = if symmetry {
        all.iter().copied().filter(|&s| canonical_shift(s, d).0 == s).collect()
    } else {
        all
    };
    let mut out = Vec::new();
    for j1 in 0..=d as usize {
        for j2 in 0..=d as usize {
            if j1 == j2 {
                continue;
            }
            let fixed_basis = if j1 >= 1 { j1 } else { j2 };
            for &s in &fixed_sets {
                out.push(WorkKey {
                    j1,
                    j2,
                    fixed_basis,
                    fixed: mask_to_indices(s, d),
                });
            }
        }
    }
    out
}

/// Rough single-core cost model, used for the up-front estimate.
pub fn estimated_candidates(d: u32, symmetry: bool) -> u64 {
    let m = (d - 1) / 2;
    let n = subsets_of_size(d, m).len() as u64;
    let fixed = if symmetry { n / d as u64 } else { n };
    (d as u64 + 1) * d as u64 * fixed * n
}

#[derive(Debug, Default)]
struct ItemResult {
    candidates: u64,
    exact_solves: u64,
    escalations: u64,
    max_half: usize,
    min_total: Option<usize>,
    hits: Vec<Hit>,
}

struct Context {
    d: u32,
    n: usize,
    engine: FramedEngine,
    modular: Option<ModularImage>,
    subsets: Vec<u32>,
}

impl Context {
    fn process(&self, key: &WorkKey) -> Result<ItemResult> {
        let d = self.d as usize;
        let n = self.n;
        let f = key.fixed_basis;
        let o = if f == key.j1 { key.j2 } else { key.j1 };
        let zf = key.fixed.iter().fold(0u32, |m, &i| m | 1 << i);
        let cols = complement(zf, self.d);
        // rowtab[(j·d + κ)·n + i] = exponent of ⟨φ_κ^j|φ_{cols[i]}^f⟩
        let mut rowtab = vec![0u8; (d + 1) * d * n];
        for j in 0..=d {
            if j == f {
                continue;
            }
            for kappa in 0..d {
                let full = self.engine.tables.row(j, f, kappa);
                for (i, &s) in cols.iter().enumerate() {
                    rowtab[(j * d + kappa) * n + i] = full[s];
                }
            }
        }
        let row = |j: usize, kappa: usize| &rowtab[(j * d + kappa) * n..(j * d + kappa + 1) * n];

        let mut res = ItemResult::default();
        let mut xbuf = Vec::new();
        let mut ibuf = Vec::new();
        let mut x = vec![0u64; n];
        let mut scaled = vec![0u64; n * d];
        let mut rows: Vec<&[u8]> = Vec::with_capacity(n);
        for &zo in &self.subsets {
            res.candidates += 1;
            rows.clear();
            for kappa in 0..d {
                if zo & (1 << kappa) != 0 {
                    rows.push(row(o, kappa));
                }
            }
            if let Some(m) = &self.modular {
                cofactors_mod(m, &rows, n, &mut xbuf, &mut x);
                let mut certified = x.iter().all(|&v| v != 0);
                if certified {
                    for (i, &xi) in x.iter().enumerate() {
                        for e in 0..d {
                            scaled[i * d + e] = m.mul(xi, m.powers[e]);
                        }
                    }
                    let coeff = |j: usize, kappa: usize| -> u64 {
                        row(j, kappa)
                            .iter()
                            .enumerate()
                            .fold(0u64, |acc, (i, &e)| m.add(acc, scaled[i * d + e as usize]))
                    };
                    // The constraint basis must show exactly n nonzeros.
                    certified = (0..d).all(|kappa| zo & (1 << kappa) != 0 || coeff(o, kappa) != 0);
                    if certified {
                        for j in 0..=d {
                            if j == f || j == o {
                                continue;
                            }
                            let mut nonzero = 0;
                            for kappa in 0..d {
                                if coeff(j, kappa) != 0 {
                                    nonzero += 1;
                                    if nonzero > n {
                                        break;
                                    }
                                }
                            }
                            if nonzero <= n {
                                certified = false;
                                break;
                            }
                        }
                    }
                }
                if certified {
                    res.max_half = res.max_half.max(2);
                    continue;
                }
                res.escalations += 1;
            }

            res.exact_solves += 1;
            let flat = cofactors_exact(d, &rows, n, &mut ibuf);
            let coords: Vec<ZOmega> = flat.chunks(d).map(|c| ZOmega::from_counts(c.to_vec())).collect();
            if coords.iter().all(ZOmega::is_zero) {
                return Err(Error::consistency(
                    "linear independence of MU vectors",
                    format!("rank deficiency at {key:?} with other side {:?}", mask_to_indices(zo, self.d)),
                ));
            }
            let ray = FramedRay {
                frame: f,
                cols: cols.clone(),
                coords,
            };
            let sizes = self.engine.sizes(&ray);
            let half = sizes.iter().filter(|&&s| s == n).count();
            let total: usize = sizes.iter().sum();
            res.max_half = res.max_half.max(half);
            if self.modular.is_none() {
                res.min_total = Some(res.min_total.map_or(total, |t| t.min(total)));
            }
            if half >= 3 {
                let (z1, z2) = if f == key.j1 { (zf, zo) } else { (zo, zf) };
                let state = self.engine.to_state(&ray)?;
                let set = build_mub_set(self.d)?;
                if let Some((a, b)) = incompatibility_violation(&state, &set)? {
                    return Err(Error::consistency(
                        "incompatible zero distributions",
                        format!("bases {a} and {b} have shift-equivalent zero sets"),
                    ));
                }
                res.hits.push(Hit {
                    bases: vec![key.j1, key.j2],
                    zeros: vec![mask_to_indices(z1, self.d), mask_to_indices(z2, self.d)],
                    total,
                    sizes,
                    state: StateJson::from(&state),
                });
            }
        }
        Ok(res)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    format: u32,
    d: u32,
    symmetry: bool,
    prefilter: bool,
    total_items: usize,
    completed: usize,
    last_key: Option<WorkKey>,
    candidates: u64,
    exact_solves: u64,
    escalations: u64,
    hit_count: u64,
    hits: Vec<Hit>,
    pair_stats: Vec<PairStats>,
}

const CHECKPOINT_FORMAT: u32 = 1;

fn write_checkpoint(path: &Path, ck: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let body = serde_json::to_vec_pretty(ck).map_err(|e| Error::Resume(e.to_string()))?;
    std::fs::write(&tmp, body)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn read_checkpoint(path: &Path, d: u32, opts: &SaturationOptions, items: &[WorkKey]) -> Result<Checkpoint> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Resume(format!("cannot read {}: {e}", path.display())))?;
    let ck: Checkpoint = serde_json::from_str(&text)
        .map_err(|e| Error::Resume(format!("{} is not a valid checkpoint: {e}", path.display())))?;
    let mismatch = |what: &str| Err(Error::Resume(format!("{}: {what}", path.display())));
    if ck.format != CHECKPOINT_FORMAT {
        return mismatch(&format!("unknown format {}", ck.format));
    }
    if ck.d != d {
        return mismatch(&format!("written for d = {}, not d = {d}", ck.d));
    }
    if ck.symmetry != opts.symmetry || ck.prefilter != opts.prefilter {
        return mismatch("written with different symmetry/prefilter settings");
    }
    if ck.total_items != items.len() || ck.completed > items.len() {
        return mismatch(&format!("{} of {} items does not fit this search", ck.completed, ck.total_items));
    }
    let expected_last = ck.completed.checked_sub(1).map(|i| &items[i]);
    if ck.last_key.as_ref() != expected_last {
        return mismatch("last completed key does not match the work order");
    }
    if ck.pair_stats.len() != (d as usize + 1) * d as usize {
        return mismatch("pair statistics are incomplete");
    }
    if ck.hits.len() as u64 > ck.hit_count {
        return mismatch("more hits stored than counted");
    }
    Ok(ck)
}

fn empty_pair_stats(d: u32) -> Vec<PairStats> {
    let mut out = Vec::new();
    for j1 in 0..=d as usize {
        for j2 in 0..=d as usize {
            if j1 != j2 {
                out.push(PairStats {
                    j1,
                    j2,
                    candidates: 0,
                    max_half_bases: 0,
                    min_total: None,
                });
            }
        }
    }
    out
}

fn pair_index(d: u32, j1: usize, j2: usize) -> usize {
    j1 * d as usize + if j2 > j1 { j2 - 1 } else { j2 }
}

pub fn validate_saturation_dim(d: u32, marathon: bool) -> Result<()> {
    crate::mub::check_prime(d)?;
    if d < 5 {
        return Err(Error::invalid_dimension(d, "the saturation search starts at d = 5"));
    }
    if d >= 23 {
        return Err(Error::invalid_dimension(d, "dimensions from 23 on are not supported"));
    }
    if d >= 17 && !marathon {
        return Err(Error::invalid_dimension(d, "d ≥ 17 runs for days; pass --marathon to start it"));
    }
    Ok(())
}

/// Looks for states with support (d+1)/2 in at least three bases.
///
/// Every such state has (d−1)/2 zeros in two bases j₁, j₂, which pins it
/// down to the unique ray orthogonal to those d−1 basis vectors. The search
/// walks all ordered pairs and all zero-set choices, solves for the ray and
/// inspects its support in the remaining bases.
pub fn saturation_search(d: u32, opts: &SaturationOptions) -> Result<SearchReport> {
    validate_saturation_dim(d, opts.marathon)?;
    let start = Instant::now();
    let items = work_items(d, opts.symmetry);
    let m = (d - 1) / 2;
    let ctx = Context {
        d,
        n: m as usize + 1,
        engine: FramedEngine::new(d)?,
        modular: if opts.prefilter { Some(ModularImage::new(d)?) } else { None },
        subsets: subsets_of_size(d, m),
    };

    let mut ck = match &opts.checkpoint {
        Some(p) if p.exists() => read_checkpoint(p, d, opts, &items)?,
        _ => Checkpoint {
            format: CHECKPOINT_FORMAT,
            d,
            symmetry: opts.symmetry,
            prefilter: opts.prefilter,
            total_items: items.len(),
            completed: 0,
            last_key: None,
            candidates: 0,
            exact_solves: 0,
            escalations: 0,
            hit_count: 0,
            hits: Vec::new(),
            pair_stats: empty_pair_stats(d),
        },
    };

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = opts.workers {
            b = b.num_threads(w.max(1));
        }
        b.build().map_err(|e| Error::invalid_dimension(d, format!("thread pool: {e}")))?
    };
    let limit = match opts.stop_after {
        Some(n) => (ck.completed + n).min(items.len()),
        None => items.len(),
    };
    let batch = opts.batch_size.max(1);
    while ck.completed < limit {
        let end = (ck.completed + batch).min(limit);
        let slice = &items[ck.completed..end];
        let results: Vec<ItemResult> =
            pool.install(|| slice.par_iter().map(|k| ctx.process(k)).collect::<Result<Vec<_>>>())?;
        for (key, r) in slice.iter().zip(results) {
            ck.candidates += r.candidates;
            ck.exact_solves += r.exact_solves;
            ck.escalations += r.escalations;
            let ps = &mut ck.pair_stats[pair_index(d, key.j1, key.j2)];
            ps.candidates += r.candidates;
            ps.max_half_bases = ps.max_half_bases.max(r.max_half);
            if let Some(t) = r.min_total {
                ps.min_total = Some(ps.min_total.map_or(t, |u| u.min(t)));
            }
            ck.hit_count += r.hits.len() as u64;
            ck.hits.extend(r.hits.into_iter().take(super::MAX_STORED_HITS.saturating_sub(ck.hits.len())));
        }
        ck.completed = end;
        ck.last_key = Some(items[end - 1].clone());
        if let Some(p) = &opts.checkpoint {
            write_checkpoint(p, &ck)?;
        }
    }

    let min_total = ck.pair_stats.iter().filter_map(|p| p.min_total).min();
    Ok(SearchReport {
        mode: SearchMode::Saturation,
        d,
        symmetry: opts.symmetry,
        prefilter: opts.prefilter,
        work_items: items.len(),
        completed_items: ck.completed,
        complete: ck.completed == items.len(),
        candidates: ck.candidates,
        kernel_solves: ck.candidates,
        exact_solves: ck.exact_solves,
        escalations: ck.escalations,
        hit_count: ck.hit_count,
        hits: ck.hits,
        pair_stats: ck.pair_stats,
        pair_witnesses: Vec::new(),
        min_total,
        checkpoint: opts.checkpoint.as_ref().map(|p| p.display().to_string()),
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}
