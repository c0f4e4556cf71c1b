use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classify::classify_d3;
use super::framed::{FramedEngine, FramedRay};
use super::kernel::{kernel_basis, KernelSystem};
use super::{Hit, SearchMode, SearchReport, MAX_STORED_HITS};
use crate::error::{Error, Result};
use crate::exactfield::Cyclotomic;
use crate::mub::{build_mub_set, MubSet, StateJson, StateVector};
use crate::support::{
    admissible_sorted_profiles, mask_to_indices, subsets_of_size, support_profile, Achievable, BoundReport,
};

/// "If ψ has support at most pattern[i] in distinct bases b_i, its support in
/// every other basis is at least `rest`", together with the outcome of an
/// exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactCheck {
    pub pattern: Vec<usize>,
    pub rest: usize,
    pub systems: u64,
    /// Smallest support seen outside the pattern bases.
    pub observed_rest: usize,
    pub min_total: usize,
    pub max_total: usize,
    pub holds: bool,
}

/// Outcome of `sharp_bound`.
#[derive(Clone, Debug)]
pub struct SharpBound {
    pub bound: BoundReport,
    pub facts: Vec<FactCheck>,
    /// Admissible profiles below T_s, each ruled out by the pair bound or a fact.
    pub excluded_profiles: usize,
    /// Smallest total support over all rays cut out by d−1 basis vectors.
    pub cross_check_min_total: Option<usize>,
}

#[derive(Clone, Copy)]
struct Agg {
    systems: u64,
    observed_rest: usize,
    min_total: usize,
    max_total: usize,
}

impl Agg {
    fn new() -> Self {
        Agg {
            systems: 0,
            observed_rest: usize::MAX,
            min_total: usize::MAX,
            max_total: 0,
        }
    }

    fn merge(self, o: Agg) -> Agg {
        Agg {
            systems: self.systems + o.systems,
            observed_rest: self.observed_rest.min(o.observed_rest),
            min_total: self.min_total.min(o.min_total),
            max_total: self.max_total.max(o.max_total),
        }
    }
}

/// Solves every system "zero_counts[i] zeros in basis combo[i]" for each basis
/// combination, calling `step` on each ray. Per-combination accumulators come
/// back in input order.
fn for_each_system<A, I, S>(
    engine: &FramedEngine,
    combos: &[Vec<usize>],
    zero_counts: &[u32],
    init: I,
    step: S,
) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, &[usize], &[u32], &FramedRay, &[usize]) -> Result<()> + Sync,
{
    let d = engine.dim();
    let total: u32 = zero_counts.iter().sum();
    if total != d - 1 {
        return Err(Error::invalid_dimension(d, format!("{total} zeros do not cut out a ray")));
    }
    let lists: Vec<Vec<u32>> = zero_counts.iter().map(|&z| subsets_of_size(d, z)).collect();
    combos
        .par_iter()
        .map(|bases| {
            let mut acc = init();
            let mut idx = vec![0usize; lists.len()];
            let mut masks = vec![0u32; lists.len()];
            'outer: loop {
                for (i, l) in lists.iter().enumerate() {
                    masks[i] = l[idx[i]];
                }
                let constraints: Vec<(usize, u32)> = bases[1..].iter().copied().zip(masks[1..].iter().copied()).collect();
                let ray = engine.solve(bases[0], masks[0], &constraints)?.ok_or_else(|| {
                    Error::consistency(
                        "kernel dimension",
                        format!(
                            "zero sets {:?} in bases {bases:?} leave more than a ray",
                            masks.iter().map(|&m| mask_to_indices(m, d)).collect::<Vec<_>>()
                        ),
                    )
                })?;
                let sizes = engine.sizes(&ray);
                step(&mut acc, bases, &masks, &ray, &sizes)?;
                // odometer over the zero-set lists
                for i in (0..lists.len()).rev() {
                    idx[i] += 1;
                    if idx[i] < lists[i].len() {
                        continue 'outer;
                    }
                    idx[i] = 0;
                }
                break;
            }
            Ok(acc)
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets_of_size(n as u32, k as u32)
        .into_iter()
        .map(|m| mask_to_indices(m, n as u32))
        .collect()
}

fn permutations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Exhaustively checks a support fact. The zero counts d − pattern[i] must
/// add up to d − 1, so every choice of zero sets pins down one ray; any state
/// with smaller supports in those bases has zero sets containing one of the
/// enumerated choices and is therefore one of these rays.
pub fn verify_fact(engine: &FramedEngine, pattern: &[usize], rest: usize) -> Result<FactCheck> {
    let d = engine.dim() as usize;
    let zero_counts: Vec<u32> = pattern.iter().map(|&p| (d - p) as u32).collect();
    let symmetric = pattern.windows(2).all(|w| w[0] == w[1]);
    let combos = if symmetric {
        combinations(d + 1, pattern.len())
    } else {
        permutations(d + 1, pattern.len())
    };
    let aggs = for_each_system(engine, &combos, &zero_counts, Agg::new, |acc, bases, _, _, sizes| {
        acc.systems += 1;
        let other = (0..=d).filter(|b| !bases.contains(b)).map(|b| sizes[b]).min().unwrap_or(d);
        let total: usize = sizes.iter().sum();
        acc.observed_rest = acc.observed_rest.min(other);
        acc.min_total = acc.min_total.min(total);
        acc.max_total = acc.max_total.max(total);
        Ok(())
    })?;
    let agg = aggs.into_iter().fold(Agg::new(), Agg::merge);
    Ok(FactCheck {
        pattern: pattern.to_vec(),
        rest,
        systems: agg.systems,
        observed_rest: agg.observed_rest,
        min_total: agg.min_total,
        max_total: agg.max_total,
        holds: agg.observed_rest >= rest,
    })
}

/// Smallest total support among all rays orthogonal to d−1 basis vectors
/// split over two bases (every split), plus, at d = 7, the (2,2,2) splits
/// over three bases.
pub fn zero_budget_min_total(engine: &FramedEngine) -> Result<usize> {
    let d = engine.dim() as usize;
    let pairs = combinations(d + 1, 2);
    let mut best = usize::MAX;
    let min_step = |acc: &mut usize, _: &[usize], _: &[u32], _: &FramedRay, sizes: &[usize]| {
        *acc = (*acc).min(sizes.iter().sum());
        Ok(())
    };
    for a in 0..d as u32 {
        let counts = [a, d as u32 - 1 - a];
        for m in for_each_system(engine, &pairs, &counts, || usize::MAX, min_step)? {
            best = best.min(m);
        }
    }
    if d == 7 {
        for m in for_each_system(engine, &combinations(d + 1, 3), &[2, 2, 2], || usize::MAX, min_step)? {
            best = best.min(m);
        }
    }
    Ok(best)
}

/// Number of states φ_{k₁}^j − ω^n φ_{k₂}^j: (d+1)·binom(d,2)·d.
pub fn two_term_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * d * (d - 1) / 2 * d
}

/// All states φ_{k₁}^j − ω^n φ_{k₂}^j with k₁ < k₂.
pub fn two_term_states(set: &MubSet) -> Vec<StateVector> {
    let d = set.dim() as usize;
    let order = set.order();
    let mut out = Vec::with_capacity(two_term_count(set.dim()));
    for j in 0..=d {
        for k1 in 0..d {
            for k2 in k1 + 1..d {
                for n in 0..d as i64 {
                    let a = set.state(j, k1);
                    let b = set.state(j, k2).scale(&Cyclotomic::root(order, n * order as i64 / d as i64));
                    let psi = a.checked_sub(&b).expect("same dimension");
                    out.push(psi.with_label(format!("φ_{k1}^{j} − ω^{n} φ_{k2}^{j}")));
                }
            }
        }
    }
    out
}

/// A profile (sorted ascending) is ruled out by a fact when some bases match
/// the pattern and another basis falls below `rest`.
fn fact_excludes(profile: &[usize], fact: &FactCheck) -> bool {
    let k = fact.pattern.len();
    permutations(profile.len(), k).iter().any(|pos| {
        pos.iter().zip(&fact.pattern).all(|(&p, &lim)| profile[p] <= lim)
            && (0..profile.len()).any(|q| !pos.contains(&q) && profile[q] < fact.rest)
    })
}

/// Facts used to bound the total support from below.
pub fn sharp_facts(d: u32) -> Vec<(Vec<usize>, usize)> {
    match d {
        5 => vec![(vec![3, 3], 5)],
        7 => vec![(vec![3, 5], 7), (vec![4, 4], 6), (vec![5, 5, 5], 7)],
        _ => Vec::new(),
    }
}

fn distinct_rays(states: &[StateVector]) -> Result<usize> {
    let mut seen = HashSet::new();
    for s in states {
        let r = s.normalized_ray()?;
        seen.insert(r.entries().iter().map(|c| c.to_strings()).collect::<Vec<_>>());
    }
    Ok(seen.len())
}

/// The smallest total support over all states, for d ∈ {2, 3, 5, 7}.
///
/// Witnesses give an upper value; a lower bound comes from enumerating every
/// admissible support profile below it and ruling each one out with the
/// pair bound or an exhaustively verified fact.
pub fn sharp_bound(d: u32) -> Result<SharpBound> {
    if ![2, 3, 5, 7].contains(&d) {
        return Err(Error::invalid_dimension(d, "sharp bounds are available for d ∈ {2, 3, 5, 7}"));
    }
    let set = build_mub_set(d)?;
    let mut bound = BoundReport::new(d);
    let witnesses = match d {
        2 => vec![StateVector::basis_state(2, 0).with_label("|0⟩")],
        3 => classify_d3()?,
        _ => two_term_states(&set),
    };
    let mut totals = Vec::with_capacity(witnesses.len());
    for w in &witnesses {
        totals.push(support_profile(w, &set)?.total);
    }
    let t_s = *totals.iter().min().expect("witnesses");
    if totals.iter().any(|&t| t != t_s) {
        return Err(Error::consistency("sharp bound witnesses", "witnesses have different totals"));
    }
    if d >= 5 {
        let expected = two_term_count(d);
        let distinct = distinct_rays(&witnesses)?;
        if witnesses.len() != expected || distinct != expected {
            return Err(Error::consistency(
                "sharp bound witnesses",
                format!("{distinct} distinct rays among {} states, expected {expected}", witnesses.len()),
            ));
        }
    }

    let (facts, cross) = if d >= 5 {
        let engine = FramedEngine::new(d)?;
        let facts = sharp_facts(d)
            .into_iter()
            .map(|(p, r)| verify_fact(&engine, &p, r))
            .collect::<Result<Vec<_>>>()?;
        (facts, Some(zero_budget_min_total(&engine)?))
    } else {
        (Vec::new(), None)
    };
    let valid: Vec<&FactCheck> = facts.iter().filter(|f| f.holds).collect();
    let below = admissible_sorted_profiles(d, t_s - 1);
    if let Some(p) = below.iter().find(|p| !valid.iter().any(|f| fact_excludes(p, f))) {
        return Err(Error::consistency(
            "sharp bound ladder",
            format!("profile {p:?} with total {} is not ruled out", p.iter().sum::<usize>()),
        ));
    }
    if let Some(c) = cross {
        if c != t_s {
            return Err(Error::consistency(
                "sharp bound cross-check",
                format!("rays cut out by {} basis vectors reach total {c}, not {t_s}", d - 1),
            ));
        }
    }

    bound.t_s = Some(t_s);
    bound.achievable = if 2 * t_s as u64 == (d as u64 + 1).pow(2) {
        Achievable::Yes
    } else {
        Achievable::No
    };
    bound.witnesses = witnesses;
    Ok(SharpBound {
        bound,
        facts,
        excluded_profiles: below.len(),
        cross_check_min_total: cross,
    })
}

/// A state in the kernel of the given zero sets whose support is exactly
/// d − |Z| in each of the listed bases, built from small combinations of a
/// kernel basis.
fn exact_support_state(set: &MubSet, zeros: &[(usize, Vec<usize>)]) -> Result<Option<StateVector>> {
    let d = set.dim() as usize;
    let basis = kernel_basis(&KernelSystem::from_zero_sets(set, zeros))?;
    let order = set.order();
    let k = basis.len();
    // coefficient vectors over {0, 1, ω}, skipping the all-zero one
    let mut idx = vec![0usize; k];
    loop {
        let mut i = 0;
        while i < k && idx[i] == 2 {
            idx[i] = 0;
            i += 1;
        }
        if i == k {
            return Ok(None);
        }
        idx[i] += 1;
        let mut psi = StateVector::new(set.dim(), vec![Cyclotomic::zero(order); d])?;
        for (v, &c) in basis.iter().zip(&idx) {
            if c > 0 {
                psi = psi.checked_add(&v.scale(&Cyclotomic::root(order, c as i64 - 1)))?;
            }
        }
        if psi.is_zero() {
            continue;
        }
        let profile = support_profile(&psi, set)?;
        if zeros.iter().all(|(j, z)| profile.sizes[*j] == d - z.len()) {
            return Ok(Some(psi));
        }
    }
}

/// At d = 7: states with support five in two bases, and the rays with
/// support at most five in three bases.
///
/// Pairs: two zeros in each of two bases leave a three-dimensional space;
/// for every basis pair a state with support exactly five in both is found.
/// Triples: two zeros in each of three bases fix a ray; every such system is
/// solved and rays with support exactly five in all three bases are hits.
pub fn support5_triple_search() -> Result<SearchReport> {
    let d = 7u32;
    let start = std::time::Instant::now();
    let set = build_mub_set(d)?;
    let engine = FramedEngine::new(d)?;
    let first = mask_to_indices(subsets_of_size(d, 2)[0], d);
    let mut pair_witnesses = Vec::new();
    for pair in combinations(d as usize + 1, 2) {
        let zeros = vec![(pair[0], first.clone()), (pair[1], first.clone())];
        if let Some(psi) = exact_support_state(&set, &zeros)? {
            let profile = support_profile(&psi, &set)?;
            pair_witnesses.push(Hit {
                bases: pair.clone(),
                zeros: vec![first.clone(), first.clone()],
                total: profile.total,
                sizes: profile.sizes,
                state: StateJson::from(&psi),
            });
        }
    }

    struct Acc {
        systems: u64,
        hits: u64,
        min_total: usize,
        stored: Vec<Hit>,
    }
    let combos = combinations(d as usize + 1, 3);
    let accs = for_each_system(
        &engine,
        &combos,
        &[2, 2, 2],
        || Acc {
            systems: 0,
            hits: 0,
            min_total: usize::MAX,
            stored: Vec::new(),
        },
        |acc, bases, masks, ray, sizes| {
            acc.systems += 1;
            let total: usize = sizes.iter().sum();
            acc.min_total = acc.min_total.min(total);
            if bases.iter().all(|&b| sizes[b] == 5) {
                acc.hits += 1;
                if acc.stored.len() < 4 {
                    acc.stored.push(Hit {
                        bases: bases.to_vec(),
                        zeros: masks.iter().map(|&m| mask_to_indices(m, d)).collect(),
                        sizes: sizes.to_vec(),
                        total,
                        state: StateJson::from(&engine.to_state(ray)?),
                    });
                }
            }
            Ok(())
        },
    )?;
    let mut report = SearchReport {
        mode: SearchMode::Support5Triples,
        d,
        symmetry: false,
        prefilter: false,
        work_items: combos.len(),
        completed_items: combos.len(),
        complete: true,
        candidates: 0,
        kernel_solves: 0,
        exact_solves: 0,
        escalations: 0,
        hit_count: 0,
        hits: Vec::new(),
        pair_stats: Vec::new(),
        pair_witnesses,
        min_total: None,
        checkpoint: None,
        elapsed_ms: None,
    };
    for a in accs {
        report.candidates += a.systems;
        report.hit_count += a.hits;
        report.min_total = Some(report.min_total.map_or(a.min_total, |m| m.min(a.min_total)));
        let room = MAX_STORED_HITS.saturating_sub(report.hits.len());
        report.hits.extend(a.stored.into_iter().take(room));
    }
    report.kernel_solves = report.candidates;
    report.exact_solves = report.candidates;
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_term_counts() {
        assert_eq!(two_term_count(5), 300);
        assert_eq!(two_term_count(7), 1176);
    }

    #[test]
    fn qubit_and_qutrit() {
        let b2 = sharp_bound(2).unwrap();
        assert_eq!(b2.bound.t_s, Some(5));
        assert_eq!(b2.bound.achievable, Achievable::No);
        let b3 = sharp_bound(3).unwrap();
        assert_eq!(b3.bound.t_s, Some(8));
        assert_eq!(b3.bound.witnesses.len(), 9);
        assert_eq!(b3.bound.achievable, Achievable::Yes);
    }

    #[test]
    fn exclusion_logic() {
        let fact = FactCheck {
            pattern: vec![3, 3],
            rest: 5,
            systems: 0,
            observed_rest: 5,
            min_total: 0,
            max_total: 0,
            holds: true,
        };
        assert!(fact_excludes(&[3, 3, 4, 5, 5, 5], &fact));
        assert!(!fact_excludes(&[3, 3, 5, 5, 5, 5], &fact));
        assert!(!fact_excludes(&[2, 4, 4, 4, 4, 4], &fact));
    }

    #[test]
    fn d5_bound_is_22() {
        let b = sharp_bound(5).unwrap();
        assert_eq!(b.bound.t_s, Some(22));
        assert_eq!(b.bound.witnesses.len(), 300);
        assert_eq!(b.cross_check_min_total, Some(22));
        assert!(b.facts.iter().all(|f| f.holds));
    }

    #[test]
    fn unsupported_dimension() {
        assert!(sharp_bound(11).is_err());
    }
}
