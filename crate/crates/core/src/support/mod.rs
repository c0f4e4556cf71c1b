//! Support sizes of states across the bases of the standard set, and the
//! inequalities they obey.

mod fuzz;
mod zeros;

pub use fuzz::{random_state, symmetry_variants, SymmetryKind};
pub use zeros::{
    canonical_class_representatives, canonical_shift, compatible, count_shift_classes,
    mask_to_indices, subsets_of_size, zero_distribution, ZeroDistribution,
};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::Cyclotomic;
use crate::mub::{MubBasis, MubSet, StateVector};

/// Expansion coefficients of ψ in one basis, through Z[ω] whenever the state
/// has small integral coordinates.
pub fn expansion(psi: &StateVector, basis: &MubBasis) -> Result<Vec<Cyclotomic>> {
    match psi.to_zomega() {
        Some(z) => Ok(basis
            .coefficients_zomega(&z)
            .iter()
            .map(|c| c.to_cyclotomic())
            .collect()),
        None => basis.coefficients(psi),
    }
}

fn count_nonzero(psi: &StateVector, z: Option<&[crate::exactfield::ZOmega]>, basis: &MubBasis) -> Result<usize> {
    Ok(match z {
        Some(z) => basis.coefficients_zomega(z).iter().filter(|c| !c.is_zero()).count(),
        None => basis.coefficients(psi)?.iter().filter(|c| !c.is_zero()).count(),
    })
}

/// ‖ψ‖_j: the number of nonzero coefficients ⟨φ_k^j|ψ⟩.
pub fn support_size(psi: &StateVector, basis: &MubBasis) -> Result<usize> {
    psi.require_nonzero()?;
    let z = psi.to_zomega();
    count_nonzero(psi, z.as_deref(), basis)
}

/// Support sizes in all d+1 bases together with their sum S(d).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportProfile {
    pub dim: u32,
    pub sizes: Vec<usize>,
    pub total: usize,
}

impl SupportProfile {
    /// A profile given directly by its sizes (not necessarily realisable).
    pub fn from_sizes(dim: u32, sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() != dim as usize + 1 {
            return Err(Error::DimensionMismatch {
                left: dim + 1,
                right: sizes.len() as u32,
            });
        }
        let total = sizes.iter().sum();
        Ok(SupportProfile { dim, sizes, total })
    }

    /// Number of bases in which the support is exactly (d+1)/2.
    pub fn half_count(&self) -> usize {
        let half = (self.dim as usize).div_ceil(2);
        self.sizes.iter().filter(|&&s| s == half).count()
    }
}

pub fn support_profile(psi: &StateVector, set: &MubSet) -> Result<SupportProfile> {
    psi.require_nonzero()?;
    if psi.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            left: set.dim(),
            right: psi.dim(),
        });
    }
    let z = psi.to_zomega();
    let sizes = set
        .bases()
        .iter()
        .map(|b| count_nonzero(psi, z.as_deref(), b))
        .collect::<Result<Vec<_>>>()?;
    SupportProfile::from_sizes(set.dim(), sizes)
}

/// Both pair relations for one pair of bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub j: usize,
    pub k: usize,
    pub sum: usize,
    /// sum − (d+1); negative means the additive bound is broken
    pub sum_slack: i64,
    pub product: usize,
    /// product − d
    pub product_slack: i64,
}

impl PairCheck {
    pub fn sum_holds(&self) -> bool {
        self.sum_slack >= 0
    }

    pub fn product_holds(&self) -> bool {
        self.product_slack >= 0
    }

    pub fn holds(&self) -> bool {
        self.sum_holds() && self.product_holds()
    }
}

pub fn check_pair_inequality(profile: &SupportProfile, j: usize, k: usize) -> Result<PairCheck> {
    if j == k {
        return Err(Error::invalid_dimension(profile.dim, "pair check needs two different bases"));
    }
    let (a, b) = (profile.sizes[j], profile.sizes[k]);
    let d = profile.dim as i64;
    Ok(PairCheck {
        j,
        k,
        sum: a + b,
        sum_slack: (a + b) as i64 - (d + 1),
        product: a * b,
        product_slack: (a * b) as i64 - d,
    })
}

/// Every pair of bases, in lexicographic order.
pub fn all_pair_checks(profile: &SupportProfile) -> Vec<PairCheck> {
    let n = profile.sizes.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for k in j + 1..n {
            out.push(check_pair_inequality(profile, j, k).expect("distinct"));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundStatus {
    Satisfied,
    Saturated,
    Violated,
}

/// T(d) = (d+1)²/2.
pub fn complete_bound(d: u32) -> Ratio<u64> {
    Ratio::new((d as u64 + 1).pow(2), 2)
}

pub fn check_complete_bound(profile: &SupportProfile) -> BoundStatus {
    let twice = 2 * profile.total as u64;
    let target = (profile.dim as u64 + 1).pow(2);
    match twice.cmp(&target) {
        std::cmp::Ordering::Greater => BoundStatus::Satisfied,
        std::cmp::Ordering::Equal => BoundStatus::Saturated,
        std::cmp::Ordering::Less => BoundStatus::Violated,
    }
}

/// ‖ψ‖_a + ‖ψ‖_b + ‖ψ‖_c ≥ 3(d+1)/2.
pub fn check_triple_bound(profile: &SupportProfile, bases: [usize; 3]) -> bool {
    let sum: usize = bases.iter().map(|&j| profile.sizes[j]).sum();
    2 * sum >= 3 * (profile.dim as usize + 1)
}

/// All sizes equal (d+1)/2.
pub fn equal_support_condition(profile: &SupportProfile) -> bool {
    profile.dim % 2 == 1 && profile.sizes.iter().all(|&s| 2 * s == profile.dim as usize + 1)
}

/// Sorted (non-decreasing) size vectors in {1..d}^{d+1} whose two smallest
/// entries obey the pair bound and whose sum is at most `max_total`.
pub fn admissible_sorted_profiles(d: u32, max_total: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, len: usize, max_total: usize, cur: &mut Vec<usize>, sum: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let lo = match cur.len() {
            0 => 1,
            1 => cur[0].max(d + 1 - cur[0]),
            _ => *cur.last().expect("nonempty"),
        };
        let left = len - cur.len();
        for v in lo..=d {
            if sum + v * left > max_total {
                break;
            }
            cur.push(v);
            rec(d, len, max_total, cur, sum + v, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d as usize, d as usize + 1, max_total, &mut Vec::new(), 0, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Achievable {
    Yes,
    No,
    Unknown,
}

/// Lower bound T(d), the sharp bound T_s(d) where known, and witnesses.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub dim: u32,
    pub t: Ratio<u64>,
    pub t_s: Option<usize>,
    pub achievable: Achievable,
    pub witnesses: Vec<StateVector>,
}

impl BoundReport {
    pub fn new(dim: u32) -> Self {
        BoundReport {
            dim,
            t: complete_bound(dim),
            t_s: None,
            achievable: Achievable::Unknown,
            witnesses: Vec::new(),
        }
    }
}

/// For a state with support (d+1)/2 in basis 0 and in two Hadamard bases
/// j₁, j₂, the zero distributions in j₁ and j₂ are incompatible when d > 3.
/// Returns the offending pair if one exists.
pub fn incompatibility_violation(psi: &StateVector, set: &MubSet) -> Result<Option<(usize, usize)>> {
    let d = set.dim();
    if d <= 3 {
        return Ok(None);
    }
    let profile = support_profile(psi, set)?;
    let half = (d as usize).div_ceil(2);
    if profile.sizes[0] != half {
        return Ok(None);
    }
    let halves: Vec<usize> = (1..=d as usize).filter(|&j| profile.sizes[j] == half).collect();
    let zs = halves
        .iter()
        .map(|&j| zero_distribution(psi, j, set))
        .collect::<Result<Vec<_>>>()?;
    for a in 0..zs.len() {
        for b in a + 1..zs.len() {
            if compatible(&zs[a], &zs[b]).is_some() {
                return Ok(Some((halves[a], halves[b])));
            }
        }
    }
    Ok(None)
}
