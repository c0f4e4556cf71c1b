use serde::{Deserialize, Serialize};

use super::expansion;
use crate::error::{Error, Result};
use crate::mub::{MubSet, StateVector};

/// Indices κ at which ⟨φ_κ^j|ψ⟩ vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZeroDistribution {
    pub dim: u32,
    pub basis: usize,
    pub indices: Vec<usize>,
}

impl ZeroDistribution {
    pub fn mask(&self) -> u32 {
        self.indices.iter().fold(0, |m, &i| m | 1 << i)
    }
}

pub fn zero_distribution(psi: &StateVector, j: usize, set: &MubSet) -> Result<ZeroDistribution> {
    psi.require_nonzero()?;
    let coeffs = expansion(psi, set.basis(j))?;
    Ok(ZeroDistribution {
        dim: set.dim(),
        basis: j,
        indices: coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(k, _)| k)
            .collect(),
    })
}

pub fn mask_to_indices(mask: u32, d: u32) -> Vec<usize> {
    (0..d as usize).filter(|&i| mask & (1 << i) != 0).collect()
}

fn rotate(mask: u32, mu: u32, d: u32) -> u32 {
    let full = (1u32 << d) - 1;
    if mu == 0 {
        mask
    } else {
        ((mask << mu) | (mask >> (d - mu))) & full
    }
}

/// Lexicographic comparison of the sorted index lists of two masks.
fn lex_less(a: u32, b: u32) -> bool {
    let x = a ^ b;
    if x == 0 {
        return false;
    }
    // The first index where the lists differ is the lowest differing bit; the
    // list containing it is smaller there, unless the other list has already
    // ended, which cannot happen for equal cardinalities.
    let low = x & x.wrapping_neg();
    a & low != 0
}

/// (canonical representative, μ) with representative = mask + μ (mod d), the
/// representative being the lexicographically smallest shift.
pub fn canonical_shift(mask: u32, d: u32) -> (u32, u32) {
    let mut best = (mask, 0);
    for mu in 1..d {
        let r = rotate(mask, mu, d);
        if lex_less(r, best.0) {
            best = (r, mu);
        }
    }
    best
}

/// μ with Z′ = Z + μ as sets, if any.
pub fn compatible(z: &ZeroDistribution, z2: &ZeroDistribution) -> Option<usize> {
    if z.dim != z2.dim || z.indices.len() != z2.indices.len() {
        return None;
    }
    let (a, b) = (z.mask(), z2.mask());
    (0..z.dim).find(|&mu| rotate(a, mu, z.dim) == b).map(|mu| mu as usize)
}

/// All n-subsets of {0..d−1} as bitmasks, in lexicographic order of their
/// sorted index lists.
pub fn subsets_of_size(d: u32, n: u32) -> Vec<u32> {
    fn rec(start: u32, d: u32, left: u32, mask: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..=d - left {
            rec(i + 1, d, left - 1, mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if n <= d {
        rec(0, d, n, 0, &mut out);
    }
    out
}

/// Lexicographically minimal representatives of the shift classes of
/// n-subsets, in lexicographic order.
pub fn canonical_class_representatives(d: u32, n: u32) -> Result<Vec<Vec<usize>>> {
    if n == 0 || n >= d {
        return Err(Error::TrivialClass { d, n });
    }
    if d > 31 {
        return Err(Error::invalid_dimension(d, "subset masks hold at most 31 indices"));
    }
    Ok(subsets_of_size(d, n)
        .into_iter()
        .filter(|&m| canonical_shift(m, d).0 == m)
        .map(|m| mask_to_indices(m, d))
        .collect())
}

/// Number of shift classes, counted by walking every orbit.
pub fn count_shift_classes(d: u32, n: u32) -> usize {
    let all = subsets_of_size(d, n);
    let mut seen = std::collections::HashSet::with_capacity(all.len());
    let mut classes = 0;
    for m in all {
        if seen.contains(&m) {
            continue;
        }
        classes += 1;
        for mu in 0..d {
            seen.insert(rotate(m, mu, d));
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::build_mub_set;

    fn zd(d: u32, idx: &[usize]) -> ZeroDistribution {
        ZeroDistribution {
            dim: d,
            basis: 1,
            indices: idx.to_vec(),
        }
    }

    #[test]
    fn shifts_between_distributions() {
        assert_eq!(compatible(&zd(5, &[0, 1]), &zd(5, &[2, 3])), Some(2));
        assert_eq!(compatible(&zd(5, &[0, 1]), &zd(5, &[0, 2])), None);
        assert_eq!(compatible(&zd(5, &[1, 3]), &zd(5, &[1, 3])), Some(0));
        assert_eq!(compatible(&zd(5, &[0, 1]), &zd(5, &[0, 1, 2])), None);
    }

    #[test]
    fn class_counts() {
        assert_eq!(
            canonical_class_representatives(5, 2).unwrap(),
            vec![vec![0, 1], vec![0, 2]]
        );
        assert_eq!(canonical_class_representatives(7, 3).unwrap().len(), 5);
        assert_eq!(canonical_class_representatives(11, 5).unwrap().len(), 42);
        assert!(matches!(
            canonical_class_representatives(5, 0),
            Err(Error::TrivialClass { .. })
        ));
        assert!(canonical_class_representatives(5, 5).is_err());
    }

    #[test]
    fn canonical_shift_maps_into_class() {
        for m in subsets_of_size(7, 3) {
            let (c, mu) = canonical_shift(m, 7);
            assert_eq!(rotate(m, mu, 7), c);
            assert_eq!(canonical_shift(c, 7), (c, 0));
        }
    }

    #[test]
    fn zeros_of_a_qutrit_state() {
        let set = build_mub_set(3).unwrap();
        let psi = StateVector::from_exponents(3, &[Some(0), Some(1), None]).unwrap();
        let z0 = zero_distribution(&psi, 0, &set).unwrap();
        assert_eq!(z0.indices, vec![2]);
    }
}
