use rand::seq::SliceRandom;
use rand::Rng;

use super::expansion;
use crate::error::Result;
use crate::exactfield::Cyclotomic;
use crate::mub::{MubSet, StateVector};

fn random_coefficient<R: Rng + ?Sized>(order: u32, rng: &mut R) -> Cyclotomic {
    let phase = Cyclotomic::root(order, rng.gen_range(0..order as i64));
    if rng.gen_bool(0.5) {
        phase
    } else {
        let mut m = rng.gen_range(-3i64..=3);
        if m == 0 {
            m = 2;
        }
        &phase * &Cyclotomic::from_int(order, m)
    }
}

/// Σ_k c_k |φ_k^j⟩ over a random subset of k.
fn sparse_in_basis<R: Rng + ?Sized>(set: &MubSet, j: usize, rng: &mut R) -> StateVector {
    let d = set.dim() as usize;
    let order = set.order();
    let size = rng.gen_range(1..=d);
    let mut ks: Vec<usize> = (0..d).collect();
    ks.shuffle(rng);
    let mut entries = vec![Cyclotomic::zero(order); d];
    for &k in &ks[..size] {
        let c = random_coefficient(order, rng);
        for (x, e) in entries.iter_mut().enumerate() {
            *e = &*e + &(&c * &set.basis(j).entry(x, k));
        }
    }
    StateVector::new(set.dim(), entries).expect("consistent dimension")
}

/// A random nonzero state: sparse in one randomly chosen basis, sometimes
/// superposed with a sparse vector of a second basis.
pub fn random_state<R: Rng + ?Sized>(set: &MubSet, rng: &mut R) -> StateVector {
    let nb = set.dim() as usize + 1;
    loop {
        let j = if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..nb) };
        let mut psi = sparse_in_basis(set, j, rng);
        if rng.gen_bool(0.25) {
            let other = sparse_in_basis(set, rng.gen_range(0..nb), rng);
            psi = psi.checked_add(&other).expect("same dimension");
        }
        if !psi.is_zero() {
            return psi;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryKind {
    Rephase,
    Permute,
    Conjugate,
}

/// States whose coefficients in basis j are those of ψ rephased by random
/// roots, permuted at random, or conjugated. Each has the same support in
/// basis j as ψ.
pub fn symmetry_variants<R: Rng + ?Sized>(
    psi: &StateVector,
    set: &MubSet,
    j: usize,
    rng: &mut R,
) -> Result<Vec<(SymmetryKind, StateVector)>> {
    let d = set.dim() as usize;
    let order = set.order();
    let coeffs = expansion(psi, set.basis(j))?;
    let rebuild = |c: Vec<Cyclotomic>| -> StateVector {
        let entries = (0..d)
            .map(|x| {
                c.iter().enumerate().fold(Cyclotomic::zero(order), |acc, (k, ck)| {
                    if ck.is_zero() {
                        acc
                    } else {
                        &acc + &(ck * &set.basis(j).entry(x, k))
                    }
                })
            })
            .collect();
        StateVector::new(set.dim(), entries).expect("consistent dimension")
    };
    let rephased = coeffs
        .iter()
        .map(|c| c.mul_root(rng.gen_range(0..order as i64)))
        .collect();
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let permuted = perm.iter().map(|&k| coeffs[k].clone()).collect();
    let conjugated = coeffs.iter().map(Cyclotomic::conj).collect();
    Ok(vec![
        (SymmetryKind::Rephase, rebuild(rephased)),
        (SymmetryKind::Permute, rebuild(permuted)),
        (SymmetryKind::Conjugate, rebuild(conjugated)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::build_mub_set;
    use crate::support::support_size;
    use rand::SeedableRng;

    #[test]
    fn variants_keep_the_support() {
        let set = build_mub_set(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let psi = random_state(&set, &mut rng);
            let j = rng.gen_range(0..6);
            let s = support_size(&psi, set.basis(j)).unwrap();
            for (_, v) in symmetry_variants(&psi, &set, j, &mut rng).unwrap() {
                assert_eq!(support_size(&v, set.basis(j)).unwrap(), s);
            }
        }
    }
}
