use super::kernel::{kernel_ray, KernelSystem};
use crate::error::{Error, Result};
use crate::exactfield::Cyclotomic;
use crate::mub::{build_mub_set, StateVector};
use crate::support::support_profile;

/// (1, −ω^m, 0), (1, 0, −ω^m), (0, 1, −ω^m) for m = 0, 1, 2.
pub fn qutrit_saturating_states() -> Vec<StateVector> {
    let mut out = Vec::with_capacity(9);
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        for m in 0..3 {
            let mut entries = vec![Cyclotomic::zero(3); 3];
            entries[a] = Cyclotomic::one(3);
            entries[b] = -&Cyclotomic::root(3, m);
            out.push(StateVector::new(3, entries).expect("three entries"));
        }
    }
    out
}

/// Every qutrit ray with support two in all four bases.
///
/// Such a state has one zero in the computational basis and one in each
/// Hadamard basis, so it is the kernel ray of a zero in basis 0 together
/// with a zero in some basis j. All 3·3·3 choices are solved and the rays
/// with profile (2,2,2,2) are collected up to scale.
pub fn classify_d3() -> Result<Vec<StateVector>> {
    let set = build_mub_set(3)?;
    let mut found: Vec<StateVector> = Vec::new();
    for x in 0..3 {
        for j in 1..=3 {
            for kappa in 0..3 {
                let sys = KernelSystem::from_zero_sets(&set, &[(0, vec![x]), (j, vec![kappa])]);
                let psi = kernel_ray(&sys)?;
                let profile = support_profile(&psi, &set)?;
                if profile.sizes.iter().all(|&s| s == 2) && !found.iter().any(|f| f.same_ray(&psi)) {
                    found.push(psi);
                }
            }
        }
    }
    let expected = qutrit_saturating_states();
    let all_listed = found.iter().all(|f| expected.iter().any(|e| e.same_ray(f)));
    if found.len() != 9 || !all_listed {
        return Err(Error::consistency(
            "qutrit classification",
            format!("found {} saturating rays, {} of them outside the known list", found.len(),
                found.iter().filter(|f| !expected.iter().any(|e| e.same_ray(f))).count()),
        ));
    }
    found.sort_by_key(|f| expected.iter().position(|e| e.same_ray(f)));
    Ok(found)
}
