use serde::{Deserialize, Serialize};

use super::framed::FramedEngine;
use crate::error::{Error, Result};
use crate::exactfield::{determinant, ZOmega};
use crate::mub::{build_mub_set, MubSet};
use crate::support::subsets_of_size;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma5Report {
    pub rays: usize,
    pub determinants: usize,
    pub min_total: usize,
}

/// Row ⟨φ_κ^j| as a vector of conjugated entries in Z[ω].
fn bra(set: &MubSet, j: usize, kappa: usize) -> Vec<ZOmega> {
    let d = set.dim();
    (0..d as usize)
        .map(|x| match set.basis(j).exponent(x, kappa) {
            Some(e) => ZOmega::root(d, -(e as i64)),
            None => ZOmega::zero(d),
        })
        .collect()
}

/// At d = 5, a state with support three in two bases has support five in
/// the other four.
///
/// Checked twice. First, each pair of two-element zero sets fixes a ray,
/// whose supports are computed. Second, adding any fifth row ⟨φ_κ^{j″}| from
/// a third basis to the four constraint rows gives a nonsingular 5×5 matrix,
/// so no further zero can appear.
pub fn verify_lemma5() -> Result<Lemma5Report> {
    let d = 5u32;
    let set = build_mub_set(d)?;
    let engine = FramedEngine::new(d)?;
    let pairs = subsets_of_size(d, 2);
    let mut report = Lemma5Report {
        rays: 0,
        determinants: 0,
        min_total: usize::MAX,
    };
    let violation = |detail: String| Error::consistency("support three in two bases", detail);
    for j in 0..=d as usize {
        for jp in j + 1..=d as usize {
            for &zj in &pairs {
                for &zp in &pairs {
                    let ray = engine
                        .solve(j, zj, &[(jp, zp)])?
                        .ok_or_else(|| Error::consistency("linear independence of MU vectors", format!("bases {j},{jp}")))?;
                    report.rays += 1;
                    let sizes = engine.sizes(&ray);
                    for (b, &s) in sizes.iter().enumerate() {
                        let want = if b == j || b == jp { 3 } else { 5 };
                        if s != want {
                            return Err(violation(format!(
                                "zeros {zj:#07b} in basis {j} and {zp:#07b} in basis {jp} give support {s} in basis {b}"
                            )));
                        }
                    }
                    report.min_total = report.min_total.min(sizes.iter().sum());

                    let mut rows: Vec<Vec<ZOmega>> = Vec::with_capacity(5);
                    for (b, mask) in [(j, zj), (jp, zp)] {
                        for kappa in 0..d as usize {
                            if mask & (1 << kappa) != 0 {
                                rows.push(bra(&set, b, kappa));
                            }
                        }
                    }
                    for third in (0..=d as usize).filter(|&b| b != j && b != jp) {
                        for kappa in 0..d as usize {
                            rows.push(bra(&set, third, kappa));
                            let det = determinant(&rows);
                            rows.pop();
                            report.determinants += 1;
                            if det.is_zero() {
                                return Err(violation(format!(
                                    "singular 5×5 matrix for bases {j},{jp} with extra row ({third},{kappa})"
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma5_holds_and_forces_total_26() {
        let r = verify_lemma5().unwrap();
        assert_eq!(r.rays, 15 * 100);
        assert_eq!(r.determinants, 15 * 100 * 4 * 5);
        assert_eq!(r.min_total, 26);
    }
}
