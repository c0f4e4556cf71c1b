use mub_core::exactfield::{gauss_sum, QuadraticGaussElement};
use mub_core::mub::{
    build_mub_set, check_identical_entries, check_prime, check_root_frequency, check_unbiasedness,
    monomial_decompose, qubit_monomials,
};
use mub_core::search::{all_selectors, classify_d3, minors_certify, verify_lemma5, MinorMode};
use mub_core::support::{all_pair_checks, random_state, support_profile, support_size, symmetry_variants};
use mub_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::Tabular;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub items: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub d: u32,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl Tabular for VerifyReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["check", "items", "result"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                let result = match (&c.detail, c.passed) {
                    (_, true) => "pass".to_string(),
                    (Some(d), false) => format!("FAIL: {d}"),
                    (None, false) => "FAIL".to_string(),
                };
                vec![c.name.clone(), c.items.to_string(), result]
            })
            .collect()
    }
}

fn fuzz_pairs(d: u32, samples: usize, seed: u64) -> Result<u64> {
    let set = build_mub_set(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let psi = random_state(&set, &mut rng);
        let p = support_profile(&psi, &set)?;
        if let Some(c) = all_pair_checks(&p).into_iter().find(|c| !c.holds()) {
            return Err(Error::consistency(
                "pair inequality",
                format!("bases {} and {} have sizes {:?}", c.j, c.k, p.sizes),
            ));
        }
        let j = rng.gen_range(0..=d as usize);
        for (kind, v) in symmetry_variants(&psi, &set, j, &mut rng)? {
            if support_size(&v, set.basis(j))? != p.sizes[j] {
                return Err(Error::consistency("support symmetry", format!("{kind:?} changes the support in basis {j}")));
            }
        }
    }
    Ok(samples as u64)
}

/// Runs every exact check available at dimension d. Violations are collected
/// per check; anything else (a bad dimension, say) aborts with an error.
pub fn cmd_verify_all(d: u32, samples: usize, seed: u64) -> Result<VerifyReport> {
    check_prime(d)?;
    if d > 13 {
        return Err(Error::invalid_dimension(d, "verify-all covers d ≤ 13"));
    }
    let set = build_mub_set(d)?;
    let odd = d > 2;
    let mut checks: Vec<(&str, Box<dyn Fn() -> Result<u64> + '_>)> = vec![
        ("orthogonality and unbiasedness", Box::new(|| check_unbiasedness(&set))),
        (
            "monomial decomposition",
            Box::new(move || {
                if !odd {
                    qubit_monomials()?;
                    return Ok(2);
                }
                let mut n = 0;
                for j in 1..=d as usize {
                    for k in (1..=d as usize).filter(|&k| k != j) {
                        monomial_decompose(j, k, d)?;
                        n += 1;
                    }
                }
                Ok(n)
            }),
        ),
        (
            "root frequency",
            Box::new(|| check_root_frequency(&set).map(|_| d as u64 * d as u64)),
        ),
    ];
    if odd {
        checks.push((
            "identical entries",
            Box::new(|| check_identical_entries(&set).map(|_| (d as u64 * d as u64).pow(2))),
        ));
        checks.push((
            "quadratic Gauss sums",
            Box::new(move || {
                let g = QuadraticGaussElement::new(d)?;
                let mut n = 0;
                for a in 1..d as i64 {
                    for l in 0..d as i64 {
                        if gauss_sum(d, a, l)? != g.predicted_sum(a, l)? {
                            return Err(Error::consistency("quadratic Gauss sums", format!("a = {a}, ℓ = {l}")));
                        }
                        n += 1;
                    }
                }
                Ok(n)
            }),
        ));
    }
    checks.push((
        "nonvanishing minors",
        Box::new(move || {
            let mode = if d <= 7 {
                MinorMode::Exhaustive { max_order: d as usize }
            } else {
                MinorMode::Sampled { samples: 2000, seed }
            };
            let mut n = 0;
            for sel in all_selectors(d, d <= 5) {
                n += minors_certify(d, sel, mode)?.minors_checked;
            }
            Ok(n)
        }),
    ));
    checks.push(("pair inequalities and symmetries", Box::new(move || fuzz_pairs(d, samples, seed))));
    if d == 3 {
        checks.push(("qutrit classification", Box::new(|| classify_d3().map(|r| r.len() as u64))));
    }
    if d == 5 {
        checks.push((
            "support three in two bases",
            Box::new(|| verify_lemma5().map(|r| (r.rays + r.determinants) as u64)),
        ));
    }

    let mut outcomes = Vec::with_capacity(checks.len());
    for (name, run) in checks {
        let outcome = match run() {
            Ok(items) => CheckOutcome {
                name: name.into(),
                passed: true,
                items,
                detail: None,
            },
            Err(e @ Error::Consistency { .. }) => CheckOutcome {
                name: name.into(),
                passed: false,
                items: 0,
                detail: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        outcomes.push(outcome);
    }
    Ok(VerifyReport {
        d,
        passed: outcomes.iter().all(|c| c.passed),
        checks: outcomes,
    })
}
