use super::{root_order, MubSet};
use crate::exactfield::{Cyclotomic, ZOmega};
use crate::error::{Error, Result};

/// Number of rows x at which the scaled entry ⟨x|φ_k^j⟩ equals ω^n.
pub fn root_frequency(set: &MubSet, j: usize, k: usize, n: u32) -> usize {
    let b = set.basis(j);
    (0..set.dim() as usize)
        .filter(|&x| b.exponent(x, k) == Some(n))
        .count()
}

/// Every root of unity appears at most twice in a column of H_j for j ≥ 2,
/// and exactly once in each non-constant column of the Fourier matrix
/// (column 0 of F is all ones).
pub fn check_root_frequency(set: &MubSet) -> Result<()> {
    let d = set.dim();
    let du = d as usize;
    for j in 1..=du {
        for k in 0..du {
            for n in 0..root_order(d) {
                let c = root_frequency(set, j, k, n);
                let ok = if j == 1 && k == 0 {
                    c == if n == 0 { du } else { 0 }
                } else if j == 1 {
                    d == 2 && n % 2 == 1 && c == 0 || c == 1
                } else {
                    c <= 2
                };
                if !ok {
                    return Err(Error::consistency(
                        "root frequency",
                        format!("ω^{n} occurs {c} times in column {k} of basis {j} (d = {d})"),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// max over n of #{x : ⟨x|φ_{k1}^{j1}⟩ = ω^n ⟨x|φ_{k2}^{j2}⟩}, for Hadamard bases.
pub fn max_identical_entries(set: &MubSet, (j1, k1): (usize, usize), (j2, k2): (usize, usize)) -> usize {
    let order = root_order(set.dim());
    let mut counts = vec![0usize; order as usize];
    for x in 0..set.dim() as usize {
        let a = set.basis(j1).exponent(x, k1).expect("Hadamard basis");
        let b = set.basis(j2).exponent(x, k2).expect("Hadamard basis");
        counts[((a + order - b) % order) as usize] += 1;
    }
    counts.into_iter().max().unwrap_or(0)
}

/// Two states from different Hadamard bases agree up to a fixed root in at
/// most two rows; two different states of one basis agree in exactly one row
/// for every root.
pub fn check_identical_entries(set: &MubSet) -> Result<()> {
    let d = set.dim();
    if d == 2 {
        return Err(Error::invalid_dimension(2, "stated for odd primes"));
    }
    let du = d as usize;
    for j1 in 1..=du {
        for j2 in 1..=du {
            for k1 in 0..du {
                for k2 in 0..du {
                    if j1 != j2 {
                        let m = max_identical_entries(set, (j1, k1), (j2, k2));
                        if m > 2 {
                            return Err(Error::consistency(
                                "identical entries",
                                format!("φ_{k1}^{j1} and φ_{k2}^{j2} agree in {m} rows (d = {d})"),
                            ));
                        }
                    } else if k1 != k2 {
                        let mut counts = vec![0usize; du];
                        for x in 0..du {
                            let a = set.basis(j1).exponent(x, k1).expect("Hadamard basis");
                            let b = set.basis(j2).exponent(x, k2).expect("Hadamard basis");
                            counts[((a + d - b) % d) as usize] += 1;
                        }
                        if counts.iter().any(|&c| c != 1) {
                            return Err(Error::consistency(
                                "identical entries",
                                format!("φ_{k1}^{j1}, φ_{k2}^{j1}: counts {counts:?} (d = {d})"),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Exact orthogonality within each basis and unbiasedness across bases, in
/// the scaled convention: a computational vector has squared norm 1, a
/// Hadamard column squared norm d, and |⟨φ_k^j|φ_l^{j′}⟩|² = n_j·n_{j′}/d
/// for j ≠ j′. Returns the number of overlaps checked.
pub fn check_unbiasedness(set: &MubSet) -> Result<u64> {
    let d = set.dim() as usize;
    let norm = |j: usize| if j == 0 { 1i64 } else { d as i64 };
    let mut checked = 0u64;
    let fail = |what: &str, j: usize, k: usize, jp: usize, l: usize| {
        Error::consistency(what, format!("⟨φ_{k}^{j}|φ_{l}^{jp}⟩ at d = {d}"))
    };
    for jp in 0..=d {
        for l in 0..d {
            let v = set.state(jp, l);
            for j in 0..=d {
                let coeffs: Vec<Cyclotomic> = if d == 2 {
                    set.basis(j).coefficients(&v)?
                } else {
                    let z = v.to_zomega().expect("integral basis vector");
                    set.basis(j).coefficients_zomega(&z).iter().map(ZOmega::to_cyclotomic).collect()
                };
                for (k, c) in coeffs.iter().enumerate() {
                    checked += 1;
                    if j == jp {
                        let want = if k == l { norm(j) } else { 0 };
                        if *c != Cyclotomic::from_int(set.order(), want) {
                            return Err(fail("orthogonality", j, k, jp, l));
                        }
                    } else {
                        let sq = c * &c.conj();
                        if sq != Cyclotomic::from_int(set.order(), norm(j) * norm(jp) / d as i64) {
                            return Err(fail("unbiasedness", j, k, jp, l));
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}
