use super::{build_mub_set, MubSet};
use crate::error::{Error, Result};
use crate::exactfield::{gauss_sum_int, jacobi_symbol, mod_inverse, Cyclotomic, ZOmega};

/// H_k†H_j = (monomial)·H_t† with t = 1+χ and 4(j−k)χ ≡ 1 (mod d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDecomposition {
    pub d: u32,
    pub j: usize,
    pub k: usize,
    pub chi: i64,
    pub t: usize,
    /// ℓ ↦ 2ℓχ mod d
    pub permutation: Vec<usize>,
    /// (j−k / d)·ω^{−ℓ²χ}; the verified entry at (ℓ, 2ℓχ) is d·g times this.
    pub phases: Vec<Cyclotomic>,
}

fn check_labels(d: u32, j: usize, k: usize) -> Result<()> {
    if d == 2 || d.is_multiple_of(2) {
        return Err(Error::invalid_dimension(d, "the monomial decomposition needs an odd prime"));
    }
    let du = d as usize;
    if j == k || !(1..=du).contains(&j) || !(1..=du).contains(&k) {
        return Err(Error::invalid_dimension(
            d,
            format!("labels j = {j}, k = {k} must be distinct and lie in 1..={d}"),
        ));
    }
    Ok(())
}

/// Scaled H_k†H_j as a matrix over Z[ω]; entry (ℓ, ℓ′) is ⟨φ_ℓ^k|φ_ℓ′^j⟩.
fn overlap_matrix(set: &MubSet, j: usize, k: usize) -> Vec<Vec<ZOmega>> {
    let d = set.dim();
    let du = d as usize;
    let mut a = vec![vec![ZOmega::zero(d); du]; du];
    for lp in 0..du {
        let col: Vec<ZOmega> = (0..du)
            .map(|x| ZOmega::root(d, set.basis(j).exponent(x, lp).expect("Hadamard") as i64))
            .collect();
        for (l, v) in set.basis(k).coefficients_zomega(&col).into_iter().enumerate() {
            a[l][lp] = v;
        }
    }
    a
}

/// a · (scaled H_t).
fn times_hadamard(set: &MubSet, a: &[Vec<ZOmega>], t: usize) -> Vec<Vec<ZOmega>> {
    let d = set.dim();
    let du = d as usize;
    let ht = set.basis(t);
    a.iter()
        .map(|row| {
            (0..du)
                .map(|m| {
                    let mut acc = ZOmega::zero(d);
                    for (y, v) in row.iter().enumerate() {
                        acc.add_rotated(v, ht.exponent(y, m).expect("Hadamard") as usize, 1);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn monomial_decompose(j: usize, k: usize, d: u32) -> Result<MonomialDecomposition> {
    check_labels(d, j, k)?;
    let set = build_mub_set(d)?;
    let di = d as i64;
    let du = d as usize;
    let a = j as i64 - k as i64;
    let chi = mod_inverse(4 * a, di)?;
    let t = 1 + chi as usize;
    let jac = jacobi_symbol(a, di)?;
    let g = gauss_sum_int(d, 1, 0)?;
    let scale = if jac > 0 { g.clone() } else { g.neg() };
    let v = times_hadamard(&set, &overlap_matrix(&set, j, k), t);

    let mut permutation = Vec::with_capacity(du);
    let mut phases = Vec::with_capacity(du);
    for (l, row) in v.iter().enumerate() {
        let li = l as i64;
        let target = (2 * li * chi).rem_euclid(di) as usize;
        let expected = scale
            .mul_root(-li * li * chi)
            .mul(&ZOmega::from_int(d, di));
        for (m, entry) in row.iter().enumerate() {
            let ok = if m == target {
                entry.sub(&expected).is_zero()
            } else {
                entry.is_zero()
            };
            if !ok {
                return Err(Error::consistency(
                    "monomial decomposition",
                    format!("d = {d}, j = {j}, k = {k}, t = {t}: entry ({l}, {m}) = {:?}", entry.to_cyclotomic()),
                ));
            }
        }
        permutation.push(target);
        phases.push(
            Cyclotomic::root(d, -li * li * chi)
                .scale(&num_rational::BigRational::from_integer(jac.into())),
        );
    }
    let mut seen = vec![false; du];
    for &p in &permutation {
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::consistency(
                "monomial decomposition",
                format!("ℓ ↦ 2ℓχ is not a bijection for d = {d}"),
            ));
        }
    }
    Ok(MonomialDecomposition {
        d,
        j,
        k,
        chi,
        t,
        permutation,
        phases,
    })
}

/// True iff every entry of scaled H_k†H_j·H_{t′} is nonzero.
pub fn monomial_negative_check(j: usize, k: usize, t_prime: usize, d: u32) -> Result<bool> {
    check_labels(d, j, k)?;
    if !(1..=d as usize).contains(&t_prime) {
        return Err(Error::invalid_dimension(d, format!("label t′ = {t_prime} out of range")));
    }
    let set = build_mub_set(d)?;
    let v = times_hadamard(&set, &overlap_matrix(&set, j, k), t_prime);
    Ok(v.iter().flatten().all(|e| !e.is_zero()))
}

/// The qubit analogues H_1†H_2 = M·H_2† and H_2†H_1 = M′·H_2†, recorded as
/// the scaled products F†·H_2·H_2 and H_2†·F·H_2 (each 2√2 times M, M′).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitMonomials {
    pub m: Vec<Vec<Cyclotomic>>,
    pub m_prime: Vec<Vec<Cyclotomic>>,
}

fn matmul(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = a.len();
    let order = a[0][0].order();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Cyclotomic::zero(order), |acc, l| &acc + &(&a[i][l] * &b[l][j]))
                })
                .collect()
        })
        .collect()
}

fn dagger(a: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

fn check_qubit_monomial(name: &str, m: &[Vec<Cyclotomic>]) -> Result<()> {
    let eight = Cyclotomic::from_int(4, 8);
    for row in m {
        let nonzero: Vec<&Cyclotomic> = row.iter().filter(|e| !e.is_zero()).collect();
        if nonzero.len() != 1 || (nonzero[0] * &nonzero[0].conj()) != eight {
            return Err(Error::consistency(
                "qubit monomial",
                format!("{name} row {row:?} is not a scaled monomial row"),
            ));
        }
    }
    for c in 0..m.len() {
        if m.iter().filter(|row| !row[c].is_zero()).count() != 1 {
            return Err(Error::consistency(
                "qubit monomial",
                format!("{name} column {c} is not a monomial column"),
            ));
        }
    }
    Ok(())
}

pub fn qubit_monomials() -> Result<QubitMonomials> {
    let set = build_mub_set(2)?;
    let f = set.basis(1).matrix();
    let h2 = set.basis(2).matrix();
    let m = matmul(&matmul(&dagger(&f), &h2), &h2);
    let m_prime = matmul(&matmul(&dagger(&h2), &f), &h2);
    check_qubit_monomial("M", &m)?;
    check_qubit_monomial("M′", &m_prime)?;
    Ok(QubitMonomials { m, m_prime })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_and_t_for_small_cases() {
        let m = monomial_decompose(2, 1, 5).unwrap();
        assert_eq!((m.chi, m.t), (4, 5));
        let m = monomial_decompose(3, 1, 7).unwrap();
        assert_eq!((m.chi, m.t), (1, 2));
        let m = monomial_decompose(2, 1, 3).unwrap();
        assert_eq!((m.chi, m.t), (1, 2));
        assert_eq!(m.permutation, vec![0, 2, 1]);
    }

    #[test]
    fn other_labels_give_full_matrices() {
        assert!(monomial_negative_check(2, 1, 1, 5).unwrap());
        assert!(monomial_negative_check(2, 1, 1, 3).unwrap());
        assert!(monomial_negative_check(4, 2, 3, 7).unwrap());
        assert!(!monomial_negative_check(2, 1, 5, 5).unwrap());
    }

    #[test]
    fn bad_labels_are_rejected() {
        assert!(monomial_decompose(1, 1, 5).is_err());
        assert!(monomial_decompose(0, 1, 5).is_err());
        assert!(monomial_decompose(2, 1, 2).is_err());
    }

    #[test]
    fn qubit_products_are_diagonal() {
        let q = qubit_monomials().unwrap();
        let i = Cyclotomic::root(4, 1);
        let two = Cyclotomic::from_int(4, 2);
        assert_eq!(q.m[0][0], &two + &(&two * &i));
        assert_eq!(q.m[1][1], &two - &(&two * &i));
        assert!(q.m[0][1].is_zero());
    }
}
