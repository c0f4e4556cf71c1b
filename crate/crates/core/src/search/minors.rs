use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{determinant, Cyclotomic, Ring, ZOmega};
use crate::mub::{build_mub_set, check_prime, FrameTables};

/// Which matrix to certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixSelector {
    Fourier,
    /// H_j for j ≥ 1 (H_1 is the Fourier matrix).
    Hadamard(usize),
    /// H_k†H_j for distinct k, j ≥ 1.
    Product { k: usize, j: usize },
}

impl std::fmt::Display for MatrixSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixSelector::Fourier => write!(f, "F"),
            MatrixSelector::Hadamard(j) => write!(f, "H_{j}"),
            MatrixSelector::Product { k, j } => write!(f, "H_{k}†H_{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinorMode {
    Exhaustive { max_order: usize },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorReport {
    pub d: u32,
    pub matrix: String,
    pub mode: MinorMode,
    pub minors_checked: u64,
    pub all_nonzero: bool,
}

/// Every selector the standard set offers at dimension d.
pub fn all_selectors(d: u32, products: bool) -> Vec<MatrixSelector> {
    let n = d as usize;
    let mut out = vec![MatrixSelector::Fourier];
    out.extend((2..=n).map(MatrixSelector::Hadamard));
    if products {
        for k in 1..=n {
            for j in 1..=n {
                if k != j {
                    out.push(MatrixSelector::Product { k, j });
                }
            }
        }
    }
    out
}

/// Entries of the selected matrix. For odd d they are roots of unity in
/// Z[ω] (the common Gauss-sum factor of a product is dropped, which does not
/// affect whether a minor vanishes); d = 2 works over Q(i).
fn matrix<R: Ring>(d: u32, sel: MatrixSelector, lift: impl Fn(Cyclotomic) -> R, root: impl Fn(i64) -> R) -> Result<Vec<Vec<R>>> {
    let n = d as usize;
    let bad = |why: &str| Err(Error::invalid_dimension(d, format!("{sel}: {why}")));
    let set = build_mub_set(d)?;
    match sel {
        MatrixSelector::Fourier | MatrixSelector::Hadamard(_) => {
            let j = if let MatrixSelector::Hadamard(j) = sel { j } else { 1 };
            if j == 0 || j > n {
                return bad("Hadamard index must lie in 1..=d");
            }
            Ok((0..n)
                .map(|x| {
                    (0..n)
                        .map(|k| root(set.basis(j).exponent(x, k).expect("Hadamard entries are roots") as i64))
                        .collect()
                })
                .collect())
        }
        MatrixSelector::Product { k, j } => {
            if k == j || k == 0 || j == 0 || k > n || j > n {
                return bad("need distinct indices in 1..=d");
            }
            if d == 2 {
                let (bk, bj) = (set.basis(k), set.basis(j));
                return Ok((0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| {
                                let v = (0..n).fold(Cyclotomic::zero(4), |acc, x| {
                                    &acc + &(&bk.entry(x, r).conj() * &bj.entry(x, c))
                                });
                                lift(v)
                            })
                            .collect()
                    })
                    .collect());
            }
            let tables = FrameTables::new(d)?;
            Ok((0..n)
                .map(|r| (0..n).map(|c| root(tables.exponent(k, j, r, c) as i64)).collect())
                .collect())
        }
    }
}

/// Determinants of every square submatrix with rows `rows`: one pass over
/// column subsets yields det(rows[..t] × C) for every C with |C| = t.
fn minors_for_rows<R: Ring>(m: &[Vec<R>], rows: &[usize], mut visit: impl FnMut(u32, &R) -> Result<()>) -> Result<()> {
    let n = m[0].len();
    let r = rows.len();
    let mut f: Vec<Option<R>> = vec![None; 1 << n];
    f[0] = Some(m[0][0].one_like());
    let zero = m[0][0].zero_like();
    for mask in 0usize..(1 << n) {
        let t = mask.count_ones() as usize;
        if t == r {
            let v = f[mask].clone().unwrap_or_else(|| zero.clone());
            visit(mask as u32, &v)?;
            continue;
        }
        let Some(val) = f[mask].clone() else { continue };
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            let term = val.mul_elem(&m[rows[t]][c]);
            let slot = &mut f[mask | (1 << c)];
            let neg = (mask >> c).count_ones() % 2 == 1;
            *slot = Some(match (slot.take(), neg) {
                (None, false) => term,
                (None, true) => zero.sub_elem(&term),
                (Some(acc), false) => acc.add_elem(&term),
                (Some(acc), true) => acc.sub_elem(&term),
            });
        }
    }
    Ok(())
}

fn certify<R: Ring>(d: u32, sel: MatrixSelector, m: &[Vec<R>], mode: MinorMode) -> Result<u64> {
    let n = d as usize;
    let zero_minor = |rows: &[usize], cols: &[usize]| {
        Error::consistency(
            "nonvanishing minors",
            format!("{sel} at d = {d} has a zero minor with rows {rows:?} and columns {cols:?}"),
        )
    };
    let mut checked = 0u64;
    match mode {
        MinorMode::Exhaustive { max_order } => {
            if d > 7 {
                return Err(Error::invalid_dimension(d, "exhaustive minors stop at d = 7; use sampling"));
            }
            for rmask in 1u32..(1 << n) {
                let rows: Vec<usize> = (0..n).filter(|&i| rmask & (1 << i) != 0).collect();
                if rows.len() > max_order {
                    continue;
                }
                minors_for_rows(m, &rows, |cmask, det| {
                    checked += 1;
                    if det.is_zero_elem() {
                        let cols: Vec<usize> = (0..n).filter(|&i| cmask & (1 << i) != 0).collect();
                        return Err(zero_minor(&rows, &cols));
                    }
                    Ok(())
                })?;
            }
        }
        MinorMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let r = rng.gen_range(1..=n);
                let mut rows = sample(&mut rng, n, r).into_vec();
                let mut cols = sample(&mut rng, n, r).into_vec();
                rows.sort_unstable();
                cols.sort_unstable();
                let sub: Vec<Vec<R>> = rows.iter().map(|&i| cols.iter().map(|&c| m[i][c].clone()).collect()).collect();
                checked += 1;
                if determinant(&sub).is_zero_elem() {
                    return Err(zero_minor(&rows, &cols));
                }
            }
        }
    }
    Ok(checked)
}

/// Checks that square submatrices of the selected matrix have nonzero
/// determinant: all of them up to `max_order`, or a seeded random sample.
pub fn minors_certify(d: u32, sel: MatrixSelector, mode: MinorMode) -> Result<MinorReport> {
    check_prime(d)?;
    let checked = if d == 2 {
        let m = matrix(d, sel, |c| c, |e| Cyclotomic::root(4, e))?;
        certify(d, sel, &m, mode)?
    } else {
        let m = matrix(d, sel, |_| unreachable!("odd d uses frame tables"), |e| ZOmega::root(d, e))?;
        certify(d, sel, &m, mode)?
    };
    Ok(MinorReport {
        d,
        matrix: sel.to_string(),
        mode,
        minors_checked: checked,
        all_nonzero: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom_sq_sum(n: u64) -> u64 {
        // Σ_r C(n,r)² = C(2n,n); subtract the empty minor
        (1..=n).fold(1u64, |acc, i| acc * (n + i) / i) - 1
    }

    #[test]
    fn fourier_minors_d5() {
        let r = minors_certify(5, MatrixSelector::Fourier, MinorMode::Exhaustive { max_order: 5 }).unwrap();
        assert_eq!(r.minors_checked, binom_sq_sum(5));
    }

    #[test]
    fn product_minors_d5_and_qubit() {
        let sel = MatrixSelector::Product { k: 3, j: 2 };
        assert!(minors_certify(5, sel, MinorMode::Exhaustive { max_order: 5 }).is_ok());
        for sel in all_selectors(2, true) {
            let r = minors_certify(2, sel, MinorMode::Exhaustive { max_order: 2 }).unwrap();
            assert_eq!(r.minors_checked, 5);
        }
    }

    #[test]
    fn sampled_mode_d7() {
        let sel = MatrixSelector::Product { k: 5, j: 1 };
        let r = minors_certify(7, sel, MinorMode::Sampled { samples: 2000, seed: 1 }).unwrap();
        assert_eq!(r.minors_checked, 2000);
    }

    #[test]
    fn a_singular_matrix_is_caught() {
        // The identity has vanishing off-diagonal 1×1 minors.
        let m = vec![vec![ZOmega::from_int(5, 1), ZOmega::zero(5)], vec![ZOmega::zero(5), ZOmega::from_int(5, 1)]];
        let err = certify(5, MatrixSelector::Fourier, &m, MinorMode::Exhaustive { max_order: 2 });
        assert!(matches!(err, Err(Error::Consistency { .. })));
    }

    #[test]
    fn bad_selectors_are_rejected() {
        assert!(minors_certify(5, MatrixSelector::Product { k: 2, j: 2 }, MinorMode::Exhaustive { max_order: 1 }).is_err());
        assert!(minors_certify(11, MatrixSelector::Fourier, MinorMode::Exhaustive { max_order: 2 }).is_err());
        assert!(minors_certify(6, MatrixSelector::Fourier, MinorMode::Exhaustive { max_order: 2 }).is_err());
    }
}
