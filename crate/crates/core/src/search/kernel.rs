use crate::error::{Error, Result};
use crate::exactfield::Cyclotomic;
use crate::mub::{inner_product, MubSet, StateVector};

/// Linear conditions ⟨v|ψ⟩ = 0 for a list of constraint vectors v.
#[derive(Clone, Debug)]
pub struct KernelSystem {
    dim: u32,
    rows: Vec<StateVector>,
    /// (basis, κ) for rows taken from the standard set
    pub labels: Vec<(usize, usize)>,
}

impl KernelSystem {
    pub fn new(dim: u32, rows: Vec<StateVector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: r.dim(),
            });
        }
        Ok(KernelSystem {
            dim,
            rows,
            labels: Vec::new(),
        })
    }

    /// Rows ⟨φ_κ^j| for every (j, κ) listed.
    pub fn from_zero_sets(set: &MubSet, zeros: &[(usize, Vec<usize>)]) -> Self {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (j, ks) in zeros {
            for &k in ks {
                rows.push(set.state(*j, k));
                labels.push((*j, k));
            }
        }
        KernelSystem {
            dim: set.dim(),
            rows,
            labels,
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn rows(&self) -> &[StateVector] {
        &self.rows
    }

    /// Coefficient matrix: row i holds conj(v_i).
    fn matrix(&self) -> Vec<Vec<Cyclotomic>> {
        self.rows
            .iter()
            .map(|r| r.entries().iter().map(Cyclotomic::conj).collect())
            .collect()
    }

    /// True when ψ satisfies every condition exactly.
    pub fn satisfied_by(&self, psi: &StateVector) -> Result<bool> {
        for r in &self.rows {
            if !inner_product(r, psi)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Fraction-free (Bareiss) row echelon form. Returns the pivot columns; the
/// matrix is overwritten, with every entry below a pivot cleared.
fn bareiss_echelon(m: &mut [Vec<Cyclotomic>]) -> Result<Vec<usize>> {
    let rows = m.len();
    if rows == 0 {
        return Ok(Vec::new());
    }
    let cols = m[0].len();
    let order = m[0][0].order();
    let mut prev = Cyclotomic::one(order);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let prev_inv = prev.inverse()?;
        for i in r + 1..rows {
            for k in c + 1..cols {
                let num = &(&m[r][c] * &m[i][k]) - &(&m[i][c] * &m[r][k]);
                m[i][k] = &num * &prev_inv;
            }
            m[i][c] = Cyclotomic::zero(order);
        }
        // Entries left of the pivot in lower rows are already zero.
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Basis of {x : M x = 0}, one vector per free column.
pub fn nullspace(matrix: &[Vec<Cyclotomic>], cols: usize, order: u32) -> Result<Vec<Vec<Cyclotomic>>> {
    let mut m = matrix.to_vec();
    let pivots = bareiss_echelon(&mut m)?;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![Cyclotomic::zero(order); cols];
        x[f] = Cyclotomic::one(order);
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Cyclotomic::zero(order);
            for c in pc + 1..cols {
                if !x[c].is_zero() && !m[i][c].is_zero() {
                    acc = &acc + &(&m[i][c] * &x[c]);
                }
            }
            x[pc] = -&acc.checked_div(&m[i][pc])?;
        }
        out.push(x);
    }
    Ok(out)
}

/// Rank of a matrix over Q(ω).
pub fn rank(matrix: &[Vec<Cyclotomic>]) -> Result<usize> {
    let mut m = matrix.to_vec();
    Ok(bareiss_echelon(&mut m)?.len())
}

/// All solutions of the system, as a basis of the solution space.
pub fn kernel_basis(sys: &KernelSystem) -> Result<Vec<StateVector>> {
    let order = crate::mub::root_order(sys.dim);
    let cols = sys.dim as usize;
    let vs = if sys.rows.is_empty() {
        (0..cols)
            .map(|i| (0..cols).map(|c| Cyclotomic::from_int(order, (i == c) as i64)).collect())
            .collect()
    } else {
        nullspace(&sys.matrix(), cols, order)?
    };
    let states = vs
        .into_iter()
        .map(|v| StateVector::new(sys.dim, v))
        .collect::<Result<Vec<_>>>()?;
    for s in &states {
        if !sys.satisfied_by(s)? {
            return Err(Error::consistency("back-substitution", "kernel vector fails a constraint"));
        }
    }
    Ok(states)
}

/// The unique ray orthogonal to d−1 independent constraint vectors.
pub fn kernel_ray(sys: &KernelSystem) -> Result<StateVector> {
    let d = sys.dim as usize;
    if sys.rows.len() != d - 1 {
        return Err(Error::invalid_dimension(
            sys.dim,
            format!("a kernel ray needs {} constraints, got {}", d - 1, sys.rows.len()),
        ));
    }
    let mut basis = kernel_basis(sys)?;
    if basis.len() != 1 {
        return Err(Error::consistency(
            "linear independence of MU vectors",
            format!("{} constraint rows {:?} have a {}-dimensional kernel", d - 1, sys.labels, basis.len()),
        ));
    }
    let psi = basis.pop().expect("one vector").normalized_ray()?;
    if !sys.satisfied_by(&psi)? {
        return Err(Error::consistency("back-substitution", "kernel ray fails a constraint"));
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::build_mub_set;

    #[test]
    fn qutrit_ray_from_two_bases() {
        let set = build_mub_set(3).unwrap();
        // ⟨2|ψ⟩ = 0 and ⟨φ_κ^1|ψ⟩ = 0: (1, −1, 0) is orthogonal to φ_0^1.
        let sys = KernelSystem::from_zero_sets(&set, &[(0, vec![2]), (1, vec![0])]);
        let psi = kernel_ray(&sys).unwrap();
        let expected = StateVector::new(
            3,
            vec![
                Cyclotomic::from_int(3, 1),
                Cyclotomic::from_int(3, -1),
                Cyclotomic::zero(3),
            ],
        )
        .unwrap();
        assert!(psi.same_ray(&expected));
    }

    #[test]
    fn single_basis_gives_missing_vector() {
        let set = build_mub_set(5).unwrap();
        let sys = KernelSystem::from_zero_sets(&set, &[(2, vec![0, 1, 3, 4])]);
        let psi = kernel_ray(&sys).unwrap();
        assert!(psi.same_ray(&set.state(2, 2)));
    }

    #[test]
    fn dependent_rows_are_reported() {
        let set = build_mub_set(3).unwrap();
        let rows = vec![set.state(1, 0), set.state(1, 0)];
        let sys = KernelSystem::new(3, rows).unwrap();
        assert!(matches!(kernel_ray(&sys), Err(Error::Consistency { .. })));
        assert_eq!(kernel_basis(&sys).unwrap().len(), 2);
    }
}
