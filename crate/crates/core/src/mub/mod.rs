//! The standard complete set of mutually unbiased bases in prime dimension.
//!
//! Everything is kept in the √d-scaled convention: basis vectors have
//! ω-power entries with no normalisation, orthogonality reads Σ = 0 and
//! unbiasedness reads z·z̄ = d.

mod frame;
mod json;
mod identities;
mod monomial;

pub use frame::{FrameConst, FrameTables};
pub use json::{MubSetJson, StateJson};
pub use identities::{
    check_identical_entries, check_root_frequency, check_unbiasedness, max_identical_entries, root_frequency,
};
pub use monomial::{
    monomial_decompose, monomial_negative_check, qubit_monomials, MonomialDecomposition,
    QubitMonomials,
};

use crate::error::{Error, Result};
use crate::exactfield::{integral_batch, is_prime, Cyclotomic, ZOmega};

/// Order of the root of unity the entries live in: i for the qubit, ω_d
/// otherwise.
pub fn root_order(d: u32) -> u32 {
    if d == 2 {
        4
    } else {
        d
    }
}

pub fn check_prime(d: u32) -> Result<()> {
    if is_prime(d as u64) {
        Ok(())
    } else {
        Err(Error::invalid_dimension(d, "dimension must be prime"))
    }
}

/// A ray representative with exact entries in the computational basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    dim: u32,
    entries: Vec<Cyclotomic>,
    pub label: Option<String>,
}

impl StateVector {
    pub fn new(dim: u32, entries: Vec<Cyclotomic>) -> Result<Self> {
        check_prime(dim)?;
        if entries.len() != dim as usize {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: entries.len() as u32,
            });
        }
        let order = root_order(dim);
        if let Some(e) = entries.iter().find(|e| e.order() != order) {
            return Err(Error::DimensionMismatch {
                left: order,
                right: e.order(),
            });
        }
        Ok(StateVector {
            dim,
            entries,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Computational basis state |x⟩.
    pub fn basis_state(dim: u32, x: usize) -> Self {
        let order = root_order(dim);
        let entries = (0..dim as usize)
            .map(|y| Cyclotomic::from_int(order, (x == y) as i64))
            .collect();
        StateVector {
            dim,
            entries,
            label: None,
        }
    }

    /// Entries ±ω^e (exponents in units of the entry root), None for zero.
    pub fn from_exponents(dim: u32, exps: &[Option<i64>]) -> Result<Self> {
        let order = root_order(dim);
        let entries = exps
            .iter()
            .map(|e| match e {
                Some(e) => Cyclotomic::root(order, *e),
                None => Cyclotomic::zero(order),
            })
            .collect();
        Self::new(dim, entries)
    }

    pub fn from_zomega(dim: u32, zs: &[ZOmega]) -> Result<Self> {
        Self::new(dim, zs.iter().map(ZOmega::to_cyclotomic).collect())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn order(&self) -> u32 {
        root_order(self.dim)
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::DegenerateState("the zero vector is not a state".into()))
        } else {
            Ok(())
        }
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        StateVector {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
            label: self.label.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(StateVector {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            label: None,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&Cyclotomic::from_int(self.order(), -1)))
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        StateVector {
            dim: self.dim,
            entries: self.entries.iter().map(Cyclotomic::conj).collect(),
            label: self.label.clone(),
        }
    }

    /// True when both vectors are nonzero and span the same ray.
    pub fn same_ray(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.is_zero() || other.is_zero() {
            return false;
        }
        let pivot = self
            .entries
            .iter()
            .position(|e| !e.is_zero())
            .expect("nonzero");
        if other.entries[pivot].is_zero() {
            return false;
        }
        let ratio = other.entries[pivot]
            .checked_div(&self.entries[pivot])
            .expect("pivot is nonzero");
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| &(a * &ratio) == b)
    }

    /// Scales the ray so that its first nonzero entry is 1.
    pub fn normalized_ray(&self) -> Result<Self> {
        self.require_nonzero()?;
        let pivot = self.entries.iter().find(|e| !e.is_zero()).expect("nonzero");
        let inv = pivot.inverse()?;
        Ok(self.scale(&inv))
    }

    /// Integral Z[ω] representative of the ray, when the coordinates are
    /// small enough (odd dimensions only).
    pub fn to_zomega(&self) -> Option<Vec<ZOmega>> {
        integral_batch(&self.entries)
    }
}

/// One basis of the standard set; basis 0 is computational, basis j ≥ 1 has
/// scaled entries ω^{−kx+(j−1)x²} at row x, column k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubBasis {
    dim: u32,
    index: usize,
    // exps[x][k]; empty for the computational basis
    exps: Vec<Vec<u32>>,
}

impl MubBasis {
    fn standard(dim: u32, index: usize) -> Self {
        if index == 0 {
            return MubBasis {
                dim,
                index,
                exps: Vec::new(),
            };
        }
        let order = root_order(dim) as i64;
        let lin = order / dim as i64;
        let j = index as i64;
        let exps = (0..dim as i64)
            .map(|x| {
                (0..dim as i64)
                    .map(|k| (-lin * k * x + (j - 1) * x * x).rem_euclid(order) as u32)
                    .collect()
            })
            .collect();
        MubBasis { dim, index, exps }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Exponent of the scaled entry at row x, column k; None when the entry
    /// vanishes.
    pub fn exponent(&self, x: usize, k: usize) -> Option<u32> {
        if self.index == 0 {
            (x == k).then_some(0)
        } else {
            Some(self.exps[x][k])
        }
    }

    pub fn entry(&self, x: usize, k: usize) -> Cyclotomic {
        let order = root_order(self.dim);
        match self.exponent(x, k) {
            Some(e) => Cyclotomic::root(order, e as i64),
            None => Cyclotomic::zero(order),
        }
    }

    /// |φ_k^j⟩ as a state vector.
    pub fn column(&self, k: usize) -> StateVector {
        let entries = (0..self.dim as usize).map(|x| self.entry(x, k)).collect();
        StateVector {
            dim: self.dim,
            entries,
            label: Some(format!("phi_{k}^{}", self.index)),
        }
    }

    pub fn matrix(&self) -> Vec<Vec<Cyclotomic>> {
        let d = self.dim as usize;
        (0..d).map(|x| (0..d).map(|k| self.entry(x, k)).collect()).collect()
    }

    /// Expansion coefficients ⟨φ_k^j|ψ⟩ for k = 0..d−1.
    pub fn coefficients(&self, psi: &StateVector) -> Result<Vec<Cyclotomic>> {
        if psi.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: psi.dim,
            });
        }
        if self.index == 0 {
            return Ok(psi.entries.clone());
        }
        let d = self.dim as usize;
        let order = root_order(self.dim);
        Ok((0..d)
            .map(|k| {
                let mut acc = Cyclotomic::zero(order);
                for (x, v) in psi.entries.iter().enumerate() {
                    if !v.is_zero() {
                        acc = &acc + &v.mul_root(-(self.exps[x][k] as i64));
                    }
                }
                acc
            })
            .collect())
    }

    /// Coefficients of an integral state, computed by rotations in Z[ω].
    pub fn coefficients_zomega(&self, psi: &[ZOmega]) -> Vec<ZOmega> {
        let d = self.dim as usize;
        if self.index == 0 {
            return psi.to_vec();
        }
        let order = root_order(self.dim) as usize;
        (0..d)
            .map(|k| {
                let mut acc = ZOmega::zero(order as u32);
                for (x, v) in psi.iter().enumerate() {
                    let e = (order - self.exps[x][k] as usize) % order;
                    acc.add_rotated(v, e, 1);
                }
                acc
            })
            .collect()
    }
}

/// The d+1 bases of the standard complete set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubSet {
    dim: u32,
    bases: Vec<MubBasis>,
}

pub fn build_mub_set(d: u32) -> Result<MubSet> {
    check_prime(d)?;
    Ok(MubSet {
        dim: d,
        bases: (0..=d as usize).map(|j| MubBasis::standard(d, j)).collect(),
    })
}

impl MubSet {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn order(&self) -> u32 {
        root_order(self.dim)
    }

    pub fn bases(&self) -> &[MubBasis] {
        &self.bases
    }

    pub fn basis(&self, j: usize) -> &MubBasis {
        &self.bases[j]
    }

    pub fn state(&self, j: usize, k: usize) -> StateVector {
        self.bases[j].column(k)
    }
}

/// Multiplies ψ entrywise by diag(1, ω^{−1}, …, ω^{−(d−1)})^power.
#[allow(non_snake_case)]
pub fn apply_B(psi: &StateVector, power: i64) -> StateVector {
    let lin = (psi.order() / psi.dim) as i64;
    let entries = psi
        .entries
        .iter()
        .enumerate()
        .map(|(x, v)| v.mul_root(-lin * x as i64 * power))
        .collect();
    StateVector {
        dim: psi.dim,
        entries,
        label: None,
    }
}

/// Multiplies ψ entrywise by diag(1, ω, ω⁴, …, ω^{(d−1)²})^power (for the
/// qubit, diag(1, i)^power).
#[allow(non_snake_case)]
pub fn apply_D(psi: &StateVector, power: i64) -> StateVector {
    let entries = psi
        .entries
        .iter()
        .enumerate()
        .map(|(x, v)| v.mul_root((x * x) as i64 * power))
        .collect();
    StateVector {
        dim: psi.dim,
        entries,
        label: None,
    }
}

/// ⟨a|b⟩ = Σ_x conj(a_x)·b_x.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Cyclotomic> {
    a.same_dim(b)?;
    let mut acc = Cyclotomic::zero(a.order());
    for (x, y) in a.entries.iter().zip(&b.entries) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(&x.conj() * y);
        }
    }
    Ok(acc)
}
