//! Kernel rays expressed in a "frame" basis.
//!
//! If ψ has zero set Z_f in basis f, it lives in the span of the φ_s^f with
//! s ∉ Z_f. The remaining constraints ⟨φ_κ^g|ψ⟩ = 0 become rows of pure
//! roots of unity (the common Gauss-sum factor drops out), and the kernel of
//! an r×(r+1) system is given by its signed maximal minors. Those are
//! computed with one pass over column subsets, entirely in Z[ω] or F_p.

use crate::error::{Error, Result};
use crate::exactfield::{rotate_add, ModularImage, ZOmega};
use crate::mub::{FrameTables, StateVector};

/// ψ = Σ_i coords[i]·φ_{cols[i]}^frame.
#[derive(Clone, Debug)]
pub struct FramedRay {
    pub frame: usize,
    pub cols: Vec<usize>,
    pub coords: Vec<ZOmega>,
}

pub fn complement(mask: u32, d: u32) -> Vec<usize> {
    (0..d as usize).filter(|&i| mask & (1 << i) == 0).collect()
}

/// Signed maximal minors of the r×n root-of-unity matrix (n = r+1), exactly.
/// `rows[i][c]` is the exponent of entry (i, c). Returns n coordinates of
/// length d each (flattened), forming a kernel vector.
pub fn cofactors_exact(d: usize, rows: &[&[u8]], n: usize, buf: &mut Vec<i64>) -> Vec<i64> {
    let r = rows.len();
    debug_assert_eq!(r + 1, n);
    let size = 1usize << n;
    buf.clear();
    buf.resize(size * d, 0);
    buf[0] = 1;
    let mut live = vec![false; size];
    live[0] = true;
    for mask in 0..size {
        if !live[mask] {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row >= r {
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            let target = mask | (1 << c);
            let sign = if (mask >> c).count_ones() % 2 == 0 { 1 } else { -1 };
            let (lo, hi) = buf.split_at_mut(target * d);
            rotate_add(&mut hi[..d], &lo[mask * d..mask * d + d], rows[row][c] as usize, sign);
            live[target] = true;
        }
    }
    let full = size - 1;
    let mut out = vec![0i64; n * d];
    for c in 0..n {
        let src = &buf[(full ^ (1 << c)) * d..(full ^ (1 << c)) * d + d];
        let sign = if c % 2 == 0 { 1 } else { -1 };
        for (o, v) in out[c * d..c * d + d].iter_mut().zip(src) {
            *o = sign * v;
        }
    }
    out
}

/// The same minors reduced into F_p.
pub fn cofactors_mod(m: &ModularImage, rows: &[&[u8]], n: usize, buf: &mut Vec<u64>, out: &mut [u64]) {
    let r = rows.len();
    let size = 1usize << n;
    buf.clear();
    buf.resize(size, 0);
    buf[0] = 1;
    for mask in 0..size {
        let v = buf[mask];
        if v == 0 {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row >= r {
            continue;
        }
        let er = rows[row];
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            let t = m.mul(v, m.powers[er[c] as usize]);
            let target = mask | (1 << c);
            buf[target] = if (mask >> c).count_ones() % 2 == 0 {
                m.add(buf[target], t)
            } else {
                m.add(buf[target], m.neg(t))
            };
        }
    }
    let full = size - 1;
    for c in 0..n {
        let v = buf[full ^ (1 << c)];
        out[c] = if c % 2 == 0 { v } else { m.neg(v) };
    }
}

/// Exact solver over the frame tables of one dimension.
pub struct FramedEngine {
    pub tables: FrameTables,
}

impl FramedEngine {
    pub fn new(d: u32) -> Result<Self> {
        Ok(FramedEngine {
            tables: FrameTables::new(d)?,
        })
    }

    pub fn dim(&self) -> u32 {
        self.tables.dim()
    }

    /// Exponent rows of the constraints ⟨φ_κ^g| restricted to the columns.
    pub fn constraint_rows(&self, frame: usize, cols: &[usize], constraints: &[(usize, u32)]) -> Vec<Vec<u8>> {
        let d = self.dim();
        let mut rows = Vec::new();
        for &(g, mask) in constraints {
            for kappa in 0..d as usize {
                if mask & (1 << kappa) != 0 {
                    let full = self.tables.row(g, frame, kappa);
                    rows.push(cols.iter().map(|&s| full[s]).collect());
                }
            }
        }
        rows
    }

    /// The kernel of "zero set ⊇ frame_zeros in the frame basis, and ⊇ mask in
    /// each constraint basis". The number of constraint rows must be one less
    /// than the number of free frame columns. Returns None when every maximal
    /// minor vanishes (the kernel is then more than one-dimensional).
    pub fn solve(&self, frame: usize, frame_zeros: u32, constraints: &[(usize, u32)]) -> Result<Option<FramedRay>> {
        let d = self.dim();
        let cols = complement(frame_zeros, d);
        let rows = self.constraint_rows(frame, &cols, constraints);
        if rows.len() + 1 != cols.len() {
            return Err(Error::invalid_dimension(
                d,
                format!("{} rows cannot cut {} columns down to a ray", rows.len(), cols.len()),
            ));
        }
        if constraints.iter().any(|&(g, _)| g == frame) {
            return Err(Error::invalid_dimension(d, "constraint basis equals the frame basis"));
        }
        let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
        let mut buf = Vec::new();
        let flat = cofactors_exact(d as usize, &refs, cols.len(), &mut buf);
        let coords: Vec<ZOmega> = flat
            .chunks(d as usize)
            .map(|c| ZOmega::from_counts(c.to_vec()))
            .collect();
        if coords.iter().all(ZOmega::is_zero) {
            return Ok(None);
        }
        Ok(Some(FramedRay { frame, cols, coords }))
    }

    /// Exact zero sets of the ray in every basis, as bitmasks.
    pub fn zero_masks(&self, ray: &FramedRay) -> Vec<u32> {
        let d = self.dim() as usize;
        let mut out = Vec::with_capacity(d + 1);
        let mut acc = vec![0i64; d];
        for j in 0..=d {
            let mut mask = 0u32;
            if j == ray.frame {
                mask = (0..d as u32).fold(0, |m, s| m | 1 << s);
                for (i, &s) in ray.cols.iter().enumerate() {
                    if !ray.coords[i].is_zero() {
                        mask &= !(1 << s);
                    }
                }
            } else {
                for kappa in 0..d {
                    acc.iter_mut().for_each(|a| *a = 0);
                    let row = self.tables.row(j, ray.frame, kappa);
                    for (i, &s) in ray.cols.iter().enumerate() {
                        rotate_add(&mut acc, ray.coords[i].counts(), row[s] as usize, 1);
                    }
                    if crate::exactfield::slice_is_zero(&acc) {
                        mask |= 1 << kappa;
                    }
                }
            }
            out.push(mask);
        }
        out
    }

    /// Support sizes derived from exact zero masks.
    pub fn sizes(&self, ray: &FramedRay) -> Vec<usize> {
        let d = self.dim() as usize;
        self.zero_masks(ray)
            .iter()
            .map(|m| d - m.count_ones() as usize)
            .collect()
    }

    /// Computational-basis components Σ_i coords[i]·⟨x|φ_{cols[i]}^frame⟩.
    pub fn to_state(&self, ray: &FramedRay) -> Result<StateVector> {
        let d = self.dim() as usize;
        let mut entries = vec![vec![0i64; d]; d];
        for (i, &s) in ray.cols.iter().enumerate() {
            for (x, e) in entries.iter_mut().enumerate() {
                // ⟨x|φ_s^f⟩ is the overlap of basis 0 with basis f (or δ for f = 0).
                if ray.frame == 0 {
                    if x == s {
                        rotate_add(e, ray.coords[i].counts(), 0, 1);
                    }
                } else {
                    let exp = self.tables.exponent(0, ray.frame, x, s);
                    rotate_add(e, ray.coords[i].counts(), exp as usize, 1);
                }
            }
        }
        let zs: Vec<ZOmega> = entries.into_iter().map(ZOmega::from_counts).collect();
        StateVector::from_zomega(self.dim(), &zs)?.normalized_ray()
    }
}
