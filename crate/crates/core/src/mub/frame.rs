use super::{build_mub_set, MubSet};
use crate::error::{Error, Result};
use crate::exactfield::{gauss_sum_int, jacobi_symbol, mod_inverse, ZOmega};

/// The common factor of every overlap between two fixed bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameConst {
    /// Overlaps with the computational basis are bare roots of unity.
    One,
    /// Overlaps between two Hadamard bases carry (f−c / d)·g.
    Gauss(i32),
}

/// Closed-form overlaps between the bases of the standard set (odd d).
///
/// For c ≠ f, the scaled overlap ⟨φ_κ^c|φ_s^f⟩ equals const(c,f)·ω^{E[c][f][κ][s]}.
/// The exponent tables are derived from the Gauss-sum evaluation and every
/// entry is checked against the directly summed overlap when the tables are
/// built.
#[derive(Clone, Debug)]
pub struct FrameTables {
    d: u32,
    // flattened [c][f][κ][s]
    exps: Vec<u8>,
    consts: Vec<Option<FrameConst>>,
    gauss: ZOmega,
}

impl FrameTables {
    pub fn new(d: u32) -> Result<Self> {
        if d == 2 {
            return Err(Error::invalid_dimension(2, "frame tables need an odd prime"));
        }
        let set = build_mub_set(d)?;
        let n = d as usize + 1;
        let du = d as usize;
        let di = d as i64;
        let mut exps = vec![0u8; n * n * du * du];
        let mut consts = vec![None; n * n];
        for c in 0..n {
            for f in 0..n {
                if c == f {
                    continue;
                }
                let (k, chi) = if c >= 1 && f >= 1 {
                    let a = f as i64 - c as i64;
                    (
                        FrameConst::Gauss(jacobi_symbol(a, di)?),
                        mod_inverse(4 * a, di)?,
                    )
                } else {
                    (FrameConst::One, 0)
                };
                consts[c * n + f] = Some(k);
                for kappa in 0..di {
                    for s in 0..di {
                        let e = if c == 0 {
                            -s * kappa + (f as i64 - 1) * kappa * kappa
                        } else if f == 0 {
                            kappa * s - (c as i64 - 1) * s * s
                        } else {
                            -(kappa - s) * (kappa - s) * chi
                        };
                        exps[((c * n + f) * du + kappa as usize) * du + s as usize] =
                            e.rem_euclid(di) as u8;
                    }
                }
            }
        }
        let tables = FrameTables {
            d,
            exps,
            consts,
            gauss: gauss_sum_int(d, 1, 0)?,
        };
        tables.verify(&set)?;
        Ok(tables)
    }

    fn verify(&self, set: &MubSet) -> Result<()> {
        let du = self.d as usize;
        let n = du + 1;
        let zs: Vec<Vec<Vec<ZOmega>>> = (0..n)
            .map(|f| {
                (0..du)
                    .map(|s| {
                        (0..du)
                            .map(|x| match set.basis(f).exponent(x, s) {
                                Some(e) => ZOmega::root(self.d, e as i64),
                                None => ZOmega::zero(self.d),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            for f in 0..n {
                if c == f {
                    continue;
                }
                let unit = self.const_value(c, f);
                for s in 0..du {
                    let coeffs = set.basis(c).coefficients_zomega(&zs[f][s]);
                    for (kappa, got) in coeffs.iter().enumerate() {
                        let want = unit.mul_root(self.exponent(c, f, kappa, s) as i64);
                        if !got.sub(&want).is_zero() {
                            return Err(Error::consistency(
                                "overlap table",
                                format!("<phi_{kappa}^{c}|phi_{s}^{f}> at d = {}", self.d),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    /// The quadratic Gauss sum g as an element of Z[ω].
    pub fn gauss(&self) -> &ZOmega {
        &self.gauss
    }

    #[inline]
    pub fn exponent(&self, c: usize, f: usize, kappa: usize, s: usize) -> u8 {
        let du = self.d as usize;
        self.exps[((c * (du + 1) + f) * du + kappa) * du + s]
    }

    /// Row κ of the table for bases (c, f), indexed by s.
    #[inline]
    pub fn row(&self, c: usize, f: usize, kappa: usize) -> &[u8] {
        let du = self.d as usize;
        let start = ((c * (du + 1) + f) * du + kappa) * du;
        &self.exps[start..start + du]
    }

    pub fn constant(&self, c: usize, f: usize) -> Option<FrameConst> {
        self.consts[c * (self.d as usize + 1) + f]
    }

    /// The constant as a ring element (1 for c = f, where the overlap is d·δ).
    pub fn const_value(&self, c: usize, f: usize) -> ZOmega {
        match self.constant(c, f) {
            Some(FrameConst::Gauss(s)) => {
                if s > 0 {
                    self.gauss.clone()
                } else {
                    self.gauss.neg()
                }
            }
            _ => ZOmega::from_int(self.d, 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_verify_for_small_primes() {
        for d in [3, 5, 7, 11] {
            let t = FrameTables::new(d).unwrap();
            assert_eq!(t.constant(0, 3), Some(FrameConst::One));
            assert!(t.constant(2, 2).is_none());
        }
        assert!(FrameTables::new(2).is_err());
    }
}
