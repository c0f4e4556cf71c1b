use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::Cyclotomic;
use crate::error::{Error, Result};

/// Element of the ring of integers Z[ω] for prime order p, stored on the
/// redundant root set {1, ω, …, ω^{p−1}}.
///
/// The only relation among the roots is 1 + ω + … + ω^{p−1} = 0, so an
/// element vanishes exactly when all p coefficients are equal. Multiplying by
/// a root is a rotation, which keeps the hot loops free of reductions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZOmega {
    coeffs: Vec<i64>,
}

impl ZOmega {
    pub fn zero(order: u32) -> Self {
        ZOmega {
            coeffs: vec![0; order as usize],
        }
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = n;
        z
    }

    pub fn root(order: u32, e: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[e.rem_euclid(order as i64) as usize] = 1;
        z
    }

    pub fn from_counts(counts: Vec<i64>) -> Self {
        ZOmega { coeffs: counts }
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn counts(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }

    /// Canonical representative with the top coefficient cleared; these are
    /// then the power-basis coordinates.
    pub fn normalized(&self) -> Self {
        let top = *self.coeffs.last().expect("order >= 2");
        ZOmega {
            coeffs: self.coeffs.iter().map(|c| c - top).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ZOmega {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ZOmega {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ZOmega {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len();
        let mut acc = vec![0i128; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[(i + j) % n] += a as i128 * b as i128;
            }
        }
        // Shift by the minimum so that large but balanced values still fit.
        let lo = *acc.iter().min().expect("nonempty");
        ZOmega {
            coeffs: acc
                .into_iter()
                .map(|c| i64::try_from(c - lo).expect("Z[ω] coefficient overflow"))
                .collect(),
        }
    }

    pub fn mul_root(&self, e: i64) -> Self {
        let n = self.coeffs.len();
        let s = e.rem_euclid(n as i64) as usize;
        let mut out = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[(i + s) % n] = c;
        }
        ZOmega { coeffs: out }
    }

    /// Adds `sign · ω^e · src` into `self`.
    pub fn add_rotated(&mut self, src: &Self, e: usize, sign: i64) {
        rotate_add(&mut self.coeffs, &src.coeffs, e, sign);
    }

    pub fn conj(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[(n - i) % n] = c;
        }
        ZOmega { coeffs: out }
    }

    /// Some(e) with self = ω^e · other, if such an e exists (other ≠ 0).
    pub fn root_ratio(&self, other: &Self) -> Option<usize> {
        (0..self.coeffs.len()).find(|&e| self.sub(&other.mul_root(e as i64)).is_zero())
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::from_root_counts(self.order(), &self.coeffs)
    }

    /// Converts an element with integral power-basis coordinates.
    pub fn from_cyclotomic(c: &Cyclotomic) -> Result<Self> {
        if c.order() == 4 {
            return Err(Error::invalid_dimension(4, "Z[ω] is only used for prime orders"));
        }
        let mut coeffs = vec![0i64; c.order() as usize];
        for (slot, q) in coeffs.iter_mut().zip(c.coeffs()) {
            *slot = integral_i64(q).ok_or_else(|| {
                Error::Parse(format!("coefficient {q} is not a machine-size integer"))
            })?;
        }
        Ok(ZOmega { coeffs })
    }
}

fn integral_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Clears denominators of a batch of field elements: returns integral
/// representatives `λ·c` with a common positive integer λ, or None if a
/// coordinate does not fit in an i64.
pub fn integral_batch(cs: &[Cyclotomic]) -> Option<Vec<ZOmega>> {
    use num_integer::Integer;
    if cs.iter().any(|c| c.order() == 4) {
        return None;
    }
    let lcm = cs
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(&c.denominator_lcm()));
    let scale = BigRational::from_integer(lcm);
    cs.iter()
        .map(|c| {
            let scaled = c.scale(&scale);
            let mut coeffs = vec![0i64; c.order() as usize];
            for (slot, q) in coeffs.iter_mut().zip(scaled.coeffs()) {
                *slot = integral_i64(q)?;
            }
            // Leave headroom for the sums taken downstream.
            if coeffs.iter().any(|v| v.unsigned_abs() > 1 << 40) {
                return None;
            }
            Some(ZOmega { coeffs })
        })
        .collect()
}

/// dst += sign · ω^e · src on redundant coefficient slices of equal length.
#[inline]
pub(crate) fn rotate_add(dst: &mut [i64], src: &[i64], e: usize, sign: i64) {
    let n = dst.len();
    let e = e % n;
    let (head, tail) = dst.split_at_mut(e);
    let (s_front, s_back) = src.split_at(n - e);
    for (d, s) in tail.iter_mut().zip(s_front) {
        *d += sign * s;
    }
    for (d, s) in head.iter_mut().zip(s_back) {
        *d += sign * s;
    }
}

#[inline]
pub(crate) fn slice_is_zero(c: &[i64]) -> bool {
    let first = c[0];
    c.iter().all(|&v| v == first)
}

impl fmt::Debug for ZOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZOmega{:?}", self.coeffs)
    }
}
