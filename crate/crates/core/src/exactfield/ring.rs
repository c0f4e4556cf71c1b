//! Division-free determinants over any commutative ring, and the prime field
//! F_p into which Z[ω] maps when p ≡ 1 (mod d).

use super::{is_prime, Cyclotomic, ZOmega};
use crate::error::{Error, Result};

/// The handful of ring operations the determinant routine needs.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
}

impl Ring for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.order())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
}

impl Ring for ZOmega {
    fn zero_like(&self) -> Self {
        ZOmega::zero(self.order())
    }
    fn one_like(&self) -> Self {
        ZOmega::from_int(self.order(), 1)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// Determinant of a square matrix by dynamic programming over column subsets
/// (Laplace expansion along rows, memoised). No division is performed, so it
/// works over Z[ω] and costs O(2ⁿ·n) ring operations.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    assert!(n < 24, "matrix too large for subset expansion");
    let zero = m[0][0].zero_like();
    let mut f: Vec<Option<R>> = vec![None; 1 << n];
    f[0] = Some(m[0][0].one_like());
    for mask in 0usize..(1 << n) {
        let Some(val) = f[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            f[mask] = Some(val);
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 || m[row][c].is_zero_elem() {
                continue;
            }
            let above = (mask >> c).count_ones();
            let term = val.mul_elem(&m[row][c]);
            let slot = &mut f[mask | (1 << c)];
            *slot = Some(match slot.take() {
                None if above % 2 == 0 => term,
                None => zero.sub_elem(&term),
                Some(acc) if above % 2 == 0 => acc.add_elem(&term),
                Some(acc) => acc.sub_elem(&term),
            });
        }
    }
    f[(1 << n) - 1].take().unwrap_or(zero)
}

/// An element of F_p, tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn add_elem(&self, o: &Self) -> Self {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }
    fn sub_elem(&self, o: &Self) -> Self {
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
    fn mul_elem(&self, o: &Self) -> Self {
        Fp {
            v: (self.v as u128 * o.v as u128 % self.p as u128) as u64,
            p: self.p,
        }
    }
}

/// F_p together with a fixed primitive d-th root of unity r.
///
/// ω ↦ r extends to a ring homomorphism Z[ω] → F_p. An element that is
/// nonzero in F_p is therefore nonzero in Z[ω]; the converse can fail, so
/// modular zeros must be confirmed exactly.
#[derive(Clone, Debug)]
pub struct ModularImage {
    pub d: u32,
    pub p: u64,
    /// powers[e] = r^e for e in 0..d.
    pub powers: Vec<u64>,
    mersenne: bool,
}

const MERSENNE_61: u64 = (1 << 61) - 1;

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (b % p) as u128;
    let p = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc as u64
}

impl ModularImage {
    /// Uses p = 2⁶¹−1 when d divides p−1 (all odd primes up to 13), which
    /// makes reduction a shift and an add; otherwise the largest prime
    /// p < 2³¹ with p ≡ 1 (mod d). The root is the (p−1)/d-th power of the
    /// smallest base for which that power is not 1.
    pub fn new(d: u32) -> Result<Self> {
        if !is_prime(d as u64) || d == 2 {
            return Err(Error::invalid_dimension(d, "modular images need an odd prime"));
        }
        let d64 = d as u64;
        let (p, mersenne) = if (MERSENNE_61 - 1).is_multiple_of(d64) {
            (MERSENNE_61, true)
        } else {
            let mut p = ((1u64 << 31) - 1) / d64 * d64 + 1;
            while p >= 1 << 31 || !is_prime(p) {
                p -= d64;
            }
            (p, false)
        };
        let root = (2..p)
            .map(|b| pow_mod(b, (p - 1) / d64, p))
            .find(|&r| r != 1)
            .expect("p ≡ 1 (mod d) has d-th roots other than 1");
        let mut powers = Vec::with_capacity(d as usize);
        let mut acc = 1u64;
        for _ in 0..d {
            powers.push(acc);
            acc = (acc as u128 * root as u128 % p as u128) as u64;
        }
        Ok(ModularImage {
            d,
            p,
            powers,
            mersenne,
        })
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        if self.mersenne {
            let lo = (t as u64) & MERSENNE_61;
            let hi = (t >> 61) as u64;
            let s = lo + hi;
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (t % self.p as u128) as u64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn root_pow(&self, e: usize) -> u64 {
        self.powers[e % self.d as usize]
    }

    pub fn image(&self, z: &ZOmega) -> u64 {
        z.counts()
            .iter()
            .zip(&self.powers)
            .fold(0, |acc, (&c, &r)| {
                let c = c.rem_euclid(self.p as i64) as u64;
                self.add(acc, self.mul(c, r))
            })
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }
}
