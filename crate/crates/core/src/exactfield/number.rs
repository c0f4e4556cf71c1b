//! Modular arithmetic, quadratic characters and quadratic Gauss sums.

use super::{Cyclotomic, ZOmega};
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Primes in `2..=max`.
pub fn primes_up_to(max: u32) -> Vec<u32> {
    (2..=max).filter(|&n| is_prime(n as u64)).collect()
}

/// ā ∈ {1..m−1} with a·ā ≡ 1 (mod m).
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NoInverse { value: a, modulus: m });
    }
    Ok(s0.rem_euclid(m))
}

/// Jacobi symbol (a/n) for odd positive n; equals the Legendre symbol when
/// n is prime.
pub fn jacobi_symbol(a: i64, n: i64) -> Result<i32> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::InvalidModulus(n));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

fn require_odd_prime(d: u32) -> Result<()> {
    if d % 2 == 1 && is_prime(d as u64) {
        Ok(())
    } else {
        Err(Error::InvalidModulus(d as i64))
    }
}

/// Σ_{x=0}^{d−1} ω^{a x² + ℓ x} in Z[ω], without any 1/√d prefactor.
pub fn gauss_sum_int(d: u32, a: i64, l: i64) -> Result<ZOmega> {
    require_odd_prime(d)?;
    if a.rem_euclid(d as i64) == 0 {
        return Err(Error::DegenerateGaussSum { a, d });
    }
    let m = d as i64;
    let mut counts = vec![0i64; d as usize];
    for x in 0..m {
        counts[(a * x * x + l * x).rem_euclid(m) as usize] += 1;
    }
    Ok(ZOmega::from_counts(counts))
}

/// Σ_{x=0}^{d−1} ω^{a x² + ℓ x} as a field element.
pub fn gauss_sum(d: u32, a: i64, l: i64) -> Result<Cyclotomic> {
    Ok(gauss_sum_int(d, a, l)?.to_cyclotomic())
}

/// χ_a with 4aχ_a ≡ 1 (mod d): the exponent in the closed form
/// Σ_x ω^{ax²+ℓx} = ω^{−ℓ²χ_a} (a/d) g.
pub fn completing_square_exponent(d: u32, a: i64) -> Result<i64> {
    mod_inverse(4 * a, d as i64)
}

/// The quadratic Gauss sum g = Σ_x ω^{x²} of an odd prime, kept exactly.
///
/// g stands in for ε_d·√d everywhere: g² = (−1)^{(d−1)/2}·d, so no
/// irrational scalar ever enters the arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticGaussElement {
    dim: u32,
    value: Cyclotomic,
}

impl QuadraticGaussElement {
    pub fn new(d: u32) -> Result<Self> {
        let value = gauss_sum(d, 1, 0)?;
        let sign = if d % 4 == 1 { 1 } else { -1 };
        let square = &value * &value;
        if square != Cyclotomic::from_int(d, sign * d as i64) {
            return Err(Error::consistency(
                "quadratic Gauss sum",
                format!("g² = {square} for d = {d}"),
            ));
        }
        Ok(QuadraticGaussElement { dim: d, value })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn value(&self) -> &Cyclotomic {
        &self.value
    }

    /// The closed-form prediction ω^{−ℓ²χ_a}·(a/d)·g for Σ_x ω^{ax²+ℓx}.
    pub fn predicted_sum(&self, a: i64, l: i64) -> Result<Cyclotomic> {
        let d = self.dim;
        let chi = completing_square_exponent(d, a)?;
        let jac = jacobi_symbol(a, d as i64)?;
        Ok(self
            .value
            .mul_root(-(l * l % d as i64) * chi)
            .scale(&num_rational::BigRational::from_integer(jac.into())))
    }

    /// |g − ε_d·√d| in floating point, with ε_d = 1 for d ≡ 1 (mod 4) and
    /// ε_d = i for d ≡ 3 (mod 4). Tiny when the classical evaluation holds.
    pub fn numeric_bridge_error(&self) -> f64 {
        let (re, im) = self.value.to_complex();
        let root = (self.dim as f64).sqrt();
        let (er, ei) = if self.dim % 4 == 1 { (root, 0.0) } else { (0.0, root) };
        (re - er).hypot(im - ei)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_sum_matches_its_classical_value() {
        for d in [3, 5, 7, 11, 13] {
            let g = QuadraticGaussElement::new(d).unwrap();
            assert!(g.numeric_bridge_error() < 1e-9, "d = {d}");
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u32> = primes_up_to(20);
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(!is_prime(1) && !is_prime(0) && !is_prime(91));
    }

    #[test]
    fn modular_inverses() {
        assert_eq!(mod_inverse(4, 3).unwrap(), 1);
        assert_eq!(mod_inverse(4, 5).unwrap(), 4);
        // 4(j−k)χ ≡ 1 with j−k = 1, d = 5.
        let chi = mod_inverse(4, 5).unwrap();
        assert_eq!((4 * chi) % 5, 1);
        assert_eq!(mod_inverse(-3, 7).unwrap(), 2);
        assert!(matches!(mod_inverse(10, 5), Err(Error::NoInverse { .. })));
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi_symbol(1, 5).unwrap(), 1);
        assert_eq!(jacobi_symbol(2, 5).unwrap(), -1);
        assert_eq!(jacobi_symbol(2, 7).unwrap(), 1);
        assert_eq!(jacobi_symbol(14, 7).unwrap(), 0);
        assert_eq!(jacobi_symbol(-1, 7).unwrap(), -1);
        assert!(matches!(jacobi_symbol(3, 8), Err(Error::InvalidModulus(8))));
        assert!(jacobi_symbol(3, -5).is_err());
    }

    #[test]
    fn jacobi_matches_quadratic_residues() {
        for p in [3i64, 5, 7, 11, 13, 17, 19] {
            let squares: std::collections::BTreeSet<i64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(jacobi_symbol(a, p).unwrap(), expected, "({a}/{p})");
            }
        }
    }

    #[test]
    fn gauss_sum_squares() {
        let g5 = gauss_sum(5, 1, 0).unwrap();
        assert_eq!(&g5 * &g5, Cyclotomic::from_int(5, 5));
        let g7 = gauss_sum(7, 1, 0).unwrap();
        assert_eq!(&g7 * &g7, Cyclotomic::from_int(7, -7));
        assert!(matches!(
            gauss_sum(5, 10, 1),
            Err(Error::DegenerateGaussSum { .. })
        ));
        assert!(gauss_sum(9, 1, 0).is_err());
    }
}
