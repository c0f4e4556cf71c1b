use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact element of the cyclotomic field Q(ω), ω = e^{2πi/order}.
///
/// `order` is a prime p (degree p − 1, minimal polynomial 1 + x + … + x^{p−1})
/// or 4 (degree 2, minimal polynomial x² + 1), the latter only used for the
/// qubit bases. Coefficients are kept in the power basis {1, ω, …, ω^{deg−1}}
/// and are always fully reduced, so equality and zero tests are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// Degree of Q(ω_order) over Q.
pub fn field_degree(order: u32) -> usize {
    if order == 4 {
        2
    } else {
        order as usize - 1
    }
}

pub(crate) fn check_order(order: u32) -> Result<()> {
    if order == 4 || super::is_prime(order as u64) {
        Ok(())
    } else {
        Err(Error::invalid_dimension(
            order,
            "cyclotomic order must be prime or 4",
        ))
    }
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        debug_assert!(check_order(order).is_ok());
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); field_degree(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, ratio(n))
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    /// ω^e for any integer exponent.
    pub fn root(order: u32, e: i64) -> Self {
        let mut full = vec![BigRational::zero(); order as usize];
        full[e.rem_euclid(order as i64) as usize] = BigRational::one();
        Self::from_full(order, full)
    }

    /// Builds an element from its power-basis coefficients, reducing if the
    /// slice is longer than the field degree.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        check_order(order)?;
        let mut full = vec![BigRational::zero(); order as usize];
        for (i, c) in coeffs.into_iter().enumerate() {
            full[i % order as usize] += c;
        }
        Ok(Self::from_full(order, full))
    }

    /// Integer coefficients on the full (redundant) root set {ω^0 … ω^{order−1}}.
    pub fn from_root_counts(order: u32, counts: &[i64]) -> Self {
        let mut full = vec![BigRational::zero(); order as usize];
        for (i, &c) in counts.iter().enumerate() {
            if c != 0 {
                full[i % order as usize] += ratio(c);
            }
        }
        Self::from_full(order, full)
    }

    /// Folds a length-`order` coefficient vector onto the power basis.
    fn from_full(order: u32, mut full: Vec<BigRational>) -> Self {
        debug_assert_eq!(full.len(), order as usize);
        if order == 4 {
            let c3 = std::mem::take(&mut full[3]);
            let c2 = std::mem::take(&mut full[2]);
            full[1] -= c3;
            full[0] -= c2;
            full.truncate(2);
        } else {
            let top = full.pop().expect("order >= 2");
            if !top.is_zero() {
                for c in full.iter_mut() {
                    *c -= &top;
                }
            }
        }
        Cyclotomic {
            order,
            coeffs: full,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns `Some(q)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order as usize;
        let mut full = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % n] += a * b;
                }
            }
        }
        Ok(Self::from_full(self.order, full))
    }

    /// Multiplication by ω^e, a coefficient rotation.
    pub fn mul_root(&self, e: i64) -> Self {
        let n = self.order as usize;
        let shift = e.rem_euclid(n as i64) as usize;
        let mut full = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(i + shift) % n] = c.clone();
        }
        Self::from_full(self.order, full)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation, ω^n ↦ ω^{−n}.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut full = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(n - i) % n] = c.clone();
        }
        Self::from_full(self.order, full)
    }

    /// Multiplicative inverse, obtained by solving the linear system of
    /// multiplication-by-self over Q.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { order: self.order });
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let deg = self.coeffs.len();
        // Column i holds the coordinates of self·ω^i.
        let cols: Vec<Cyclotomic> = (0..deg).map(|i| self.mul_root(i as i64)).collect();
        let mut m: Vec<Vec<BigRational>> = (0..deg)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..deg {
            let pivot = (col..deg)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::consistency("field inverse", "singular multiplication matrix"))?;
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for v in m[col].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (v, p) in row.iter_mut().zip(&pivot_row) {
                        *v -= &f * p;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|mut row| row.pop().expect("augmented")).collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Numerical value, for diagnostics and float-side checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let step = std::f64::consts::TAU / self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = step * i as f64;
            (re + v * a.cos(), im + v * a.sin())
        })
    }

    /// Coefficients as "num/den" strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    /// Parses "num/den" (or a bare integer) coefficient strings.
    pub fn from_strings<S: AsRef<str>>(order: u32, parts: &[S]) -> Result<Self> {
        check_order(order)?;
        let deg = field_degree(order);
        if parts.len() != deg {
            return Err(Error::Parse(format!(
                "expected {deg} coefficients for Q(ω_{order}), found {}",
                parts.len()
            )));
        }
        let coeffs = parts
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic { order, coeffs })
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "w^{i}")?,
                (_, false) => write!(f, "{a}*w^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator sugar for same-field operands. Mixing fields is a programming
// error on these paths, so the operators panic; use the `checked_*` methods
// when operands come from outside.

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        let s = &Cyclotomic::root(3, 1) + &Cyclotomic::root(3, 2);
        assert_eq!(s.coeffs(), &[q(-1, 1), q(0, 1)]);
    }

    #[test]
    fn conjugate_of_fifth_root_is_reduced_fourth_power() {
        let c = Cyclotomic::root(5, 1).conj();
        assert_eq!(c, Cyclotomic::root(5, 4));
        assert_eq!(c.coeffs(), &[q(-1, 1), q(-1, 1), q(-1, 1), q(-1, 1)]);
    }

    #[test]
    fn root_products_wrap() {
        assert!((&Cyclotomic::root(3, 1) * &Cyclotomic::root(3, 2)).is_one());
        assert_eq!(Cyclotomic::root(4, 2), Cyclotomic::from_int(4, -1));
        assert_eq!(Cyclotomic::root(2, 1), Cyclotomic::from_int(2, -1));
    }

    #[test]
    fn inverses() {
        assert_eq!(Cyclotomic::root(3, 1).inverse().unwrap(), Cyclotomic::root(3, 2));
        let a = &Cyclotomic::one(5) + &Cyclotomic::root(5, 1);
        assert!((&a.inverse().unwrap() * &a).is_one());
        assert_eq!(
            Cyclotomic::from_int(7, 2).inverse().unwrap(),
            Cyclotomic::from_rational(7, q(1, 2))
        );
        assert!(matches!(
            Cyclotomic::zero(7).inverse(),
            Err(Error::DivisionByZero { order: 7 })
        ));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = Cyclotomic::one(3).checked_add(&Cyclotomic::one(5)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { left: 3, right: 5 }));
        assert!(Cyclotomic::one(3).checked_mul(&Cyclotomic::one(7)).is_err());
    }

    #[test]
    fn string_round_trip_and_errors() {
        let a = &Cyclotomic::root(7, 3).scale(&q(-5, 6)) + &Cyclotomic::from_int(7, 2);
        let s = a.to_strings();
        assert_eq!(Cyclotomic::from_strings(7, &s).unwrap(), a);
        assert!(Cyclotomic::from_strings(7, &["1/2"]).is_err());
        assert!(Cyclotomic::from_strings(3, &["1/0", "0"]).is_err());
        assert!(Cyclotomic::from_strings(3, &["x", "0"]).is_err());
        assert_eq!(
            Cyclotomic::from_strings(3, &["3", "-4/8"]).unwrap().coeffs(),
            &[q(3, 1), q(-1, 2)]
        );
    }

    #[test]
    fn complex_value_of_root() {
        let (re, im) = Cyclotomic::root(4, 1).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
        let (re, im) = Cyclotomic::root(5, 2).to_complex();
        let a = 4.0 * std::f64::consts::PI / 5.0;
        assert!((re - a.cos()).abs() < 1e-12 && (im - a.sin()).abs() < 1e-12);
    }

    #[test]
    fn display_is_readable() {
        let a = &Cyclotomic::from_int(5, 2) - &Cyclotomic::root(5, 2);
        assert_eq!(a.to_string(), "2 - w^2");
        assert_eq!(Cyclotomic::zero(5).to_string(), "0");
    }
}
