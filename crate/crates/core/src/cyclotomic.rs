//! Exact arithmetic in the cyclotomic integers Z[w], w a primitive p-th
//! root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `sum_k c_k w^k` over the basis `1, w, .., w^{p-2}`, using
/// `w^{p-1} = -(1 + w + .. + w^{p-2})`. The representation is unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(p: u32) -> Self {
        CyclotomicInteger {
            p,
            coeffs: vec![0; p as usize - 1],
        }
    }

    pub fn integer(p: u32, k: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = k;
        z
    }

    pub fn one(p: u32) -> Self {
        Self::integer(p, 1)
    }

    /// `w^k` for any integer `k`.
    pub fn omega_pow(p: u32, k: i64) -> Self {
        let mut full = vec![0i64; p as usize];
        full[k.rem_euclid(p as i64) as usize] = 1;
        Self::from_powers(p, &full)
    }

    /// Reduce `sum_{k < p} v_k w^k`.
    pub fn from_powers(p: u32, v: &[i64]) -> Self {
        assert_eq!(v.len(), p as usize);
        let top = v[p as usize - 1];
        CyclotomicInteger {
            p,
            coeffs: v[..p as usize - 1].iter().map(|&c| c - top).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an ordinary integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then(|| self.coeffs[0])
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Division by an integer when every coefficient is divisible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        if k == 0 || self.coeffs.iter().any(|c| c % k != 0) {
            return None;
        }
        Some(CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| c / k).collect(),
        })
    }

    /// Complex conjugation `w -> w^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![0i64; p];
        for (k, &c) in self.coeffs.iter().enumerate() {
            full[(p - k) % p] += c;
        }
        Self::from_powers(self.p, &full)
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        assert_eq!(self.p, rhs.p);
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        self.scale(-1)
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        assert_eq!(self.p, rhs.p);
        let p = self.p as usize;
        let mut full = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        CyclotomicInteger::from_powers(self.p, &full)
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*w"),
                _ => format!("{c}*w^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        for p in [3, 5, 7] {
            let w = CyclotomicInteger::omega_pow(p, 1);
            let mut acc = CyclotomicInteger::one(p);
            let mut sum = CyclotomicInteger::zero(p);
            for _ in 0..p {
                sum = &sum + &acc;
                acc = &acc * &w;
            }
            assert_eq!(acc, CyclotomicInteger::one(p));
            assert!(sum.is_zero(), "1 + w + .. + w^(p-1) = 0");
            assert_eq!(&w * &w.conj(), CyclotomicInteger::one(p));
            assert_eq!(CyclotomicInteger::omega_pow(p, -1), w.conj());
        }
    }

    #[test]
    fn integers_and_division() {
        let z = CyclotomicInteger::omega_pow(3, 2).scale(6);
        assert_eq!(z.to_string(), "-6 + -6*w");
        assert_eq!(z.div_exact(3).unwrap().to_string(), "-2 + -2*w");
        assert!(z.div_exact(4).is_none());
        assert_eq!(CyclotomicInteger::integer(5, 7).as_integer(), Some(7));
        assert_eq!(CyclotomicInteger::omega_pow(5, 1).as_integer(), None);
        // |1 - w|^2 = 2 - w - w^{-1} at p = 3 equals 3.
        let d = &CyclotomicInteger::one(3) - &CyclotomicInteger::omega_pow(3, 1);
        assert_eq!((&d * &d.conj()).as_integer(), Some(3));
    }
}
