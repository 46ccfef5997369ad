//! Arithmetic in the prime field F_p for an odd prime p.
//!
//! Residues are plain `u32` values in `[0, p)`. The modulus lives in a
//! [`PrimeField`] handle that is shared by every polynomial, matrix and
//! subspace built over it, so elements never carry their own modulus.

use crate::error::{usage, Result};

/// Largest modulus accepted. Keeps `p * p` comfortably inside `u32`.
pub const MAX_PRIME: u32 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return usage(format!("modulus {p} is not an odd prime"));
        }
        if p > MAX_PRIME {
            return usage(format!("modulus {p} exceeds {MAX_PRIME}"));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Canonical residue of an arbitrary signed integer.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(self, k: usize) -> u32 {
        if k.is_multiple_of(2) {
            1
        } else {
            self.p - 1
        }
    }

    /// Signed representative in `(-p/2, p/2]`, used for display.
    pub fn centered(self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 2, 4, 9, 15] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        assert!(PrimeField::new(3).is_ok());
        assert!(PrimeField::new(23).is_ok());
    }

    #[test]
    fn field_axioms_and_frobenius() {
        for p in [3u32, 5, 7, 11] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, p as u64), a, "x^p = x");
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn wilson() {
        let f = PrimeField::new(7).unwrap();
        let prod = (1..7).fold(1, |acc, c| f.mul(acc, c));
        assert_eq!(prod, f.neg(1));
    }
}
