//! Sparse multivariate polynomials over F_p.
//!
//! Terms are kept in strictly descending graded-lexicographic order with
//! `x1 > x2 > ...`, and zero coefficients are never stored. Two polynomials
//! are therefore mathematically equal exactly when they are structurally
//! equal, which is what every identity check in this crate relies on.
//!
//! Exponent vectors are packed into a `u128`, sixteen bits per variable with
//! `x1` in the most significant lane. Integer order on the packed word is
//! lexicographic order on exponents, and monomial multiplication is a single
//! addition as long as the total degree stays below 2^16.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{usage, Error, Result};
use crate::field::PrimeField;

pub const MAX_VARS: usize = 8;
const LANE_BITS: u32 = 16;
const LANE_MASK: u128 = 0xFFFF;
pub const MAX_DEGREE: u32 = u16::MAX as u32;

#[inline]
fn lane_shift(var: usize) -> u32 {
    LANE_BITS * (MAX_VARS - 1 - var) as u32
}

/// A monomial `x1^e1 * ... * xk^ek`.
///
/// The derived ordering compares total degree first and then the packed
/// exponents, which is graded-lex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    packed: u128,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, packed: 0 };

    pub fn var(i: usize) -> Monomial {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        Monomial {
            deg: 1,
            packed: 1u128 << lane_shift(i),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return usage(format!("at most {MAX_VARS} variables are supported"));
        }
        let mut deg = 0u32;
        let mut packed = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            deg = deg.saturating_add(e);
            packed |= (e as u128) << lane_shift(i);
        }
        if deg > MAX_DEGREE {
            return usage(format!("total degree {deg} exceeds {MAX_DEGREE}"));
        }
        Ok(Monomial { deg, packed })
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(self, var: usize) -> u32 {
        ((self.packed >> lane_shift(var)) & LANE_MASK) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    /// Lexicographic key ignoring the degree.
    #[inline]
    fn lex_key(self) -> u128 {
        self.packed
    }

    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        let deg = self.deg + other.deg;
        assert!(deg <= MAX_DEGREE, "monomial degree overflow ({deg})");
        Monomial {
            deg,
            packed: self.packed + other.packed,
        }
    }

    /// Raise to the `q`-th power.
    #[inline]
    pub fn pow(self, q: u32) -> Monomial {
        let deg = self.deg as u64 * q as u64;
        assert!(deg <= MAX_DEGREE as u64, "monomial degree overflow ({deg})");
        Monomial {
            deg: deg as u32,
            packed: self.packed * q as u128,
        }
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            deg: other.deg - self.deg,
            packed: other.packed - self.packed,
        }
    }

    fn drop_var(self, var: usize, nvars: usize) -> Monomial {
        let mut exps = self.exponents(nvars);
        exps.remove(var);
        Monomial::from_exponents(&exps).expect("dropping a variable cannot overflow")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    field: PrimeField,
    nvars: usize,
    /// Strictly descending graded-lex order, nonzero coefficients.
    terms: Vec<(Monomial, u32)>,
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[F_{}; {} vars]({})", self.field.p(), self.nvars, self)
    }
}

impl SparsePoly {
    pub fn zero(field: PrimeField, nvars: usize) -> SparsePoly {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        SparsePoly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u32) -> SparsePoly {
        let mut out = SparsePoly::zero(field, nvars);
        let c = c % field.p();
        if c != 0 {
            out.terms.push((Monomial::ONE, c));
        }
        out
    }

    pub fn one(field: PrimeField, nvars: usize) -> SparsePoly {
        SparsePoly::constant(field, nvars, 1)
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> SparsePoly {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut out = SparsePoly::zero(field, nvars);
        out.terms.push((Monomial::var(i), 1));
        out
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(field: PrimeField, coeffs: &[u32]) -> SparsePoly {
        SparsePoly::from_terms(
            field,
            coeffs.len(),
            coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0; coeffs.len()];
                e[i] = 1;
                (e, c as i64)
            }),
        )
        .expect("linear forms are always well formed")
    }

    /// Builds a polynomial from arbitrary `(exponents, coefficient)` pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Result<SparsePoly>
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        if nvars > MAX_VARS {
            return usage(format!("at most {MAX_VARS} variables are supported"));
        }
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return usage(format!(
                    "exponent vector has {} entries, expected {nvars}",
                    exps.len()
                ));
            }
            let m = Monomial::from_exponents(&exps)?;
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, field.reduce(c));
        }
        Ok(SparsePoly::from_map(field, nvars, acc))
    }

    fn from_map(field: PrimeField, nvars: usize, map: FxHashMap<Monomial, u32>) -> SparsePoly {
        let mut terms: Vec<(Monomial, u32)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly {
            field,
            nvars,
            terms,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        let Ok(m) = Monomial::from_exponents(exps) else {
            return 0;
        };
        self.terms
            .binary_search_by(|probe| m.cmp(&probe.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.degree() == 0 => *c,
            _ => 0,
        }
    }

    fn check_compatible(&self, other: &SparsePoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Usage(format!(
                "polynomials over F_{} and F_{} cannot be combined",
                self.field.p(),
                other.field.p()
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::Usage(format!(
                "polynomials in {} and {} variables cannot be combined",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        Ok(self.merge_with(other.terms.iter().copied()))
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(self.merge_with(other.terms.iter().map(|&(m, c)| (m, f.neg(c)))))
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Merge a descending term stream into `self`.
    fn merge_with<I: Iterator<Item = (Monomial, u32)>>(&self, other: I) -> SparsePoly {
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len());
        let mut a = self.terms.iter().copied().peekable();
        let mut b = other.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(&(ma, ca)), Some(&(mb, cb))) => match ma.cmp(&mb) {
                    Ordering::Greater => {
                        out.push((ma, ca));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((mb, cb));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = f.add(ca, cb);
                        if c != 0 {
                            out.push((ma, c));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        SparsePoly {
            field: f,
            nvars: self.nvars,
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &SparsePoly) -> SparsePoly {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero(self.field, self.nvars);
        }
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() <= 8 {
            // Multiplying by a monomial preserves the term order, so each
            // partial product is already sorted and can be merged directly.
            let f = self.field;
            let mut acc = SparsePoly::zero(f, self.nvars);
            for &(ms, cs) in &small.terms {
                let shifted = big.terms.iter().map(move |&(mb, cb)| (mb.mul(ms), f.mul(cb, cs)));
                acc = acc.merge_with(shifted);
            }
            return acc;
        }
        let p = self.field.p() as u64;
        let mut acc: FxHashMap<Monomial, u64> =
            FxHashMap::with_capacity_and_hasher(big.terms.len() * 4, Default::default());
        for &(ms, cs) in &small.terms {
            for &(mb, cb) in &big.terms {
                let slot = acc.entry(mb.mul(ms)).or_insert(0);
                // Each product is below p^2 < 2^30; reduce lazily.
                *slot += cs as u64 * cb as u64;
                if *slot >= 1 << 62 {
                    *slot %= p;
                }
            }
        }
        let mut terms: Vec<(Monomial, u32)> = acc
            .into_iter()
            .filter_map(|(m, c)| {
                let c = (c % p) as u32;
                (c != 0).then_some((m, c))
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> SparsePoly {
        let f = self.field;
        SparsePoly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> SparsePoly {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return SparsePoly::zero(f, self.nvars);
        }
        SparsePoly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// Multiply by a single monomial with coefficient.
    pub fn mul_monomial(&self, m: Monomial, c: u32) -> SparsePoly {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return SparsePoly::zero(f, self.nvars);
        }
        SparsePoly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    /// `f^(p^k)`: exponents scale by `p^k`, coefficients are fixed by Frobenius.
    pub fn frobenius(&self, k: u32) -> SparsePoly {
        let q = self.field.p().checked_pow(k).expect("Frobenius power overflow");
        SparsePoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, c)| (m.pow(q), c)).collect(),
        }
    }

    /// `f^e`. Each base-p digit `d_k` of `e` contributes `(f^d_k)^(p^k)`,
    /// with the outer power taken by [`SparsePoly::frobenius`].
    pub fn pow(&self, e: u64) -> SparsePoly {
        let mut result = SparsePoly::one(self.field, self.nvars);
        if e == 0 {
            return result;
        }
        let p = self.field.p() as u64;
        let mut rest = e;
        let mut k = 0u32;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let mut part = self.clone();
                for _ in 1..digit {
                    part = part.mul_unchecked(self);
                }
                result = result.mul_unchecked(&part.frobenius(k));
            }
            rest /= p;
            k += 1;
        }
        result
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn graded_component(&self, d: u32) -> SparsePoly {
        SparsePoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|(m, _)| m.degree() == d)
                .collect(),
        }
    }

    /// Nonzero homogeneous components, highest degree first.
    pub fn homogeneous_components(&self) -> Vec<(u32, SparsePoly)> {
        let mut out: Vec<(u32, SparsePoly)> = Vec::new();
        for &(m, c) in &self.terms {
            match out.last_mut() {
                Some((d, part)) if *d == m.degree() => part.terms.push((m, c)),
                _ => out.push((
                    m.degree(),
                    SparsePoly {
                        field: self.field,
                        nvars: self.nvars,
                        terms: vec![(m, c)],
                    },
                )),
            }
        }
        out
    }

    /// Regard `self` as living in `nvars + extra` variables.
    pub fn with_extra_vars(&self, extra: usize) -> SparsePoly {
        assert!(self.nvars + extra <= MAX_VARS);
        SparsePoly {
            field: self.field,
            nvars: self.nvars + extra,
            terms: self.terms.clone(),
        }
    }

    /// Expand in powers of `var`: pairs `(k, coeff of var^k)` with the
    /// variable removed from the coefficients, `k` ascending.
    pub fn coefficients_in(&self, var: usize) -> Vec<(u32, SparsePoly)> {
        assert!(var < self.nvars);
        let mut groups: FxHashMap<u32, Vec<(Monomial, u32)>> = FxHashMap::default();
        for &(m, c) in &self.terms {
            groups
                .entry(m.exponent(var))
                .or_default()
                .push((m.drop_var(var, self.nvars), c));
        }
        let mut out: Vec<(u32, SparsePoly)> = groups
            .into_iter()
            .map(|(k, mut terms)| {
                terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                (
                    k,
                    SparsePoly {
                        field: self.field,
                        nvars: self.nvars - 1,
                        terms,
                    },
                )
            })
            .collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    pub fn eval(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.nvars);
        let f = self.field;
        self.terms.iter().fold(0, |acc, &(m, c)| {
            let v = (0..self.nvars).fold(c, |v, i| f.mul(v, f.pow(point[i], m.exponent(i) as u64)));
            f.add(acc, v)
        })
    }

    /// Ring homomorphism `x_i -> images[i]`, each image of degree at most one.
    pub fn substitute_linear(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.nvars {
            return usage(format!(
                "substitution needs {} images, got {}",
                self.nvars,
                images.len()
            ));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (field, target) = (first.field, first.nvars);
        if field != self.field {
            return usage("substitution images live over a different field");
        }
        for img in images {
            if img.field != field || img.nvars != target {
                return usage("substitution images must share a field and variable count");
            }
            if img.degree().unwrap_or(0) > 1 {
                return usage("substitution images must be linear forms");
            }
        }
        Ok(self.compose(images))
    }

    /// Horner-style evaluation at polynomial arguments, one variable at a time.
    pub(crate) fn compose(&self, images: &[SparsePoly]) -> SparsePoly {
        let target = images.first().map(|i| i.nvars).unwrap_or(self.nvars);
        if self.is_zero() {
            return SparsePoly::zero(self.field, target);
        }
        let mut lex = self.terms.clone();
        lex.sort_unstable_by(|a, b| b.0.lex_key().cmp(&a.0.lex_key()));
        let mut powers: Vec<FxHashMap<u32, SparsePoly>> = vec![FxHashMap::default(); images.len()];
        horner(&lex, 0, images, &mut powers, self.field, target)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. A single polynomial is a Gröbner basis of the ideal it
    /// generates, so a nonzero remainder certifies non-divisibility.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<Option<SparsePoly>> {
        self.check_compatible(divisor)?;
        let Some((lm, lc)) = divisor.leading_term() else {
            return usage("division by the zero polynomial");
        };
        let f = self.field;
        let lc_inv = f.inv(lc).expect("leading coefficient is nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(m);
            let qc = f.mul(c, lc_inv);
            quot.push((qm, qc));
            rem = rem.merge_with(divisor.terms.iter().map(|&(t, a)| (t.mul(qm), f.neg(f.mul(a, qc)))));
        }
        Ok(Some(SparsePoly {
            field: f,
            nvars: self.nvars,
            terms: quot,
        }))
    }

    /// Render with caller-supplied variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, &(m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            out.push_str(&c.to_string());
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exponent(i) {
                    0 => {}
                    1 => {
                        out.push('*');
                        out.push_str(name);
                    }
                    e => {
                        out.push('*');
                        out.push_str(name);
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }
}

fn horner(
    terms: &[(Monomial, u32)],
    var: usize,
    images: &[SparsePoly],
    powers: &mut [FxHashMap<u32, SparsePoly>],
    field: PrimeField,
    target: usize,
) -> SparsePoly {
    if var == images.len() {
        debug_assert_eq!(terms.len(), 1);
        return SparsePoly::constant(field, target, terms[0].1);
    }
    let mut acc = SparsePoly::zero(field, target);
    let mut prev: Option<u32> = None;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0.exponent(var);
        let mut end = start + 1;
        while end < terms.len() && terms[end].0.exponent(var) == e {
            end += 1;
        }
        if let Some(pe) = prev {
            acc = acc.mul_unchecked(power_of(images, powers, var, pe - e));
        }
        let inner = horner(&terms[start..end], var + 1, images, powers, field, target);
        acc = acc.merge_with(inner.terms.into_iter());
        prev = Some(e);
        start = end;
    }
    if let Some(pe) = prev {
        if pe > 0 {
            acc = acc.mul_unchecked(power_of(images, powers, var, pe));
        }
    }
    acc
}

fn power_of<'a>(
    images: &[SparsePoly],
    powers: &'a mut [FxHashMap<u32, SparsePoly>],
    var: usize,
    e: u32,
) -> &'a SparsePoly {
    powers[var]
        .entry(e)
        .or_insert_with(|| images[var].pow(e as u64))
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_string_with(&refs))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait<&SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                self.$imp(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$trait<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$imp(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn x(field: PrimeField, n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(field, n, i)
    }

    #[test]
    fn additive_examples() {
        let f = f3();
        let p = &x(f, 2, 0) + &x(f, 2, 1);
        let q = &x(f, 2, 0) + &x(f, 2, 1).scale(2);
        assert_eq!(&p + &q, x(f, 2, 0).scale(2));
        assert_eq!(&p + &SparsePoly::zero(f, 2), p);
        assert!((&p + &p.neg()).is_zero());
    }

    #[test]
    fn freshman_dream() {
        let f = f3();
        let s = &x(f, 2, 0) + &x(f, 2, 1);
        let cube = &(&s * &s) * &s;
        assert_eq!(cube, &x(f, 2, 0).pow(3) + &x(f, 2, 1).pow(3));
        assert_eq!(s.pow(9), &x(f, 2, 0).frobenius(2) + &x(f, 2, 1).frobenius(2));
        assert_eq!(s.pow(0), SparsePoly::one(f, 2));
        let xy = &x(f, 2, 0) * &x(f, 2, 1);
        assert_eq!(xy.terms().len(), 1);
        assert_eq!(xy.coefficient(&[1, 1]), 1);
    }

    #[test]
    fn mismatched_arity_is_usage_error() {
        let f = f3();
        let err = x(f, 2, 0).try_add(&x(f, 3, 0)).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
        let g = PrimeField::new(5).unwrap();
        assert!(x(f, 2, 0).try_mul(&x(g, 2, 0)).is_err());
        assert!(x(f, 2, 0).substitute_linear(&[x(f, 1, 0)]).is_err());
    }

    #[test]
    fn grlex_order_and_display() {
        let f = f3();
        let p = SparsePoly::from_terms(
            f,
            2,
            vec![(vec![0, 0], 1), (vec![1, 0], 1), (vec![1, 1], 1), (vec![0, 2], 2)],
        )
        .unwrap();
        assert_eq!(p.to_string(), "1*x1*x2 + 2*x2^2 + 1*x1 + 1");
        assert_eq!(SparsePoly::zero(f, 2).to_string(), "0");
        assert_eq!(p.graded_component(2).to_string(), "1*x1*x2 + 2*x2^2");
        assert!(p.graded_component(7).is_zero());
    }

    #[test]
    fn substitution_identity_and_zero() {
        let f = f3();
        let p = SparsePoly::from_terms(f, 3, vec![(vec![2, 1, 0], 1), (vec![0, 0, 3], 2), (vec![0, 0, 0], 1)])
            .unwrap();
        let id: Vec<_> = (0..3).map(|i| x(f, 3, i)).collect();
        assert_eq!(p.substitute_linear(&id).unwrap(), p);
        let zero: Vec<_> = (0..3).map(|_| SparsePoly::zero(f, 2)).collect();
        assert_eq!(p.substitute_linear(&zero).unwrap(), SparsePoly::constant(f, 2, 1));
    }

    #[test]
    fn exact_division() {
        let f = f3();
        let a = &x(f, 2, 0) + &x(f, 2, 1);
        let b = &x(f, 2, 0) - &x(f, 2, 1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), Some(b.clone()));
        assert_eq!(prod.div_exact(&x(f, 2, 0)).unwrap(), None);
    }

    #[test]
    fn coefficients_in_variable() {
        let f = f3();
        // (X - x1)(X - 2 x1) = X^2 + 2 x1^2 over F_3
        let xx = x(f, 2, 1);
        let a = &xx - &x(f, 2, 0);
        let b = &xx - &x(f, 2, 0).scale(2);
        let coeffs = (&a * &b).coefficients_in(1);
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[0].0, 0);
        assert_eq!(coeffs[0].1, x(f, 1, 0).pow(2).scale(2));
        assert_eq!(coeffs[1], (2, SparsePoly::one(f, 1)));
    }
}
