//! Dickson invariants of a subspace `V` of linear forms.
//!
//! A subspace `V` of F_p^m is read as a space of linear forms in `m`
//! variables (the vector `v` is `sum_j v_j x_j`), so its Dickson invariants
//! live in the polynomial ring on the ambient variables.
//!
//! Two routes are provided and cross-checked in tests: the coefficients of
//! `prod_{v in V} (X - v)`, and the signed sum of punctured products over
//! `r`-dimensional subspaces.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{usage, Error, Result};
use crate::field::PrimeField;
use crate::poly::SparsePoly;
use crate::subspace::Subspace;

/// Linear form `sum_j v_j x_j` in `nvars >= v.len()` variables.
pub fn linear_form(field: PrimeField, v: &[u32], nvars: usize) -> SparsePoly {
    SparsePoly::linear(field, v).with_extra_vars(nvars - v.len())
}

/// `prod_{v in V} (X - v)` with `X` as an extra last variable.
pub fn vanishing_polynomial(v: &Subspace) -> SparsePoly {
    let field = v.field();
    let m = v.ambient_dim();
    let x = SparsePoly::var(field, m + 1, m);
    v.elements()
        .iter()
        .fold(SparsePoly::one(field, m + 1), |acc, e| {
            &acc * &(&x - &linear_form(field, e, m + 1))
        })
}

/// All Dickson invariants `D_0(V), .., D_{k-1}(V)` (`k = dim V`) from the
/// expansion of `prod (X - v)`. Every coefficient of `X` outside the powers
/// `X^{p^r}` is checked to vanish.
pub fn dickson_all(v: &Subspace) -> Result<Vec<SparsePoly>> {
    let k = v.dim();
    if k == 0 {
        return usage("Dickson invariants need a subspace of positive dimension");
    }
    let field = v.field();
    let p = field.p() as u64;
    let m = v.ambient_dim();
    let powers: Vec<u64> = (0..=k).map(|r| p.pow(r as u32)).collect();
    let mut out = vec![SparsePoly::zero(field, m); k];
    let mut top_seen = false;
    for (deg, coeff) in vanishing_polynomial(v).coefficients_in(m) {
        match powers.iter().position(|&q| q == deg as u64) {
            Some(r) if r == k => {
                if coeff != SparsePoly::one(field, m) {
                    return Err(Error::Inconsistent(format!(
                        "leading coefficient of prod(X - v) is {coeff}, not 1"
                    )));
                }
                top_seen = true;
            }
            Some(r) => out[r] = coeff.scale(field.sign(k - r)),
            None => {
                return Err(Error::Inconsistent(format!(
                    "prod(X - v) has a nonzero coefficient at X^{deg}"
                )))
            }
        }
    }
    if !top_seen {
        return Err(Error::Inconsistent("prod(X - v) is not monic".into()));
    }
    Ok(out)
}

pub fn dickson_product(v: &Subspace, r: usize) -> Result<SparsePoly> {
    check_index(v, r)?;
    Ok(dickson_all(v)?.swap_remove(r))
}

fn check_index(v: &Subspace, r: usize) -> Result<()> {
    if v.dim() == 0 || r >= v.dim() {
        return usage(format!(
            "Dickson index {r} out of range for a subspace of dimension {}",
            v.dim()
        ));
    }
    Ok(())
}

/// `prod_{v in V \ Y} v`.
pub fn punctured_product(v: &Subspace, y: &Subspace) -> Result<SparsePoly> {
    if !y.is_subspace_of(v) {
        return usage("punctured product needs Y to be a subspace of V");
    }
    let field = v.field();
    let m = v.ambient_dim();
    Ok(v.elements()
        .iter()
        .filter(|e| !y.contains(e))
        .fold(SparsePoly::one(field, m), |acc, e| {
            &acc * &linear_form(field, e, m)
        }))
}

/// `(-1)^{m-r} sum_{Y, dim Y = r} P_{V,Y}`.
pub fn dickson_macdonald(v: &Subspace, r: usize) -> Result<SparsePoly> {
    check_index(v, r)?;
    let field = v.field();
    let mut acc = SparsePoly::zero(field, v.ambient_dim());
    for y in v.subspaces(r) {
        acc = &acc + &punctured_product(v, &y)?;
    }
    Ok(acc.scale(field.sign(v.dim() - r)))
}

/// Product of one representative (first nonzero coordinate 1) per line of `V`.
pub fn subspace_product(v: &Subspace) -> Result<SparsePoly> {
    if v.dim() == 0 {
        return usage("subspace product needs a subspace of positive dimension");
    }
    let field = v.field();
    let m = v.ambient_dim();
    Ok(v.line_representatives()
        .iter()
        .fold(SparsePoly::one(field, m), |acc, e| {
            &acc * &linear_form(field, e, m)
        }))
}

/// Check `Res_U D_r(V*) = D_{r-l}(U*)^{p^l}` (or `0` when `l > r`), where
/// `V = F_p^m`, `U` is a subspace of codimension `l`, and the restriction
/// sends `x_j` to its values on the RREF basis of `U`.
pub fn restrict_dickson_check(u: &Subspace, r: usize) -> Result<bool> {
    let field = u.field();
    let m = u.ambient_dim();
    let full = Subspace::full(field, m);
    let big = dickson_product(&full, r)?;
    let k = u.dim();
    let l = m - k;
    let images: Vec<SparsePoly> = (0..m)
        .map(|j| {
            let coeffs: Vec<u32> = u.basis().iter().map(|row| row[j]).collect();
            SparsePoly::linear(field, &coeffs)
        })
        .collect();
    if k == 0 {
        // Restriction to the zero space only keeps constants.
        return Ok(big.constant_term() == 0);
    }
    let restricted = big.substitute_linear(&images)?;
    let expected = if l <= r {
        let small = dickson_product(&Subspace::full(field, k), r - l)?;
        small.frobenius(l as u32)
    } else {
        SparsePoly::zero(field, k)
    };
    Ok(restricted == expected)
}

/// Session cache of Dickson invariants keyed by subspace. Safe to share
/// between threads.
#[derive(Default)]
pub struct DicksonCache {
    entries: Mutex<HashMap<Subspace, Arc<Vec<SparsePoly>>>>,
}

impl DicksonCache {
    pub fn new() -> DicksonCache {
        DicksonCache::default()
    }

    pub fn all(&self, v: &Subspace) -> Result<Arc<Vec<SparsePoly>>> {
        if let Some(hit) = self.entries.lock().unwrap().get(v) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(dickson_all(v)?);
        self.entries
            .lock()
            .unwrap()
            .insert(v.clone(), computed.clone());
        Ok(computed)
    }

    pub fn get(&self, v: &Subspace, r: usize) -> Result<SparsePoly> {
        check_index(v, r)?;
        Ok(self.all(v)?[r].clone())
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::enumerate_subspaces;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn one_dimensional() {
        for p in [3, 5, 7] {
            let k = f(p);
            let v = Subspace::span(k, 2, &[vec![1, 2]]).unwrap();
            let u = linear_form(k, &[1, 2], 2);
            let want = u.pow(p as u64 - 1);
            assert_eq!(dickson_product(&v, 0).unwrap(), want);
            assert_eq!(dickson_macdonald(&v, 0).unwrap(), want);
            assert_eq!(subspace_product(&v).unwrap(), u);
        }
    }

    #[test]
    fn plane_over_f3() {
        let k = f(3);
        let v = Subspace::full(k, 2);
        let d1 = dickson_product(&v, 1).unwrap();
        // Frozen from the direct 9-fold expansion of prod (X - v).
        assert_eq!(d1.to_string(), "1*x1^6 + 1*x1^4*x2^2 + 1*x1^2*x2^4 + 1*x2^6");
        assert_eq!(d1.degree(), Some(6));
        assert_eq!(dickson_product(&v, 0).unwrap().degree(), Some(8));
        assert_eq!(subspace_product(&v).unwrap().degree(), Some(4));
        assert!(dickson_product(&v, 2).is_err());
        assert!(dickson_product(&Subspace::zero(k, 2), 0).is_err());
    }

    #[test]
    fn vanishing_polynomial_shape() {
        let k = f(3);
        let v = Subspace::full(k, 2);
        let poly = vanishing_polynomial(&v);
        let degs: Vec<u32> = poly.coefficients_in(2).into_iter().map(|(d, _)| d).collect();
        assert_eq!(degs, vec![1, 3, 9]);
    }

    #[test]
    fn punctured_product_edges() {
        let k = f(3);
        let v = Subspace::full(k, 2);
        assert_eq!(punctured_product(&v, &v).unwrap(), SparsePoly::one(k, 2));
        let p0 = punctured_product(&v, &Subspace::zero(k, 2)).unwrap();
        assert_eq!(p0, dickson_product(&v, 0).unwrap().scale(k.sign(2)));
        let not_sub = Subspace::span(k, 2, &[vec![1, 0]]).unwrap();
        let line = Subspace::span(k, 2, &[vec![0, 1]]).unwrap();
        assert!(punctured_product(&line, &not_sub).is_err());
    }

    #[test]
    fn restriction_lemma_examples() {
        let k = f(3);
        let line = Subspace::span(k, 2, &[vec![1, 0]]).unwrap();
        assert!(restrict_dickson_check(&Subspace::full(k, 2), 0).unwrap());
        assert!(restrict_dickson_check(&line, 0).unwrap());
        assert!(restrict_dickson_check(&line, 1).unwrap());
        // l = 1 <= r = 1: restriction is u^6.
        let big = dickson_product(&Subspace::full(k, 2), 1).unwrap();
        let res = big
            .substitute_linear(&[SparsePoly::var(k, 1, 0), SparsePoly::zero(k, 1)])
            .unwrap();
        assert_eq!(res, SparsePoly::var(k, 1, 0).pow(6));
        for m in 1..=3 {
            for d in 0..=m {
                for u in enumerate_subspaces(k, m, d) {
                    for r in 0..m {
                        assert!(restrict_dickson_check(&u, r).unwrap(), "{u:?} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn cache_reuses_entries() {
        let k = f(3);
        let cache = DicksonCache::new();
        let v = Subspace::full(k, 2);
        let a = cache.get(&v, 1).unwrap();
        let b = cache.get(&v, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(cache.len(), 1);
    }
}
