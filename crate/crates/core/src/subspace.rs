//! Subspaces of F_p^m in reduced row-echelon normal form.

use std::fmt;

use serde::Serialize;

use crate::error::{usage, Result};
use crate::field::PrimeField;
use crate::linalg;

/// A subspace of F_p^m, stored as its unique RREF basis. Structural equality
/// is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F_{}^{}, {:?})", self.field.p(), self.ambient, self.rows)
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| (0..ambient).map(|j| (i == j) as u32).collect())
            .collect();
        Subspace {
            field,
            ambient,
            rows,
        }
    }

    /// Span of arbitrary vectors (entries reduced mod p).
    pub fn span<V: AsRef<[u32]>>(field: PrimeField, ambient: usize, vectors: &[V]) -> Result<Subspace> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient {
                return usage(format!("vector of length {} in ambient dimension {ambient}", v.len()));
            }
            rows.push(v.iter().map(|&x| x % field.p()).collect());
        }
        linalg::rref(field, &mut rows);
        Ok(Subspace {
            field,
            ambient,
            rows,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// RREF basis rows.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.iter().map(|&x| x % self.field.p()).collect());
        linalg::rank(self.field, &rows) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Subspace::span(self.field, self.ambient, &all).expect("same ambient space")
    }

    /// Linear combination of the basis rows with the given coefficients.
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut v = vec![0u32; self.ambient];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(row) {
                *a = f.add(*a, f.mul(c, b));
            }
        }
        v
    }

    /// All `p^dim` vectors, ordered by their coordinate tuples.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        coefficient_tuples(self.field, self.dim())
            .map(|c| self.combine(&c))
            .collect()
    }

    /// One representative per line: the nonzero vectors whose first nonzero
    /// coordinate is 1.
    pub fn line_representatives(&self) -> Vec<Vec<u32>> {
        self.elements()
            .into_iter()
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
            .collect()
    }

    /// All subspaces of `self` of dimension `k`, as subspaces of the ambient space.
    pub fn subspaces(&self, k: usize) -> Vec<Subspace> {
        enumerate_subspaces(self.field, self.dim(), k)
            .into_iter()
            .map(|s| {
                let vecs: Vec<Vec<u32>> = s.rows.iter().map(|c| self.combine(c)).collect();
                Subspace::span(self.field, self.ambient, &vecs).unwrap()
            })
            .collect()
    }
}

/// All coefficient tuples in `F_p^k`, lexicographic.
pub fn coefficient_tuples(field: PrimeField, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = field.p() as u64;
    let total = p.pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut c = vec![0u32; k];
        for slot in c.iter_mut().rev() {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        c
    })
}

/// Number of k-dimensional subspaces of F_p^m.
pub fn gaussian_binomial(p: u64, m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= p.pow((m - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every k-dimensional subspace of F_p^m exactly once, ordered by pivot
/// columns and then by the free entries.
pub fn enumerate_subspaces(field: PrimeField, m: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    for pivots in combinations(m, k) {
        // Free slots: (row, col) with col > pivot[row] and col not a pivot.
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                (pivots[r] + 1..m).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        for vals in coefficient_tuples(field, slots.len()) {
            let mut rows = vec![vec![0u32; m]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for (&(r, c), &v) in slots.iter().zip(&vals) {
                rows[r][c] = v;
            }
            out.push(Subspace {
                field,
                ambient: m,
                rows,
            });
        }
    }
    out
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}
