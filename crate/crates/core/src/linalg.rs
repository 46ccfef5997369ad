//! Dense linear algebra over F_p.
//!
//! Small routines (`rref`, `rank`, `nullspace`, `dependency`) work on
//! `Vec<Vec<u32>>` rows and are used for subspace bookkeeping. [`solve`]
//! is the workhorse behind the subring-membership solver and is written for
//! systems with a few thousand rows and columns.

use rayon::prelude::*;

use crate::field::PrimeField;

/// Reduce `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: PrimeField, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = field.sub(*v, field.mul(factor, pv));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : M x = 0}` for the matrix with the given rows.
pub fn nullspace(field: PrimeField, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u32; ncols];
            x[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = field.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// A nontrivial relation `sum_i c_i v_i = 0` among the vectors, if any.
/// The first dependent vector (in input order) gets coefficient 1.
pub fn dependency(field: PrimeField, vectors: &[Vec<u32>]) -> Option<Vec<u32>> {
    let k = vectors.len();
    // Incremental echelon basis, each entry tracking which input combination it is.
    let mut basis: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut vec = v.clone();
        let mut combo = vec![0u32; k];
        combo[idx] = 1;
        for (pc, bv, bc) in &basis {
            let factor = vec[*pc];
            if factor == 0 {
                continue;
            }
            for (a, &b) in vec.iter_mut().zip(bv) {
                *a = field.sub(*a, field.mul(factor, b));
            }
            for (a, &b) in combo.iter_mut().zip(bc) {
                *a = field.sub(*a, field.mul(factor, b));
            }
        }
        match vec.iter().position(|&x| x != 0) {
            None => return Some(combo),
            Some(pc) => {
                let inv = field.inv(vec[pc]).unwrap();
                vec.iter_mut().for_each(|x| *x = field.mul(*x, inv));
                combo.iter_mut().for_each(|x| *x = field.mul(*x, inv));
                basis.push((pc, vec, combo));
            }
        }
    }
    None
}

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// One solution (free variables set to zero) and the rank of the system.
    Unique { x: Vec<u32>, rank: usize },
    Inconsistent { rank: usize },
}

/// Solve `A x = b`. Rows of `a` have `ncols` entries reduced mod p.
///
/// Entries are updated without reduction between pivots and only reduced
/// when read as a pivot factor or when the accumulated bound would
/// overflow `u32`, which keeps the inner loop a plain multiply-add.
pub fn solve(field: PrimeField, mut a: Vec<Vec<u32>>, b: Vec<u32>, ncols: usize) -> Solution {
    let p = field.p();
    assert_eq!(a.len(), b.len());
    for (row, rhs) in a.iter_mut().zip(b) {
        assert_eq!(row.len(), ncols);
        row.push(rhs);
    }
    let width = ncols + 1;
    let step = (p - 1) * (p - 1);
    let budget = (u32::MAX - p) / step.max(1);
    let mut updates = 0u32;
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(found) = (r..a.len()).find(|&i| !a[i][col].is_multiple_of(p)) else {
            continue;
        };
        a.swap(r, found);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot = &mut head[r];
        for v in pivot[col..].iter_mut() {
            *v %= p;
        }
        let inv = field.inv(pivot[col]).unwrap();
        for v in pivot[col..].iter_mut() {
            *v = field.mul(*v, inv);
        }
        if updates >= budget {
            tail.par_iter_mut()
                .for_each(|row| row[col..].iter_mut().for_each(|v| *v %= p));
            updates = 0;
        }
        let pivot: &[u32] = &pivot[col..width];
        tail.par_iter_mut().for_each(|row| {
            let f = row[col] % p;
            if f == 0 {
                return;
            }
            let g = p - f;
            for (v, &pv) in row[col..width].iter_mut().zip(pivot) {
                *v += g * pv;
            }
        });
        updates += 1;
        pivots.push(col);
        r += 1;
    }
    let rank = r;
    for row in a.iter_mut() {
        row.iter_mut().for_each(|v| *v %= p);
    }
    if a[rank..].iter().any(|row| row[ncols] != 0) {
        return Solution::Inconsistent { rank };
    }
    let mut x = vec![0u32; ncols];
    for (ri, &pc) in pivots.iter().enumerate().rev() {
        let row = &a[ri];
        let mut v = row[ncols];
        for &qc in &pivots[ri + 1..] {
            if row[qc] != 0 && x[qc] != 0 {
                v = field.sub(v, field.mul(row[qc], x[qc]));
            }
        }
        x[pc] = v;
    }
    Solution::Unique { x, rank }
}
