//! The symplectic space E = F_p^{2n}, its dual E*, and the subspace
//! families built on them.
//!
//! Coordinates on E are `(a_1..a_n, b_1..b_n)` in the symplectic basis
//! `A_1..A_n, B_1..B_n`; coordinates on E* are in the dual basis
//! `A*_1..A*_n, B*_1..B*_n`. Both spaces carry the standard form
//! `<u, v> = sum_i u_{A,i} v_{B,i} - u_{B,i} v_{A,i}` (on E this is `b`, on
//! E* it is `b_L`).
//!
//! For a Lagrangian `I` with RREF basis `g_1..g_n`, the coordinates on `I*`
//! are taken in the dual basis `t_1..t_n` of the `g_k`.

use crate::error::{usage, Result};
use crate::field::PrimeField;
use crate::linalg;
use crate::poly::SparsePoly;
use crate::subspace::{enumerate_subspaces, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    field: PrimeField,
    n: usize,
}

impl SymplecticSpace {
    pub fn new(field: PrimeField, n: usize) -> Result<SymplecticSpace> {
        if n == 0 {
            return usage("half-rank n must be at least 1");
        }
        Ok(SymplecticSpace { field, n })
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    /// Half-dimension.
    pub fn n(self) -> usize {
        self.n
    }

    pub fn dim(self) -> usize {
        2 * self.n
    }

    /// The standard form on E (equivalently `b_L` on E*).
    pub fn form(self, u: &[u32], v: &[u32]) -> u32 {
        let f = self.field;
        let n = self.n;
        (0..n).fold(0, |acc, i| {
            let plus = f.mul(u[i], v[n + i]);
            let minus = f.mul(u[n + i], v[i]);
            f.add(acc, f.sub(plus, minus))
        })
    }

    pub fn gram(self) -> Vec<Vec<u32>> {
        let d = self.dim();
        let unit = |i: usize| -> Vec<u32> { (0..d).map(|j| (i == j) as u32).collect() };
        (0..d)
            .map(|i| (0..d).map(|j| self.form(&unit(i), &unit(j))).collect())
            .collect()
    }

    /// Basis vector `A_i` (or `A*_i` in E*), 1-based.
    pub fn a(self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i - 1] = 1;
        v
    }

    /// Basis vector `B_i` (or `B*_i` in E*), 1-based.
    pub fn b(self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[self.n + i - 1] = 1;
        v
    }

    pub fn is_totally_isotropic(self, v: &Subspace) -> bool {
        let rows = v.basis();
        rows.iter()
            .enumerate()
            .all(|(i, x)| rows[i + 1..].iter().all(|y| self.form(x, y) == 0))
    }

    /// `L(e) = b(e, -)`, in E* coordinates: `(a, b) -> (-b, a)`.
    pub fn l_map(self, e: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.n;
        (0..2 * n)
            .map(|j| if j < n { f.neg(e[n + j]) } else { e[j - n] })
            .collect()
    }

    pub fn l_inverse(self, u: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.n;
        (0..2 * n)
            .map(|j| if j < n { u[n + j] } else { f.neg(u[j - n]) })
            .collect()
    }

    pub fn l_image(self, v: &Subspace) -> Subspace {
        let rows: Vec<Vec<u32>> = v.basis().iter().map(|e| self.l_map(e)).collect();
        Subspace::span(self.field, self.dim(), &rows).unwrap()
    }

    pub fn l_preimage(self, v: &Subspace) -> Subspace {
        let rows: Vec<Vec<u32>> = v.basis().iter().map(|u| self.l_inverse(u)).collect();
        Subspace::span(self.field, self.dim(), &rows).unwrap()
    }

    /// Orthogonal complement with respect to the standard form.
    pub fn perp(self, v: &Subspace) -> Subspace {
        let f = self.field;
        let n = self.n;
        // <u, v> = u . J v with J v = (v_B, -v_A).
        let rows: Vec<Vec<u32>> = v
            .basis()
            .iter()
            .map(|x| (0..2 * n).map(|j| if j < n { x[n + j] } else { f.neg(x[j - n]) }).collect())
            .collect();
        if rows.is_empty() {
            return Subspace::full(f, self.dim());
        }
        let ns = linalg::nullspace(f, &rows, self.dim());
        Subspace::span(f, self.dim(), &ns).unwrap()
    }

    /// All maximal totally isotropic subspaces, in enumeration order. This
    /// order is the canonical Lagrangian index used everywhere else.
    pub fn lagrangians(self) -> Vec<Subspace> {
        enumerate_subspaces(self.field, self.dim(), self.n)
            .into_iter()
            .filter(|s| self.is_totally_isotropic(s))
            .collect()
    }

    /// Restriction of a functional on E to I*, in the `t` coordinates.
    pub fn restrict_vector(self, lagrangian: &Subspace, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        lagrangian
            .basis()
            .iter()
            .map(|g| g.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    /// Restriction of a subspace of E* to I*.
    pub fn restrict_subspace(self, lagrangian: &Subspace, v: &Subspace) -> Subspace {
        let rows: Vec<Vec<u32>> = v
            .basis()
            .iter()
            .map(|x| self.restrict_vector(lagrangian, x))
            .collect();
        Subspace::span(self.field, lagrangian.dim(), &rows).unwrap()
    }

    /// `2n x k` matrix: row `j` holds the `t`-coordinates of `Res(x_j)`.
    pub fn restriction_matrix(self, subspace: &Subspace) -> Vec<Vec<u32>> {
        let g = subspace.basis();
        (0..self.dim())
            .map(|j| g.iter().map(|row| row[j]).collect())
            .collect()
    }

    /// The restriction map `Sym(E*) -> Sym(I*)` as substitution images.
    pub fn restriction_images(self, subspace: &Subspace) -> Vec<SparsePoly> {
        self.restriction_matrix(subspace)
            .iter()
            .map(|coeffs| SparsePoly::linear(self.field, coeffs))
            .collect()
    }

    /// Members of the family of `r`-dimensional subspaces spanned by one of
    /// `A*_i, B*_i` for each `i <= r`. Bit `i-1` of the index picks `B*_i`.
    pub fn z_family(self, r: usize) -> Result<Vec<Subspace>> {
        if r > self.n {
            return usage(format!("z_family index {r} exceeds n = {}", self.n));
        }
        Ok((0..1usize << r).map(|mask| self.z_member(r, mask)).collect())
    }

    pub fn z_member(self, r: usize, mask: usize) -> Subspace {
        let rows: Vec<Vec<u32>> = (1..=r)
            .map(|i| if mask >> (i - 1) & 1 == 1 { self.b(i) } else { self.a(i) })
            .collect();
        Subspace::span(self.field, self.dim(), &rows).unwrap()
    }

    /// Extend `v` (a member of the `(r-1)` family whose restriction to I* is
    /// still `(r-1)`-dimensional) by `A*_r` or `B*_r` so the restriction
    /// becomes `r`-dimensional. `A*_r` is tried first.
    pub fn extend_in_z(self, v: &Subspace, lagrangian: &Subspace) -> Result<Subspace> {
        let r = v.dim() + 1;
        if r > self.n {
            return usage("cannot extend beyond the top of the family");
        }
        if !self.z_family(r - 1)?.contains(v) {
            return usage("subspace is not a member of the requested family");
        }
        if self.restrict_subspace(lagrangian, v).dim() != r - 1 {
            return usage("restriction of the subspace has dropped dimension");
        }
        for y in [self.a(r), self.b(r)] {
            let ext = v.sum(&Subspace::span(self.field, self.dim(), &[y]).unwrap());
            if self.restrict_subspace(lagrangian, &ext).dim() == r {
                return Ok(ext);
            }
        }
        Err(crate::error::Error::Inconsistent(
            "neither A*_r nor B*_r extends the restriction".into(),
        ))
    }

    /// The explicit Lagrangians `span{A_i + B_i}` and `span{Y_1..Y_n}` with
    /// `Y_r = B_1 + .. + B_r + A_r - A_{r+1}` for `r < n` and
    /// `Y_n = sum_r (r + 1 - n) B_r + A_n - A_1`.
    pub fn mt_witnesses(self) -> (Subspace, Subspace) {
        let f = self.field;
        let n = self.n;
        let xs: Vec<Vec<u32>> = (1..=n).map(|i| add(f, &self.a(i), &self.b(i))).collect();
        let mut ys = Vec::with_capacity(n);
        for r in 1..n {
            let mut y = vec![0u32; 2 * n];
            for i in 1..=r {
                y = add(f, &y, &self.b(i));
            }
            y = add(f, &y, &self.a(r));
            y = sub(f, &y, &self.a(r + 1));
            ys.push(y);
        }
        let mut y = vec![0u32; 2 * n];
        for r in 1..=n {
            let c = f.reduce(r as i64 + 1 - n as i64);
            y = add(f, &y, &scale(f, &self.b(r), c));
        }
        y = add(f, &y, &self.a(n));
        y = sub(f, &y, &self.a(1));
        ys.push(y);
        let d = self.dim();
        (
            Subspace::span(f, d, &xs).unwrap(),
            Subspace::span(f, d, &ys).unwrap(),
        )
    }
}

fn add(f: PrimeField, u: &[u32], v: &[u32]) -> Vec<u32> {
    u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
}

fn sub(f: PrimeField, u: &[u32], v: &[u32]) -> Vec<u32> {
    u.iter().zip(v).map(|(&a, &b)| f.sub(a, b)).collect()
}

fn scale(f: PrimeField, u: &[u32], c: u32) -> Vec<u32> {
    u.iter().map(|&a| f.mul(a, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::{coefficient_tuples, enumerate_subspaces};

    fn space(p: u32, n: usize) -> SymplecticSpace {
        SymplecticSpace::new(PrimeField::new(p).unwrap(), n).unwrap()
    }

    #[test]
    fn gram_is_standard() {
        let e = space(3, 2);
        let g = e.gram();
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (0, 2) | (1, 3) => 1,
                    (2, 0) | (3, 1) => 2,
                    _ => 0,
                };
                assert_eq!(g[i][j], want, "({i},{j})");
            }
        }
    }

    #[test]
    fn lagrangian_counts() {
        for (p, n, want) in [(3, 1, 4), (3, 2, 40), (5, 1, 6)] {
            let e = space(p, n);
            let lag = e.lagrangians();
            assert_eq!(lag.len(), want);
            let product: usize = (1..=n).map(|i| (p as usize).pow(i as u32) + 1).product();
            assert_eq!(lag.len(), product);
        }
    }

    #[test]
    fn l_map_on_basis() {
        let e = space(3, 1);
        assert_eq!(e.l_map(&e.a(1)), e.b(1));
        assert_eq!(e.l_map(&e.b(1)), vec![2, 0]);
        let basis = [e.a(1), e.b(1)];
        for x in &basis {
            assert_eq!(e.l_inverse(&e.l_map(x)), *x);
            for y in &basis {
                assert_eq!(e.form(&e.l_map(x), &e.l_map(y)), e.form(x, y));
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let e = space(3, 1);
        let f = e.field();
        let i = Subspace::span(f, 2, &[e.a(1)]).unwrap();
        assert_eq!(e.restriction_matrix(&i), vec![vec![1], vec![0]]);
        let i = Subspace::span(f, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(e.restriction_matrix(&i), vec![vec![1], vec![1]]);
    }

    #[test]
    fn restriction_evaluates_coordinates() {
        let e = space(3, 2);
        for lag in e.lagrangians() {
            let images = e.restriction_images(&lag);
            for c in coefficient_tuples(e.field(), 2) {
                let v = lag.combine(&c);
                for (j, img) in images.iter().enumerate() {
                    assert_eq!(img.eval(&c), v[j]);
                }
            }
        }
    }

    #[test]
    fn perp_examples() {
        let e = space(3, 1);
        let f = e.field();
        assert_eq!(e.perp(&Subspace::zero(f, 2)), Subspace::full(f, 2));
        let a = Subspace::span(f, 2, &[e.a(1)]).unwrap();
        assert_eq!(e.perp(&a), a);
    }

    #[test]
    fn perp_dimension_and_involution() {
        let e = space(3, 2);
        for k in 0..=4 {
            for v in enumerate_subspaces(e.field(), 4, k) {
                let w = e.perp(&v);
                assert_eq!(v.dim() + w.dim(), 4);
                assert_eq!(e.perp(&w), v);
            }
        }
    }

    #[test]
    fn z_family_shapes() {
        let e = space(3, 2);
        assert_eq!(e.z_family(0).unwrap(), vec![Subspace::zero(e.field(), 4)]);
        for r in 0..=2 {
            let z = e.z_family(r).unwrap();
            assert_eq!(z.len(), 1 << r);
            assert!(z.iter().all(|v| v.dim() == r && e.is_totally_isotropic(v)));
        }
        assert!(e.z_family(3).is_err());
    }

    #[test]
    fn extension_prefers_a_star() {
        let e = space(3, 1);
        let f = e.field();
        let i = Subspace::span(f, 2, &[e.a(1)]).unwrap();
        let ext = e.extend_in_z(&Subspace::zero(f, 2), &i).unwrap();
        assert_eq!(ext, Subspace::span(f, 2, &[e.a(1)]).unwrap());
        // span(B_1): A*_1 restricts to zero, so B*_1 is chosen.
        let i = Subspace::span(f, 2, &[e.b(1)]).unwrap();
        let ext = e.extend_in_z(&Subspace::zero(f, 2), &i).unwrap();
        assert_eq!(ext, Subspace::span(f, 2, &[e.b(1)]).unwrap());
        // Precondition failure: A*_1 vanishes on span(B_1, B_2).
        let two = space(3, 2);
        let f = two.field();
        let v = Subspace::span(f, 4, &[two.a(1)]).unwrap();
        let i = Subspace::span(f, 4, &[two.b(1), two.b(2)]).unwrap();
        assert!(two.extend_in_z(&v, &i).is_err());
        // Not a family member.
        let i = Subspace::span(f, 4, &[two.a(1), two.a(2)]).unwrap();
        let v = Subspace::span(f, 4, &[two.a(2)]).unwrap();
        assert!(two.extend_in_z(&v, &i).is_err());
    }

    #[test]
    fn witnesses_are_lagrangian() {
        for n in 1..=3 {
            let e = space(3, n);
            let (x, y) = e.mt_witnesses();
            assert_eq!(x.dim(), n);
            assert_eq!(y.dim(), n);
            assert!(e.is_totally_isotropic(&x));
            assert!(e.is_totally_isotropic(&y));
        }
    }
}
