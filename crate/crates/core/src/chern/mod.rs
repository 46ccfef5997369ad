//! Classes of the Chern subring modulo nilradical, represented by their
//! restrictions to the maximal elementary abelian subgroups.
//!
//! For a Lagrangian `I` the maximal elementary abelian subgroup `M` has
//! `Sym(M*) = Sym(I*) [gamma]`, so each component of a [`QuillenClass`] is a
//! polynomial in `n + 1` variables: `t_1..t_n` (dual to the RREF basis of
//! `I`) followed by `gamma`. The lift of `gamma` is fixed once per
//! Lagrangian; every formula used here is invariant under changing it.

mod class;
mod indicator;
mod membership;

pub use class::QuillenClass;
pub use indicator::IndicatorSet;
pub use membership::{candidate_monomials, Membership, MembershipResult, MembershipSolver, DEFAULT_BUDGET};

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::dickson::{linear_form, DicksonCache};
use crate::error::{usage, Error, Result};
use crate::field::PrimeField;
use crate::poly::SparsePoly;
use crate::subspace::{coefficient_tuples, Subspace};
use crate::symplectic::SymplecticSpace;

/// Everything shared by the classes of one `(p, n)`.
pub struct ChernContext {
    space: SymplecticSpace,
    lagrangians: Vec<Subspace>,
    /// Per Lagrangian, the restriction of each E* coordinate `x_j` as a
    /// linear form in the `n + 1` component variables.
    images: Vec<Vec<SparsePoly>>,
    /// Z-family of top dimension.
    z: Vec<Subspace>,
    /// `full_restriction[i][k]`: does `z[k]` restrict onto all of `I_i*`?
    full_restriction: Vec<Vec<bool>>,
    dickson: DicksonCache,
    relations_checked: OnceLock<Result<()>>,
}

impl ChernContext {
    pub fn new(p: u32, n: usize) -> Result<Arc<ChernContext>> {
        let field = PrimeField::new(p)?;
        let space = SymplecticSpace::new(field, n)?;
        // Dickson expansions over E* need 2n + 1 variables.
        if 2 * n + 1 > crate::poly::MAX_VARS {
            return Err(Error::Envelope(format!("n = {n} is too large for this model")));
        }
        let lagrangians = space.lagrangians();
        let images = lagrangians
            .iter()
            .map(|lag| {
                space
                    .restriction_matrix(lag)
                    .iter()
                    .map(|row| SparsePoly::linear(field, row).with_extra_vars(1))
                    .collect()
            })
            .collect();
        let z = space.z_family(n)?;
        let full_restriction = lagrangians
            .iter()
            .map(|lag| {
                z.iter()
                    .map(|v| space.restrict_subspace(lag, v).dim() == n)
                    .collect()
            })
            .collect();
        Ok(Arc::new(ChernContext {
            space,
            lagrangians,
            images,
            z,
            full_restriction,
            dickson: DicksonCache::new(),
            relations_checked: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.space.field().p()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn field(&self) -> PrimeField {
        self.space.field()
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn lagrangians(&self) -> &[Subspace] {
        &self.lagrangians
    }

    pub fn dickson(&self) -> &DicksonCache {
        &self.dickson
    }

    /// Variables of a component polynomial.
    pub fn component_vars(&self) -> usize {
        self.n() + 1
    }

    /// Variables of `Sym(E*)`.
    pub fn ambient_vars(&self) -> usize {
        2 * self.n()
    }

    /// The top Z-family, indexed by the bitmask convention of
    /// [`SymplecticSpace::z_member`].
    pub fn z(&self) -> &[Subspace] {
        &self.z
    }

    pub(crate) fn z_full_on(&self, lagrangian: usize, z_index: usize) -> bool {
        self.full_restriction[lagrangian][z_index]
    }

    pub fn z_index(&self, v: &Subspace) -> Option<usize> {
        self.z.iter().position(|w| w == v)
    }

    pub fn restriction_images(&self, lagrangian: usize) -> &[SparsePoly] {
        &self.images[lagrangian]
    }

    /// Restriction of an E* vector to `I*`, as `t`-coordinates.
    pub fn restrict_vector(&self, lagrangian: usize, v: &[u32]) -> Vec<u32> {
        self.space.restrict_vector(&self.lagrangians[lagrangian], v)
    }

    fn gamma(&self) -> SparsePoly {
        SparsePoly::var(self.field(), self.component_vars(), self.n())
    }

    /// All linear forms `v` of `I*`, in component variables.
    fn dual_forms(&self) -> Vec<SparsePoly> {
        let f = self.field();
        coefficient_tuples(f, self.n())
            .map(|c| linear_form(f, &c, self.component_vars()))
            .collect()
    }

    /// `D_r(I*)` in component variables (the same polynomial for every
    /// Lagrangian in `t`-coordinates).
    pub fn dickson_of_dual(&self, r: usize) -> Result<SparsePoly> {
        let full = Subspace::full(self.field(), self.n());
        Ok(self.dickson.get(&full, r)?.with_extra_vars(1))
    }

    fn uniform(self: &Arc<Self>, component: SparsePoly) -> QuillenClass {
        QuillenClass::from_components(self.clone(), vec![component; self.lagrangians.len()])
    }

    pub fn zero(self: &Arc<Self>) -> QuillenClass {
        self.uniform(SparsePoly::zero(self.field(), self.component_vars()))
    }

    pub fn one(self: &Arc<Self>) -> QuillenClass {
        self.scalar(1)
    }

    pub fn scalar(self: &Arc<Self>, c: u32) -> QuillenClass {
        self.uniform(SparsePoly::constant(self.field(), self.component_vars(), c))
    }

    fn check_generator_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return usage(format!("generator index {i} outside 1..={}", self.n()));
        }
        Ok(())
    }

    /// `alpha_i`, the first Chern class of `A*_i`.
    pub fn alpha(self: &Arc<Self>, i: usize) -> Result<QuillenClass> {
        self.check_generator_index(i)?;
        self.inflate(&self.coordinate(i - 1))
    }

    /// `beta_i`, the first Chern class of `B*_i`.
    pub fn beta(self: &Arc<Self>, i: usize) -> Result<QuillenClass> {
        self.check_generator_index(i)?;
        self.inflate(&self.coordinate(self.n() + i - 1))
    }

    /// The E* coordinate `x_j` (0-based) as a polynomial in `Sym(E*)`.
    pub fn coordinate(&self, j: usize) -> SparsePoly {
        SparsePoly::var(self.field(), self.ambient_vars(), j)
    }

    /// `kappa_r`, restricting to `D_r(I*)` on every maximal elementary abelian.
    pub fn kappa(self: &Arc<Self>, r: usize) -> Result<QuillenClass> {
        if r >= self.n() {
            return usage(format!("kappa index {r} outside 0..{}", self.n()));
        }
        Ok(self.uniform(self.dickson_of_dual(r)?))
    }

    /// `zeta`, restricting to `prod_{v in I*} (gamma + v)`.
    pub fn zeta(self: &Arc<Self>) -> QuillenClass {
        let gamma = self.gamma();
        let comp = self
            .dual_forms()
            .iter()
            .fold(SparsePoly::one(self.field(), self.component_vars()), |acc, v| {
                &acc * &(&gamma + v)
            });
        self.uniform(comp)
    }

    /// Graded pieces `(degree, c_degree(rho_j))` of the total Chern class of
    /// the faithful representation `rho_j`, from
    /// `prod_{v in I*} (1 + j gamma + v)`.
    pub fn total_chern(self: &Arc<Self>, j: u32) -> Result<Vec<(u32, QuillenClass)>> {
        let f = self.field();
        if j == 0 || j >= f.p() {
            return usage(format!("representation index {j} outside 1..{}", f.p()));
        }
        let nv = self.component_vars();
        let one = SparsePoly::one(f, nv);
        let jg = self.gamma().scale(j);
        let total = self
            .dual_forms()
            .iter()
            .fold(one.clone(), |acc, v| &acc * &(&(&one + &jg) + v));
        Ok(total
            .homogeneous_components()
            .into_iter()
            .rev()
            .map(|(d, part)| (d, self.uniform(part)))
            .collect())
    }

    /// The inflation `Sym(E*) -> H(G)`, componentwise restriction.
    pub fn inflate(self: &Arc<Self>, f: &SparsePoly) -> Result<QuillenClass> {
        if f.nvars() != self.ambient_vars() || f.field() != self.field() {
            return usage(format!(
                "inflation expects a polynomial in {} variables over F_{}",
                self.ambient_vars(),
                self.p()
            ));
        }
        let components: Vec<SparsePoly> = self
            .images
            .par_iter()
            .map(|img| f.compose(img))
            .collect();
        Ok(QuillenClass::from_components(self.clone(), components))
    }

    /// Inflation of `prod_k forms[k]` for linear forms given as E* vectors,
    /// computed as the product of the restricted factors (inflation is a
    /// ring homomorphism). Equal restricted factors are grouped and raised
    /// to their multiplicity.
    pub fn inflate_linear_product(self: &Arc<Self>, forms: &[Vec<u32>]) -> QuillenClass {
        let f = self.field();
        let nv = self.component_vars();
        let components = (0..self.lagrangians.len())
            .into_par_iter()
            .map(|li| {
                let mut counts: std::collections::BTreeMap<Vec<u32>, u64> = Default::default();
                for v in forms {
                    *counts.entry(self.restrict_vector(li, v)).or_default() += 1;
                }
                counts
                    .iter()
                    .fold(SparsePoly::one(f, nv), |acc, (w, &k)| {
                        &acc * &linear_form(f, w, nv).pow(k)
                    })
            })
            .collect();
        QuillenClass::from_components(self.clone(), components)
    }

    /// Inflation of the Dickson invariant `D_r(V)` for `V` a subspace of E*,
    /// as the signed `X^{p^r}` coefficient of
    /// `prod_{v in V} (X - Res v)` on each component.
    pub fn inflate_dickson(self: &Arc<Self>, v: &Subspace, r: usize) -> Result<QuillenClass> {
        let m = v.dim();
        if m == 0 || r >= m {
            return usage(format!("Dickson index {r} out of range for dimension {m}"));
        }
        if v.ambient_dim() != self.ambient_vars() {
            return usage("subspace does not live in E*");
        }
        let f = self.field();
        let nv = self.component_vars();
        let x = SparsePoly::var(f, nv + 1, nv);
        let elements = v.elements();
        let target = (f.p() as u64).pow(r as u32) as u32;
        let sign = f.sign(m - r);
        let components: Result<Vec<SparsePoly>> = (0..self.lagrangians.len())
            .into_par_iter()
            .map(|li| {
                let mut counts: std::collections::BTreeMap<Vec<u32>, u64> = Default::default();
                for e in &elements {
                    *counts.entry(self.restrict_vector(li, e)).or_default() += 1;
                }
                let prod = counts.iter().fold(SparsePoly::one(f, nv + 1), |acc, (w, &k)| {
                    &acc * &(&x - &linear_form(f, w, nv + 1)).pow(k)
                });
                let mut out = SparsePoly::zero(f, nv);
                let p = f.p() as u64;
                for (deg, coeff) in prod.coefficients_in(nv) {
                    let d = deg as u64;
                    let is_p_power = d > 0 && {
                        let mut q = 1;
                        while q < d {
                            q *= p;
                        }
                        q == d
                    };
                    if !is_p_power {
                        return Err(Error::Inconsistent(format!(
                            "restricted prod(X - v) has a nonzero X^{deg} coefficient"
                        )));
                    }
                    if deg == target {
                        out = coeff.scale(sign);
                    }
                }
                Ok(out)
            })
            .collect();
        Ok(QuillenClass::from_components(self.clone(), components?))
    }

    /// The class restricting to `D_0(I*)` on `I` exactly when every member
    /// of `t` restricts onto `I*`, and to zero elsewhere.
    pub fn indicator(&self, t: &[Subspace]) -> Result<IndicatorSet> {
        IndicatorSet::new(self, t)
    }

    /// `D_T^(s)`: the inflation of `prod_j D_0(V_j)` for a sequence of
    /// members of `T` that uses each member at least once. The result is
    /// checked against `chi_T(I) D_0(I*)^s` on every component.
    pub fn d_t_s(
        self: &Arc<Self>,
        t: &[Subspace],
        s: usize,
        sequence: &[Subspace],
    ) -> Result<QuillenClass> {
        if t.is_empty() {
            return usage("D_T^(s) needs a nonempty T");
        }
        if sequence.len() != s || s < t.len() {
            return usage(format!(
                "sequence of length {} does not match s = {s} >= |T| = {}",
                sequence.len(),
                t.len()
            ));
        }
        if sequence.iter().any(|v| !t.contains(v)) || t.iter().any(|v| !sequence.contains(v)) {
            return usage("the sequence must consist of members of T and cover T");
        }
        let mut acc = self.one();
        for v in sequence {
            let d0 = self.dickson.get(v, 0)?;
            acc = acc.try_mul(&self.inflate(&d0)?)?;
        }
        let expected = self.indicator(t)?.class(self, s as u64)?;
        if let Some(li) = acc.first_difference(&expected)? {
            return Err(Error::Inconsistent(format!(
                "D_T^(s) component at Lagrangian {li} disagrees with chi_T D_0^s"
            )));
        }
        Ok(acc)
    }

    /// `R_r = sum_i (alpha_i^{p^r} beta_i - alpha_i beta_i^{p^r})` in `Sym(E*)`.
    pub fn ty_relation(&self, r: u32) -> SparsePoly {
        let n = self.n();
        let mut acc = SparsePoly::zero(self.field(), self.ambient_vars());
        for i in 0..n {
            let a = self.coordinate(i);
            let b = self.coordinate(n + i);
            let term = &(&a.frobenius(r) * &b) - &(&a * &b.frobenius(r));
            acc = &acc + &term;
        }
        acc
    }

    /// Confirms once per context that `R_1..R_n` inflate to zero; the
    /// membership solver's pruning is only valid when they do.
    pub(crate) fn relations_vanish(self: &Arc<Self>) -> Result<()> {
        self.relations_checked
            .get_or_init(|| {
                for r in 1..=self.n() as u32 {
                    if !self.inflate(&self.ty_relation(r))?.is_zero() {
                        return Err(Error::Inconsistent(format!("R_{r} does not inflate to zero")));
                    }
                }
                Ok(())
            })
            .clone()
    }
}

impl std::fmt::Debug for ChernContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChernContext(p = {}, n = {})", self.p(), self.n())
    }
}

#[cfg(test)]
mod tests;
