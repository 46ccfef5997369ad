//! Membership of a class in the image of inflation.
//!
//! A homogeneous class of degree `d` lies in the subring generated by the
//! `alpha_i, beta_i` exactly when it is an F_p-combination of inflated
//! degree-`d` monomials. The relations `R_1..R_n` inflate to zero and have
//! pairwise coprime leading terms `alpha_r^{p^r} beta_r` for a suitable
//! weight order, so they form a Groebner basis and the monomials avoiding
//! those leading terms already span the image. Only those are used as
//! unknowns unless the full basis is requested.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{ChernContext, QuillenClass};
use crate::error::{usage, Error, Result};
use crate::linalg::{self, Solution};
use crate::poly::{Monomial, SparsePoly};

/// Default cap on the dense system size (rows times columns).
pub const DEFAULT_BUDGET: u64 = 30_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// A polynomial in `alpha_1..alpha_n, beta_1..beta_n` inflating to the target.
    Member { witness: SparsePoly },
    NotMember,
}

#[derive(Clone, Debug)]
pub struct MembershipResult {
    pub membership: Membership,
    /// Polynomial degree of the target (`alpha_i` and `beta_i` have degree 1).
    pub degree: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self.membership, Membership::Member { .. })
    }

    /// Witness rendered with generator names `alpha1..alphaN, beta1..betaN`.
    pub fn witness_string(&self) -> Option<String> {
        match &self.membership {
            Membership::Member { witness } => {
                let n = witness.nvars() / 2;
                let names: Vec<String> = (1..=n)
                    .map(|i| format!("alpha{i}"))
                    .chain((1..=n).map(|i| format!("beta{i}")))
                    .collect();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                Some(witness.to_string_with(&refs))
            }
            Membership::NotMember => None,
        }
    }
}

/// Degree-`d` monomials in `alpha_1..alpha_n, beta_1..beta_n` (variables
/// `0..2n`), built by extending each monomial only with variables at or
/// after its last one. With `prune`, monomials divisible by some
/// `alpha_r^{p^r} beta_r` are dropped; that set is closed under division so
/// pruning during the extension is exact.
///
/// Returns the layers for degrees `0..=d`; each entry of layer `k > 0` is
/// `(monomial, parent index in layer k - 1, added variable)`.
pub fn candidate_layers(p: u32, n: usize, d: u32, prune: bool) -> Vec<Vec<(Monomial, usize, usize)>> {
    let leading: Vec<Monomial> = (1..=n)
        .map(|r| {
            let q = (p as u64).pow(r as u32);
            let a = Monomial::var(r - 1).pow(q.min(u32::MAX as u64) as u32);
            a.mul(Monomial::var(n + r - 1))
        })
        .collect();
    let last_var = |m: Monomial| (0..2 * n).rev().find(|&v| m.exponent(v) > 0).unwrap_or(0);
    let mut layers = vec![vec![(Monomial::ONE, 0, 0)]];
    for _ in 0..d {
        let prev = layers.last().unwrap();
        let mut next = Vec::new();
        for (idx, &(m, _, _)) in prev.iter().enumerate() {
            for v in last_var(m)..2 * n {
                let child = m.mul(Monomial::var(v));
                if prune && leading.iter().any(|lt| lt.divides(child)) {
                    continue;
                }
                next.push((child, idx, v));
            }
        }
        layers.push(next);
    }
    layers
}

/// The unknown monomials of degree `d`.
pub fn candidate_monomials(p: u32, n: usize, d: u32, prune: bool) -> Vec<Monomial> {
    candidate_layers(p, n, d, prune)
        .pop()
        .unwrap()
        .into_iter()
        .map(|(m, _, _)| m)
        .collect()
}

pub struct MembershipSolver {
    ctx: Arc<ChernContext>,
    prune: bool,
    budget: u64,
}

impl MembershipSolver {
    pub fn new(ctx: &Arc<ChernContext>) -> MembershipSolver {
        MembershipSolver {
            ctx: ctx.clone(),
            prune: true,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Use every degree-`d` monomial as an unknown.
    pub fn full_basis(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn with_budget(mut self, cells: u64) -> Self {
        self.budget = cells;
        self
    }

    /// Number of unknowns a target of polynomial degree `d` would need.
    pub fn unknowns(&self, d: u32) -> usize {
        candidate_monomials(self.ctx.p(), self.ctx.n(), d, self.prune).len()
    }

    /// Size of the dense system for degree `d`: unknowns times the largest
    /// number of equations coming from the inflated monomials.
    pub fn estimated_cells(&self, d: u32) -> u64 {
        let n = self.ctx.n() as u64;
        // Degree-d monomials in t_1..t_n.
        let per_lagrangian = binomial(d as u64 + n - 1, n - 1);
        self.unknowns(d) as u64 * per_lagrangian * self.ctx.lagrangians().len() as u64
    }

    pub fn solve(&self, target: &QuillenClass) -> Result<MembershipResult> {
        if !Arc::ptr_eq(target.context(), &self.ctx) {
            return usage("target belongs to a different context");
        }
        let ctx = &self.ctx;
        let field = ctx.field();
        if target.is_zero() {
            return Ok(MembershipResult {
                membership: Membership::Member {
                    witness: SparsePoly::zero(field, ctx.ambient_vars()),
                },
                degree: 0,
                unknowns: 0,
                equations: 0,
                rank: 0,
            });
        }
        let Some(d) = target.homogeneous_degree() else {
            return usage("membership needs a homogeneous target");
        };
        if self.prune {
            ctx.relations_vanish()?;
        }
        let cells = self.estimated_cells(d);
        if cells > self.budget {
            return Err(Error::Envelope(format!(
                "membership system in degree {d} needs about {cells} cells (budget {})",
                self.budget
            )));
        }

        let layers = candidate_layers(ctx.p(), ctx.n(), d, self.prune);
        let columns: Vec<Monomial> = layers[d as usize].iter().map(|&(m, _, _)| m).collect();
        let ncols = columns.len();

        // Per Lagrangian: inflated images of the top layer, built layer by layer.
        let images: Vec<Vec<SparsePoly>> = (0..ctx.lagrangians().len())
            .into_par_iter()
            .map(|li| {
                let vars = ctx.restriction_images(li);
                let mut cur = vec![SparsePoly::one(field, ctx.component_vars())];
                for layer in &layers[1..] {
                    cur = layer
                        .iter()
                        .map(|&(_, parent, v)| &cur[parent] * &vars[v])
                        .collect();
                }
                cur
            })
            .collect();

        let mut a: Vec<Vec<u32>> = Vec::new();
        let mut b: Vec<u32> = Vec::new();
        for (li, imgs) in images.iter().enumerate() {
            let mut rows: HashMap<Monomial, usize> = HashMap::new();
            let mut row_of = |m: Monomial, a: &mut Vec<Vec<u32>>, b: &mut Vec<u32>| {
                *rows.entry(m).or_insert_with(|| {
                    a.push(vec![0; ncols]);
                    b.push(0);
                    a.len() - 1
                })
            };
            for (col, img) in imgs.iter().enumerate() {
                for &(m, c) in img.terms() {
                    let r = row_of(m, &mut a, &mut b);
                    a[r][col] = c;
                }
            }
            for &(m, c) in target.component(li).terms() {
                let r = row_of(m, &mut a, &mut b);
                b[r] = c;
            }
        }
        let equations = a.len();
        let (membership, rank) = match linalg::solve(field, a, b, ncols) {
            Solution::Inconsistent { rank } => (Membership::NotMember, rank),
            Solution::Unique { x, rank } => {
                let terms = columns
                    .iter()
                    .zip(&x)
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, &c)| (m.exponents(ctx.ambient_vars()), c as i64));
                let witness = SparsePoly::from_terms(field, ctx.ambient_vars(), terms)?;
                if &ctx.inflate(&witness)? != target {
                    return Err(Error::Inconsistent(
                        "membership witness does not inflate to the target".into(),
                    ));
                }
                (Membership::Member { witness }, rank)
            }
        };
        Ok(MembershipResult {
            membership,
            degree: d,
            unknowns: ncols,
            equations,
            rank,
        })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
