use std::sync::Arc;

use super::{ChernContext, QuillenClass};
use crate::error::{usage, Result};
use crate::poly::SparsePoly;
use crate::subspace::Subspace;

/// The Lagrangians `I` on which every member of a subset `T` of the top
/// Z-family restricts onto `I*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorSet {
    /// Indices of `T` in [`ChernContext::z`], ascending.
    z_indices: Vec<usize>,
    members: Vec<bool>,
}

impl IndicatorSet {
    pub(super) fn new(ctx: &ChernContext, t: &[Subspace]) -> Result<IndicatorSet> {
        let mut z_indices = Vec::with_capacity(t.len());
        for v in t {
            match ctx.z_index(v) {
                Some(k) => z_indices.push(k),
                None => return usage(format!("{v:?} is not in the top Z-family")),
            }
        }
        z_indices.sort_unstable();
        z_indices.dedup();
        let members = (0..ctx.lagrangians().len())
            .map(|li| z_indices.iter().all(|&k| ctx.z_full_on(li, k)))
            .collect();
        Ok(IndicatorSet { z_indices, members })
    }

    pub fn z_indices(&self) -> &[usize] {
        &self.z_indices
    }

    pub fn contains(&self, lagrangian: usize) -> bool {
        self.members[lagrangian]
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.members().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `chi_T`: `D_0(I*)^s` on members and zero elsewhere.
    pub fn class(&self, ctx: &Arc<ChernContext>, s: u64) -> Result<QuillenClass> {
        let top = ctx.dickson_of_dual(0)?.pow(s);
        let zero = SparsePoly::zero(ctx.field(), ctx.component_vars());
        let components = self
            .members
            .iter()
            .map(|&m| if m { top.clone() } else { zero.clone() })
            .collect();
        Ok(QuillenClass::from_components(ctx.clone(), components))
    }
}
