use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::ChernContext;
use crate::error::{usage, Result};
use crate::poly::SparsePoly;

/// A class given by its restriction to every maximal elementary abelian
/// subgroup, indexed like [`ChernContext::lagrangians`].
#[derive(Clone)]
pub struct QuillenClass {
    ctx: Arc<ChernContext>,
    components: Vec<SparsePoly>,
}

#[derive(Serialize)]
struct ComponentJson {
    lagrangian_index: usize,
    polynomial: String,
}

#[derive(Serialize)]
struct ClassJson {
    p: u32,
    n: usize,
    components: Vec<ComponentJson>,
}

impl QuillenClass {
    pub(crate) fn from_components(ctx: Arc<ChernContext>, components: Vec<SparsePoly>) -> Self {
        debug_assert_eq!(components.len(), ctx.lagrangians().len());
        QuillenClass { ctx, components }
    }

    pub fn context(&self) -> &Arc<ChernContext> {
        &self.ctx
    }

    pub fn components(&self) -> &[SparsePoly] {
        &self.components
    }

    pub fn component(&self, lagrangian: usize) -> &SparsePoly {
        &self.components[lagrangian]
    }

    fn compatible(&self, other: &QuillenClass) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) {
            return usage(format!(
                "classes from different contexts ({:?} and {:?})",
                self.ctx, other.ctx
            ));
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &QuillenClass,
        op: impl Fn(&SparsePoly, &SparsePoly) -> SparsePoly + Sync + Send,
    ) -> Result<QuillenClass> {
        self.compatible(other)?;
        let components = self
            .components
            .par_iter()
            .zip(&other.components)
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(QuillenClass::from_components(self.ctx.clone(), components))
    }

    fn map(&self, op: impl Fn(&SparsePoly) -> SparsePoly + Sync + Send) -> QuillenClass {
        let components = self.components.par_iter().map(op).collect();
        QuillenClass::from_components(self.ctx.clone(), components)
    }

    pub fn try_add(&self, other: &QuillenClass) -> Result<QuillenClass> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &QuillenClass) -> Result<QuillenClass> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &QuillenClass) -> Result<QuillenClass> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn try_eq(&self, other: &QuillenClass) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.components == other.components)
    }

    pub fn scale(&self, c: u32) -> QuillenClass {
        self.map(|a| a.scale(c))
    }

    pub fn pow(&self, e: u64) -> QuillenClass {
        self.map(|a| a.pow(e))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SparsePoly::is_zero)
    }

    /// Index of the first Lagrangian where `self` and `other` differ.
    pub fn first_difference(&self, other: &QuillenClass) -> Result<Option<usize>> {
        self.compatible(other)?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .position(|(a, b)| a != b))
    }

    /// Degree if every nonzero component is homogeneous of the same degree.
    /// The zero class has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for c in self.components.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() {
                return None;
            }
            match (deg, c.degree()) {
                (None, d) => deg = d,
                (Some(a), Some(b)) if a != b => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = ClassJson {
            p: self.ctx.p(),
            n: self.ctx.n(),
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| ComponentJson {
                    lagrangian_index: i,
                    polynomial: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(json).expect("plain data serializes")
    }
}

impl PartialEq for QuillenClass {
    fn eq(&self, other: &QuillenClass) -> bool {
        self.try_eq(other).unwrap_or(false)
    }
}

impl Eq for QuillenClass {}

impl fmt::Debug for QuillenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuillenClass")
            .field("context", &self.ctx)
            .field("components", &self.components.iter().map(ToString::to_string).collect::<Vec<_>>())
            .finish()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuillenClass> for &QuillenClass {
            type Output = QuillenClass;
            fn $method(self, rhs: &QuillenClass) -> QuillenClass {
                self.$try(rhs).expect("classes from the same context")
            }
        }
        impl $trait for QuillenClass {
            type Output = QuillenClass;
            fn $method(self, rhs: QuillenClass) -> QuillenClass {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &QuillenClass {
    type Output = QuillenClass;
    fn neg(self) -> QuillenClass {
        self.map(SparsePoly::neg)
    }
}
