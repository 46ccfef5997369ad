//! Exact model of the Chern subring, modulo nilradical, of the extraspecial
//! p-group of order p^{2n+1} and exponent p.
//!
//! Classes are represented through their restrictions to the maximal
//! elementary abelian subgroups, one polynomial per Lagrangian subspace of
//! the symplectic space E = F_p^{2n}. Equality of classes is componentwise
//! polynomial equality.

pub mod chern;
pub mod cyclotomic;
pub mod dickson;
pub mod error;
pub mod expr;
pub mod field;
pub mod group;
pub mod identities;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod runner;
pub mod subspace;
pub mod symplectic;

pub use chern::{ChernContext, QuillenClass};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use poly::SparsePoly;
pub use subspace::Subspace;
pub use symplectic::SymplecticSpace;
