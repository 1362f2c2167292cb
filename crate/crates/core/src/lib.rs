//! Exact-arithmetic computation of Koszul modules and resonance varieties.
//!
//! Given a vector space V and a subspace K of its second exterior power,
//! this crate builds the graded presentation of the Koszul module W(V,K),
//! computes its graded dimensions over Q, and decides vanishing of the
//! resonance variety R(V,K) by direct linear algebra, by root-system weight
//! criteria, and by closed forms in structured cases (monomial subspaces
//! from graphs, sl2 submodules, commutator-relators groups, and the n = 4
//! Pluecker quadric).

pub mod error;
pub mod exactlin;
pub mod graphkit;
pub mod groupres;
pub mod koszul;
pub mod liecrit;
pub mod resonance;
pub mod rootsys;
pub mod scan;
pub mod sl2;

pub use error::{Error, Result};
pub use exactlin::{Rational, SparseMatrix};
pub use koszul::{GradedDims, TwoFormSubspace};
pub use resonance::{Covector, VanishingDecision};
