//! Exact combinatorial algebra of Gaussian Bayesian networks.
//!
//! Everything here is pure computation over `alloc`: graphs, the trek-rule
//! parametrization, conditional-independence constraints, choke points and
//! tetrads, toric tree ideals and hidden-variable constructions. Text
//! formats, JSON and the command line live in the `gaussnet` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod graph;
pub mod hidden;
pub mod markov;
pub mod tetrad;
pub mod toric;
pub mod trek;

pub use algebra::{AlgebraError, BigRational, Monomial, Poly, RationalMatrix, Var};
pub use graph::{Dag, GraphError, VertexPartition};
