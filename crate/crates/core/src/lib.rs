//! CNF encodings of graph acyclicity.
//!
//! A directed graph on `n` vertices is modelled by one Boolean variable per
//! ordered pair `(i, j)`. An *acyclicity checker* is a CNF formula over those
//! edge variables (plus fresh auxiliaries) whose models, projected onto the
//! edge variables, are exactly the acyclic graphs. This crate provides eight
//! such checkers, the benchmark graph families they are paired with, a small
//! gate-level circuit compiler used by the matrix-multiplication checkers, and
//! reasoning engines (unit propagation, failed-literal probing, projected
//! model enumeration) used to verify all of it.
//!
//! ```
//! use acyclic_cnf::{checkers::{self, Checker, EncodeOptions}, cnf::{EdgeVarMap, VarAllocator}};
//!
//! let mut alloc = VarAllocator::new();
//! let edges = EdgeVarMap::allocate(2, &mut alloc);
//! let psi = checkers::encode(Checker::Tc1, &edges, &mut alloc, &EncodeOptions::default()).unwrap();
//! assert_eq!(psi.formula.size(), 48);
//! ```

pub mod checkers;
pub mod circuit;
pub mod cnf;
pub mod engine;
mod error;
pub mod families;
pub mod graph;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cnf.md")]
    mod cnf {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/reachability.md")]
    mod reachability {}
    #[doc = include_str!("../../../book/src/labeling.md")]
    mod labeling {}
    #[doc = include_str!("../../../book/src/matrix.md")]
    mod matrix {}
    #[doc = include_str!("../../../book/src/propagation.md")]
    mod propagation {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
