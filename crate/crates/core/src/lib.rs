//! Exact computation with pseudo MV-algebras and their square roots.
//!
//! Algebras are built from finite tables or as Γ(G,u) over exact unital
//! ℓ-group carriers, combined by products, intervals and quotients. The
//! [`sqrt`] module decides, verifies and classifies square roots, and runs
//! the property suites.

pub mod algebra;
mod checks;
pub mod cli;
pub mod error;
pub mod grid;
pub mod ideals;
pub mod group;
pub mod rational;
pub mod report;
pub mod search;
pub mod spec;
pub mod sqrt;

pub use algebra::{Algebra, BasicOp, DerivedOp, Domain, Element, FiniteTable, NatMulMode};
pub use error::{Error, Result};
pub use grid::Budget;
pub use group::{GroupDescriptor, GroupElement, OrderKind, UnitalGroup};
pub use rational::{q, Rational};
pub use report::{Counterexample, Evidence, Status, SuiteReport, Verdict};
