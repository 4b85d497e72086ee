//! Law checkers and enumeration oracles for costrong functors on finite
//! sets.
//!
//! Everything here is concrete: objects are finite sets of labels,
//! functors are syntax trees evaluated by table-building, and every law is
//! decided by finite quantification inside an explicitly declared
//! [`universe::Universe`]. A passing report therefore certifies the law on
//! exactly that scope, no more. The interesting structure lives in:
//!
//! - [`actions`]: monoidal actions (cartesian, cocartesian, exponential)
//!   and graded monads materialized over a universe;
//! - [`costrength`]: the data of a costrength or strength, the coherence
//!   checker, exhaustive enumeration, and the two-way translation between
//!   costrengths and copoints over cartesian actions;
//! - [`catalogue`]: the worked zoo of carriers with known costrengths,
//!   each paired with the counting or uniqueness facts that pin it down;
//! - [`mates`]: transporting strengths across an adjunction;
//! - [`streams`], [`optics`], [`freemonad`]: the three applications, from
//!   stream extraction semantics through optic transformers to truncated
//!   free monads.

pub mod actions;
pub mod catalogue;
pub mod costrength;
pub mod csp;
pub mod error;
pub mod finset;
pub mod freemonad;
pub mod functor;
pub mod mates;
pub mod nat;
pub mod optics;
pub mod report;
pub mod streams;
pub mod universe;

pub use error::{Error, Result};
pub use finset::{FinFun, FinSet};
pub use functor::FunctorExpr;
pub use report::{LawReport, LawStatus};
pub use universe::{Budget, Universe};
