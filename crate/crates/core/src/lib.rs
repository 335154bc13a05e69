//! Integral homology of the Eilenberg–MacLane space `K(Z/n, 2)` through
//! Cartan's elementary complexes, an exact Smith-normal-form homology oracle
//! that cross-checks every closed form, and the topological period–index
//! upper bounds that follow from the torsion exponents.
//!
//! Module map:
//!
//! * [`words`]: Cartan's symbol/word calculus (degree, height, admissibility,
//!   enumeration).
//! * [`graded`]: finitely generated graded abelian groups and the integral
//!   Künneth formula.
//! * [`complexes`]: elementary dg complexes, their closed-form homology and
//!   the tensor complexes `X_p` and `X`.
//! * [`oracle`]: integer matrices, Smith normal form, based chain complexes
//!   and their homology.
//! * [`bounds`]: valuations, differential-order bounds and the period–index
//!   bound report.
//! * [`verify`]: the oracle cross-check suites driven by the CLI.

pub mod arith;
pub mod bounds;
pub mod complexes;
mod error;
pub mod graded;
pub mod oracle;
pub mod par;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
