//! Exact Lie point symmetry analysis for semilinear Kohn-Laplace equations
//! `Δ_H u + f(u) = 0` on the Heisenberg group H¹.
//!
//! Everything is exact rational arithmetic. The pieces, bottom-up:
//!
//! - [`poly`], [`gexpr`]: sparse polynomials and expressions graded by
//!   nonlinearity tags (`f`, `f'`, `u^(p+j)`, `exp(u)`);
//! - [`heisenberg`]: the group law, invariant fields and `Δ_H`;
//! - [`prolong`]: second prolongation of point generators;
//! - [`verify`]: on-shell symmetry defects;
//! - [`determining`]: the determining system and its reductions;
//! - [`linalg`], [`ansatz`]: fraction-free elimination and the
//!   polynomial-ansatz classification;
//! - [`algebra`]: brackets and structure constants.

pub mod algebra;
pub mod ansatz;
pub mod determining;
pub mod error;
pub mod fixtures;
pub mod gexpr;
pub mod heisenberg;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod prolong;
pub mod var;
pub mod verify;

pub use error::{Error, Result};
pub use gexpr::{BasisTag, GExpr};
pub use poly::{Poly, Rat};
pub use prolong::VField;
pub use var::{Mono, Var};
pub use verify::{FCase, Param};
