//! Linear codes over small finite fields with a prescribed permutation
//! automorphism: quasi-cyclic and almost quasi-cyclic codes.
//!
//! The crate builds such codes from constituent data on the ideals of
//! `F_q[x]/(x^m - 1)`, decomposes a given code into its fixed and even-sum
//! subcodes, and verifies self-dual / self-orthogonal / LCD properties both
//! directly on generator matrices and through the decomposition, reporting
//! any disagreement between the two routes.
//!
//! Modules:
//! - [`galois`] — exact `F_q` arithmetic, `q <= 256`;
//! - [`poly`] — dense polynomials over `F_q`;
//! - [`cycring`] — `R_m = F_q[x]/(x^m - 1)`, factorization of `x^m - 1`,
//!   primitive idempotents, the bar involution;
//! - [`lincode`] — generator-matrix codes: duals, hulls, predicates, weight
//!   enumeration;
//! - [`autodecomp`] — cycle automorphisms, fixed/even-sum subcodes, the
//!   projection and cycle-sum maps, theorem checkers;
//! - [`constituents`] — the block transform to `R_m^s`, constituent
//!   decomposition and synthesis, decomposition-based predicate checks;
//! - [`cli`] — the `qcodes` command-line front end.

pub mod autodecomp;
pub mod cli;
pub mod constituents;
pub mod cycring;
pub mod fixtures;
pub mod galois;
mod linalg;
pub mod lincode;
pub mod poly;

pub use galois::{Field, FieldElement, GaloisError};
pub use poly::{Poly, PolyError};
