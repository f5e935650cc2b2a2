//! Exact symbolic toolkit over the rational function field K = F_p(t):
//! sparse polynomial arithmetic and Groebner bases over K, relative jet
//! schemes of affine presentations, v-adic contact orders, products of
//! Weierstrass curves with their group law, and the critical /
//! exceptional scheme pipeline with the iterative linear-locus
//! construction on top.
//!
//! The polynomial kernel is generic over the coefficient field through
//! the [`scalar::Scalar`] trait (num-traits `Zero`/`One` plus field
//! ops); the concrete scalars are [`fp::Fp`] and [`ratfunc::RatFunc`]
//! with the prime as a const-generic parameter, so every constant is
//! constructible without runtime context and all arithmetic is exact.

pub mod budget;
pub mod curves;
pub mod error;
pub mod exceptional;
pub mod fp;
pub mod fppoly;
pub mod graphs;
pub mod ideal;
pub mod jets;
pub mod order;
pub mod parse;
pub mod places;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

pub use budget::Budget;
pub use error::{Error, Result};
pub use ideal::{Ideal, SubschemeRelation};
pub use order::{Mono, TermOrder};
pub use poly::{Poly, VarSet};
pub use scalar::Scalar;

/// The prime field F_p.
pub type PrimeField<const P: u64> = fp::Fp<P>;
/// The function field K = F_p(t).
pub type FunctionField<const P: u64> = ratfunc::RatFunc<P>;
/// Sparse multivariate polynomial over K.
pub type KPoly<const P: u64> = poly::Poly<ratfunc::RatFunc<P>>;
/// Finitely generated ideal over K.
pub type KIdeal<const P: u64> = ideal::Ideal<ratfunc::RatFunc<P>>;
