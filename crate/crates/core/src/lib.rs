//! Exact symbolic computation with Lazardian Witt vectors.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: sparse polynomials over `F_p` and `Z` with exponents in `Z[1/p]`,
//!   generic over the coefficient ring.
//! * [`lazard`]: normal forms in the truncated universal π-ring with adjoined
//!   perfected variables, and multiplicative (Teichmüller) lifts.
//! * [`arith`]: the arithmetic polynomials `Q⁺_n`, `Q×_n` governing Witt vector
//!   addition and multiplication.
//! * [`witt`]: Witt vectors over concrete residue rings with Frobenius,
//!   Verschiebung, the multiplicative section and the unit/counit formulas.
//! * [`jets`]: Hasse–Schmidt derivation algebras, the explicit residual
//!   perfection of `k[π]/(π^{m+1})`, and Lazardian jet algebras on free algebras.
//! * [`verify`]: seeded verification suites used by the CLI.

pub mod arith;
pub mod error;
pub mod jets;
pub mod lazard;
pub mod params;
pub mod poly;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
pub use params::Params;
pub use poly::{CoeffRing, Integers, Monomial, PExponent, Poly, PrimeField, Variable};

/// Polynomials with integer coefficients.
pub type IntPoly = poly::IntPoly;
/// Polynomials with coefficients in `F_p`.
pub type FpPoly = poly::FpPoly;
