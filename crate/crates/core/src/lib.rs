//! Exact arithmetic and point counting over `F_q[t]`.
//!
//! The crate provides, bottom up:
//!
//! * [`field`] — finite fields `F_q` with `q = p^e`, including extension
//!   towers needed for residue fields and absolute-irreducibility tests;
//! * [`ring`] — the univariate ring `F_q[t]` with degrees, norms, gcds,
//!   prime enumeration and prime-number-theorem bookkeeping;
//! * [`mpoly`] — multivariate polynomials with `F_q[t]` coefficients (and
//!   finite-field coefficients after reduction mod a prime), together with
//!   the normalization transforms used by the determinant method;
//! * [`matrix`] — exact linear algebra over `F_q[t]`: determinants,
//!   Hermite/Smith forms, determinantal divisors, kernel bases and a
//!   constructive Thue–Siegel solver;
//! * [`heights`] — heights, canonical projective representatives, and
//!   exhaustive enumeration of rational points of bounded height;
//! * [`detmethod`] — the determinant-method pipeline: characteristic
//!   regimes, bad primes, vanishing matrices, p-adic valuation checks,
//!   auxiliary-polynomial search and bound-shape evaluation;
//! * [`text`] — the canonical text grammar for elements, polynomials and
//!   matrices (parsing is the exact inverse of printing).
//!
//! Everything is exact: no floating point enters any arithmetic result
//! (bound-shape evaluation, which involves fractional exponents, is the
//! single documented exception). All values are immutable and safe to share
//! across threads.

pub mod budget;
pub mod detmethod;
pub mod error;
pub mod field;
pub mod heights;
pub mod matrix;
pub mod mpoly;
pub mod ring;
pub mod text;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Embedding, Field, FieldElement};
pub use mpoly::{MultiPoly, ResiduePoly};
pub use ring::{Degree, PrimeElement, RingElement};
