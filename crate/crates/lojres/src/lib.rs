//! Exact computation of Łojasiewicz exponents of finite-colength polynomial
//! ideals through explicit log-resolutions (sequences of blow-ups along
//! coordinate-aligned centers), together with the supporting Gröbner-basis,
//! multiplicity, and integral-closure machinery, and independent
//! Newton-polyhedron oracles for cross-verification.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the engine.

pub mod vars;
pub mod poly;
pub mod ideal;
pub mod blowup;
pub mod resolve;
pub mod loj;
pub mod newton;
pub mod problem;
pub mod report;
pub mod cli;

pub use poly::{parse_poly, Monomial, PolyError, Polynomial, Rational, SubstMap};
pub use vars::Vars;
