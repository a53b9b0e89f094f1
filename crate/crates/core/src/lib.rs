//! Exact-arithmetic engine for symmetry breaking operators between
//! line-bundle principal series of GL(n+1,R) and GL(n,R).
//!
//! Modules:
//! - [`rat`]: arbitrary-precision rationals and Pochhammer symbols
//! - [`params`]: parameter tuples, derived constants, case predicates
//! - [`gegenbauer`]: exact Gegenbauer polynomials and their identities
//! - [`harmonics`]: multivariate harmonic polynomial algebra on spheres
//! - [`cocycle`]: spectrum-generating eigenvalues and proportionality constants
//! - [`sbo`]: classification, scalar sequences, recurrence solving, residues,
//!   zero patterns, composition-factor tables
//! - [`quad`]: floating-point application of the integral operators

pub mod error;
pub mod rat;
pub mod params;
pub mod gegenbauer;
pub mod linalg;
pub mod harmonics;
pub mod cocycle;
pub mod sbo;
pub mod quad;
pub mod selftest;

pub use error::{Error, Result};
pub use params::{CaseFlags, DerivedParams, Params, Sign};
pub use rat::{pochhammer, Rat};
