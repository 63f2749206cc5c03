//! Exact-arithmetic engine for periodic-point counts and dynamical zeta
//! data of algebraic Z^d-actions on zero-dimensional compact abelian
//! groups.
//!
//! The pieces:
//!
//! - [`lattice`]: finite-index subgroups of Z^d in Hermite normal form,
//!   enumeration, short vectors, divisor sums.
//! - [`funcfield`]: F_p[t] and F_p(t) arithmetic, factorization, places,
//!   normalized absolute values.
//! - [`action`]: actions as component lists; exact counting via the
//!   place-product formula, entropy, growth scans, suspension.
//! - [`oracle`]: independent brute-force counts by ranks of dense
//!   matrices over F_p, used to cross-validate every formula count.
//! - [`zeta`]: orbit sums, integer Taylor coefficients, radius
//!   diagnostics, the single-automorphism boundary classifier, and
//!   pole-cluster data.
//! - [`primescan`]: qualifying-prime machinery and value-set scans at
//!   prime indices.
//! - [`specfile`] / [`presets`]: JSON spec files and built-in examples.
//!
//! All counts are exact (factored integers); floating point appears only
//! in diagnostic output.

pub mod action;
pub mod error;
pub mod factored;
pub mod funcfield;
pub mod lattice;
pub mod multipoly;
pub mod oracle;
pub mod presets;
pub mod primescan;
pub mod specfile;
pub mod zeta;

pub use error::{Error, Result};
pub use factored::Factored;
