//! raolab: an exact-arithmetic toolkit for Hartshorne-Rao modules of curves
//! in P3.
//!
//! The toolkit builds curve configurations (unions of skew lines, lines on a
//! quadric, rational curves, flat fat points), computes graded dimensions of
//! their ideals, hyperplane-section schemes and Rao modules over a prime
//! field, and decides per-degree maximal-rank verdicts for multiplication by
//! powers of a sampled linear form.
//!
//! Two independent engines back every number: a fast restriction engine that
//! assembles condition matrices from rational parametrizations, and a
//! general-purpose Gröbner engine that the audit machinery replays against
//! it.

pub mod analyzer;
pub mod configs;
pub mod error;
pub mod gf;
pub mod ideal;
pub mod poly;
pub mod restriction;

pub use error::{Error, Result};
