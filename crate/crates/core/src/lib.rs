//! Exact-arithmetic toolkit for Steiner bundles on projective space.
//!
//! Builds presentations `O(-1)^m -> O^t` of generalized logarithmic bundles
//! (from finite point sets in the dual space), Schwarzenberger bundles (from
//! rational normal curves) and pushforwards of line bundles on plane curves,
//! and computes their unstable hyperplanes through two independent routes:
//! the bundle-side kernel test and the ideal-side test on the point set.

pub mod error;
pub mod exactalg;
pub mod instability;
pub mod polygeom;
pub mod steiner;

pub use error::{Error, Result};
