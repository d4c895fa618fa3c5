//! Cheeger constants and Cheeger sets of rotationally invariant domains.
//!
//! Candidates for the Cheeger set are built from pieces of Delaunay
//! surfaces (rotational constant-mean-curvature surfaces) glued tangentially
//! to the domain boundary; the Cheeger constant is the least
//! perimeter-to-volume ratio over each family of candidates.

pub mod candidates;
pub mod checks;
pub mod delaunay;
pub mod domains;
pub mod error;
pub mod numerics;
pub mod reference;
pub mod revolve;

pub use error::{Error, Result};
