//! Numerical kernels and the Cheeger-constant drivers built on them.

pub mod cheeger;
pub mod minimize;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod sweep;

pub use minimize::{minimize_scalar, MinResult};
pub use quad::{integrate, integrate_with, QuadOptions, Singularity};
pub use roots::find_root;

pub use cheeger::{cheeger, CheegerConfig, CheegerResult, Tolerances};
pub use sweep::{hourglass_sweep, SweepConfig, SweepResult};
