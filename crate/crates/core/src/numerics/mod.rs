//! Self-contained numerical primitives: modified Bessel I0, adaptive
//! quadrature, bracketed root finding, and Richardson-extrapolated
//! central differences.
//!
//! Everything here is a pure function of its inputs and safe to call
//! from any number of threads.

mod bessel;
mod derivative;
mod quadrature;
mod roots;

pub use bessel::{bessel_i0, bessel_i0_scaled};
pub use derivative::derivative;
pub use quadrature::{integrate, QuadratureResult};
pub use roots::{find_root, RootResult};
