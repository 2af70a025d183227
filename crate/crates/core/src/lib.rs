//! Thermodynamic pressure of confined quantum and classical systems,
//! computed from first principles in natural units (m = hbar = 1).
//!
//! The crate has two solvable models with genuinely negative pressure,
//! a quantum particle bound to attractive delta wells at the walls of a
//! box ([`deltawall`]) and a classical ideal gas in a disc with Gaussian
//! wall attraction ([`discgas`]), plus a 1D Dirichlet Schrodinger solver
//! with three independent pressure routes ([`qbox`]) and a property
//! suite ([`nogo`]) checking that pressure can never go negative when
//! the particles do not interact with the walls.

pub mod deltawall;
pub mod discgas;
mod error;
pub mod nogo;
pub mod numerics;
pub mod qbox;

pub use error::{Error, Result};
