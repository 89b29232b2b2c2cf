//! Conservative finite-difference viscous schemes for the compressible
//! Navier-Stokes equations, with and without high-frequency damping.
//!
//! The crate is organised bottom-up:
//!
//! - [`stencil`]: exact rational 1D operators, the two sixth-order viscous
//!   schemes (gradient interpolation and α-damping) and their pointwise kernels.
//! - [`spectral`]: Fourier symbols, moments, central-difference decomposition
//!   and parameter solving for assembled stencils.
//! - [`gas`], [`inviscid`], [`viscous`]: the physical model and face fluxes.
//! - [`integrator`], [`solver`]: RK3 time stepping and the 2D grid solver.
//! - [`io`]: run configuration and CSV artifacts.

pub mod error;
pub mod gas;
pub mod integrator;
pub mod inviscid;
pub mod io;
pub mod solver;
pub mod spectral;
pub mod stencil;
pub mod viscous;

pub use error::{Error, Result};
pub use gas::{GasModel, Primitives};
pub use stencil::{Rational, SchemeKind, SchemeSpec, Stencil1D};
