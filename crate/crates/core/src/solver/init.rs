//! Initial conditions.

use std::f64::consts::PI;

use super::{FlowState, Grid2D};
use crate::error::{Error, Result};
use crate::gas::{conserved_from_primitives, GasModel, Primitives};

/// Viscous shock tube on `[0, 1] × [0, 1/2]`: `ρ = 120, p = 120/γ` left of
/// `x = 1/2`, `ρ = 1.2, p = 1.2/γ` right of it, fluid at rest.
pub fn viscous_shock_tube(nx: usize, ny: usize, ghost: usize, gas: &GasModel) -> Result<FlowState> {
    let grid = Grid2D::new(nx, ny, (0.0, 1.0), (0.0, 0.5), ghost)?;
    let g = gas.gamma;
    let left = conserved_from_primitives(&Primitives::new(120.0, 0.0, 0.0, 120.0 / g), gas);
    let right = conserved_from_primitives(&Primitives::new(1.2, 0.0, 0.0, 1.2 / g), gas);
    Ok(FlowState::from_fn(grid, |x, _| if x < 0.5 { left } else { right }))
}

/// Uniform density and pressure with a sinusoidal shear
/// `u = amplitude · sin(2π k y / L_y)`; on a periodic box it decays at
/// the rate the viscous operator gives wavenumber `k`.
pub fn shear_wave(grid: Grid2D, gas: &GasModel, amplitude: f64, k: usize) -> FlowState {
    let ly = grid.y.1 - grid.y.0;
    FlowState::from_fn(grid, |_, y| {
        let u = amplitude * (2.0 * PI * k as f64 * (y - grid.y.0) / ly).sin();
        conserved_from_primitives(&Primitives::new(1.0, u, 0.0, 1.0 / gas.gamma), gas)
    })
}

/// Odd-even velocity `u = amplitude · (-1)^j` on uniform density and
/// pressure. Needs an even `ny` to be periodic.
pub fn checkerboard(grid: Grid2D, gas: &GasModel, amplitude: f64) -> Result<FlowState> {
    if grid.ny % 2 != 0 {
        return Err(Error::usage(format!("checkerboard needs an even ny, got {}", grid.ny)));
    }
    let mut state = FlowState::uniform(grid, [0.0; 4]);
    for j in 0..grid.ny {
        let u = if j % 2 == 0 { amplitude } else { -amplitude };
        let q = conserved_from_primitives(&Primitives::new(1.0, u, 0.0, 1.0 / gas.gamma), gas);
        for i in 0..grid.nx {
            state.set(i, j, q);
        }
    }
    Ok(state)
}
