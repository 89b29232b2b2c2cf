//! Scalar monitors of a flow state.

use serde::{Deserialize, Serialize};

use super::{pad_field, BoundaryKind, BoundarySet, FlowState};
use crate::error::{Error, Result};
use crate::gas::{primitives_from_conserved, GasModel};
use crate::stencil::ops::face_range;
use crate::stencil::SchemeSpec;
use crate::viscous::{face_velocity, Line};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub time: f64,
    /// `Σ ρ Δx Δy` over interior cells.
    pub total_mass: f64,
    pub min_density: f64,
    /// Computed from the conserved variables directly, so it may be negative.
    pub min_pressure: f64,
    /// See [`sawtooth_metric`].
    pub sawtooth: f64,
}

pub fn diagnostics(state: &FlowState, gas: &GasModel) -> Diagnostics {
    let grid = state.grid();
    let mut mass = 0.0;
    let mut min_rho = f64::INFINITY;
    let mut min_p = f64::INFINITY;
    for q in state.data() {
        mass += q[0];
        min_rho = min_rho.min(q[0]);
        let p = (gas.gamma - 1.0) * (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0]);
        min_p = min_p.min(p);
    }
    Diagnostics {
        time: state.time,
        total_mass: mass * grid.dx() * grid.dy(),
        min_density: min_rho,
        min_pressure: min_p,
        sawtooth: sawtooth_metric(state),
    }
}

/// Grid-scale roughness of the density field:
///
/// ```text
/// Σ (δ²_x ρ)² + (δ²_y ρ)²  /  (nx · ny · mean(ρ)²)
/// ```
///
/// where `δ²` is the undivided second difference, taken only at cells whose
/// neighbours in that direction are interior cells. Odd-even oscillations
/// contribute at the largest possible amplitude (`4ρ'` per cell), smooth
/// fields almost nothing.
pub fn sawtooth_metric(state: &FlowState) -> f64 {
    let grid = state.grid();
    let (nx, ny) = (grid.nx, grid.ny);
    let rho = |i: usize, j: usize| state.data()[grid.index(i, j)][0];
    let mut sum = 0.0;
    let mut mean = 0.0;
    for j in 0..ny {
        for i in 0..nx {
            let r = rho(i, j);
            mean += r;
            if i > 0 && i + 1 < nx {
                sum += (rho(i - 1, j) - 2.0 * r + rho(i + 1, j)).powi(2);
            }
            if j > 0 && j + 1 < ny {
                sum += (rho(i, j - 1) - 2.0 * r + rho(i, j + 1)).powi(2);
            }
        }
    }
    let cells = (nx * ny) as f64;
    mean /= cells;
    sum / (cells * mean * mean)
}

/// Largest velocity magnitude the viscous scheme evaluates on a no-slip
/// wall face, over every wall of `bc`. Zero up to round-off by construction
/// of the mirrored ghost cells.
pub fn wall_face_velocity(state: &FlowState, gas: &GasModel, bc: &BoundarySet, spec: &SchemeSpec) -> Result<f64> {
    let grid = state.grid();
    let mut prims = Vec::with_capacity(grid.cells());
    for (k, q) in state.data().iter().enumerate() {
        prims.push(primitives_from_conserved(q, gas).map_err(|e| e.at_cell((k % grid.nx) as isize, (k / grid.nx) as isize))?);
    }
    if grid.ghost < spec.kind.radius() {
        return Err(Error::usage(format!("{} needs {} ghost layers", spec.kind, spec.kind.radius())));
    }
    let padded = pad_field(grid, &prims, bc)?;
    let g = grid.ghost as isize;
    let mut worst: f64 = 0.0;
    let mut check = |u: Vec<f64>, v: Vec<f64>, h: f64, faces: &[usize]| -> Result<()> {
        for line in [u, v] {
            let values = face_velocity(Line::new(&line, grid.ghost)?, spec, h)?;
            for &f in faces {
                worst = worst.max(values[f].abs());
            }
        }
        Ok(())
    };
    let first_x = face_range(spec.kind, grid.nx).0;
    let mut x_faces = Vec::new();
    if bc.west == BoundaryKind::NoSlipWall {
        x_faces.push((-1 - first_x) as usize);
    }
    if bc.east == BoundaryKind::NoSlipWall {
        x_faces.push((grid.nx as isize - 1 - first_x) as usize);
    }
    if !x_faces.is_empty() {
        for j in 0..grid.ny as isize {
            let row = |f: fn(&crate::gas::Primitives) -> f64| -> Vec<f64> {
                (-g..grid.nx as isize + g).map(|i| f(&padded[grid.padded_index(i, j)])).collect()
            };
            check(row(|w| w.u), row(|w| w.v), grid.dx(), &x_faces)?;
        }
    }
    let first_y = face_range(spec.kind, grid.ny).0;
    let mut y_faces = Vec::new();
    if bc.south == BoundaryKind::NoSlipWall {
        y_faces.push((-1 - first_y) as usize);
    }
    if bc.north == BoundaryKind::NoSlipWall {
        y_faces.push((grid.ny as isize - 1 - first_y) as usize);
    }
    if !y_faces.is_empty() {
        for i in 0..grid.nx as isize {
            let col = |f: fn(&crate::gas::Primitives) -> f64| -> Vec<f64> {
                (-g..grid.ny as isize + g).map(|j| f(&padded[grid.padded_index(i, j)])).collect()
            };
            check(col(|w| w.u), col(|w| w.v), grid.dy(), &y_faces)?;
        }
    }
    Ok(worst)
}
