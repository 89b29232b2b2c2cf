//! Two-dimensional finite-difference solver on a uniform Cartesian grid.
//!
//! Cells are addressed as `(i, j)` with `i` along x and `j` along y.
//! Interior data is stored row by row (`j` outer), without halo cells;
//! ghost layers are built on demand from the boundary conditions.

mod boundary;
mod diagnostics;
pub mod init;
mod residual;
mod run;

pub use boundary::{pad_field, BoundaryKind, BoundarySet, Reflect, Side};
pub use diagnostics::{diagnostics, sawtooth_metric, wall_face_velocity, Diagnostics};
pub use residual::{residual, Discretization};
pub use run::{run, run_observed, RunFailure, RunOptions, RunReport, DEFAULT_SNAPSHOT_TIMES};

use crate::error::{Error, Result};
use crate::gas::Conserved;
use crate::integrator::RkState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub x: (f64, f64),
    pub y: (f64, f64),
    /// Halo width on every side.
    pub ghost: usize,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64), ghost: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::usage(format!("grid must have cells, got {nx} x {ny}")));
        }
        if !(x.1 > x.0 && y.1 > y.0) {
            return Err(Error::usage(format!("empty domain {x:?} x {y:?}")));
        }
        Ok(Grid2D { nx, ny, x, y, ghost })
    }

    pub fn dx(&self) -> f64 {
        (self.x.1 - self.x.0) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y.1 - self.y.0) / self.ny as f64
    }

    pub fn spacing(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.dx(),
            Axis::Y => self.dy(),
        }
    }

    pub fn x_center(&self, i: isize) -> f64 {
        self.x.0 + (i as f64 + 0.5) * self.dx()
    }

    pub fn y_center(&self, j: isize) -> f64 {
        self.y.0 + (j as f64 + 0.5) * self.dy()
    }

    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }

    /// Storage index of interior cell `(i, j)`.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Row length of a padded field.
    pub fn padded_nx(&self) -> usize {
        self.nx + 2 * self.ghost
    }

    pub fn padded_ny(&self) -> usize {
        self.ny + 2 * self.ghost
    }

    /// Storage index of cell `(i, j)` in a padded field; ghosts have
    /// negative or out-of-range indices.
    #[inline]
    pub fn padded_index(&self, i: isize, j: isize) -> usize {
        let g = self.ghost as isize;
        ((j + g) as usize) * self.padded_nx() + (i + g) as usize
    }
}

/// Conserved variables on the interior cells of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    grid: Grid2D,
    data: Vec<Conserved>,
    pub time: f64,
}

impl FlowState {
    pub fn uniform(grid: Grid2D, q: Conserved) -> Self {
        FlowState { grid, data: vec![q; grid.cells()], time: 0.0 }
    }

    /// Fill each cell from its centre coordinates.
    pub fn from_fn(grid: Grid2D, mut f: impl FnMut(f64, f64) -> Conserved) -> Self {
        let mut data = Vec::with_capacity(grid.cells());
        for j in 0..grid.ny as isize {
            for i in 0..grid.nx as isize {
                data.push(f(grid.x_center(i), grid.y_center(j)));
            }
        }
        FlowState { grid, data, time: 0.0 }
    }

    pub fn from_data(grid: Grid2D, data: Vec<Conserved>, time: f64) -> Result<Self> {
        if data.len() != grid.cells() {
            return Err(Error::usage(format!("{} values for {} cells", data.len(), grid.cells())));
        }
        Ok(FlowState { grid, data, time })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn data(&self) -> &[Conserved] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Conserved] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: isize, j: isize) -> &Conserved {
        &self.data[self.grid.index(i as usize, j as usize)]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Conserved) {
        let k = self.grid.index(i, j);
        self.data[k] = q;
    }

    /// Conserved field padded with ghost cells per `bc`.
    pub fn padded(&self, bc: &BoundarySet) -> Result<Vec<Conserved>> {
        pad_field(&self.grid, &self.data, bc)
    }
}

impl RkState for FlowState {
    type Rate = Vec<Conserved>;

    fn stage(base: &Self, a: f64, current: &Self, rate: &Self::Rate, dt: f64) -> Self {
        let data = base
            .data
            .iter()
            .zip(&current.data)
            .zip(rate)
            .map(|((b, c), r)| std::array::from_fn(|k| c[k] + a * (b[k] - c[k]) + (1.0 - a) * dt * r[k]))
            .collect();
        FlowState { grid: base.grid, data, time: base.time }
    }
}
