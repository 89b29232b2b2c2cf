//! Semi-discrete right-hand side `dQ/dt = -(∂F/∂x + ∂G/∂y)`.

use rayon::prelude::*;

use super::{pad_field, Axis, BoundarySet, FlowState, Grid2D};
use crate::error::{Error, Result};
use crate::gas::{primitives_from_conserved, temperature, Conserved, GasModel, Primitives};
use crate::inviscid::line_fluxes;
use crate::stencil::ops::accumulate_divergence;
use crate::stencil::SchemeSpec;
use crate::viscous::{transverse_cell_gradient, viscous_line_fluxes, LineScratch, ViscousKernel, ViscousLineInput};

/// Everything the residual needs besides the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretization {
    pub gas: GasModel,
    pub viscous: SchemeSpec,
    pub bc: BoundarySet,
    /// Include the MP5/cLLF convective fluxes.
    pub convective: bool,
    /// Include the viscous and heat fluxes (skipped anyway when `μ = 0`).
    pub viscous_terms: bool,
}

impl Discretization {
    pub fn navier_stokes(gas: GasModel, viscous: SchemeSpec, bc: BoundarySet) -> Self {
        Discretization { gas, viscous, bc, convective: true, viscous_terms: true }
    }

    /// Ghost width the enabled terms read.
    pub fn required_ghost(&self) -> usize {
        let conv = if self.convective { 3 } else { 0 };
        let visc = if self.viscous_terms { self.viscous.kind.radius() } else { 0 };
        conv.max(visc)
    }

    fn has_viscous(&self) -> bool {
        self.viscous_terms && self.gas.mu > 0.0
    }
}

/// Padded primitive fields shared by both sweeps.
struct Fields {
    prims: Vec<Primitives>,
    u: Vec<f64>,
    v: Vec<f64>,
    t: Vec<f64>,
}

struct LineData<'a> {
    prims: &'a [Primitives],
    un: &'a [f64],
    ut: &'a [f64],
    t: &'a [f64],
    dun_dt: &'a [f64],
    dut_dt: &'a [f64],
}

#[derive(Default)]
struct Scratch {
    conv: Vec<Conserved>,
    visc: Vec<[f64; 4]>,
    line: LineScratch,
    comp: Vec<f64>,
    div: Vec<f64>,
}

type LineResult = std::result::Result<Vec<Conserved>, (isize, Error)>;

/// Contribution `-(F_{j+1/2} - F_{j-1/2})/h` of one grid line.
fn line_residual(
    disc: &Discretization,
    kernel: Option<&ViscousKernel>,
    data: &LineData,
    ghost: usize,
    n: usize,
    h: f64,
    axis: Axis,
    s: &mut Scratch,
) -> LineResult {
    let mut out = vec![[0.0; 4]; n];
    if disc.convective {
        line_fluxes(data.prims, ghost, n, axis, &disc.gas, &mut s.conv)?;
        for (c, o) in out.iter_mut().enumerate() {
            for k in 0..4 {
                o[k] -= (s.conv[c + 1][k] - s.conv[c][k]) / h;
            }
        }
    }
    if let Some(kernel) = kernel {
        let input = ViscousLineInput {
            un: data.un,
            ut: data.ut,
            temperature: data.t,
            dun_dt: data.dun_dt,
            dut_dt: data.dut_dt,
            ghost,
            n,
            dx: h,
        };
        viscous_line_fluxes(kernel, &input, &disc.gas, axis, &mut s.line, &mut s.visc);
        // the mass component of the viscous flux is identically zero
        for k in 1..4 {
            s.comp.clear();
            s.comp.extend(s.visc.iter().map(|f| f[k]));
            s.div.clear();
            s.div.resize(n, 0.0);
            accumulate_divergence(kernel.kind(), &s.comp, h, -1.0, &mut s.div);
            for (o, d) in out.iter_mut().zip(&s.div) {
                o[k] += d;
            }
        }
    }
    Ok(out)
}

fn padded_fields(state: &FlowState, disc: &Discretization) -> Result<Fields> {
    let grid = state.grid();
    let gas = &disc.gas;
    let mut interior = Vec::with_capacity(grid.cells());
    for (k, q) in state.data().iter().enumerate() {
        let w = primitives_from_conserved(q, gas)
            .map_err(|e| e.at_cell((k % grid.nx) as isize, (k / grid.nx) as isize))?;
        interior.push(w);
    }
    let prims = pad_field(grid, &interior, &disc.bc)?;
    Ok(Fields {
        u: prims.iter().map(|w| w.u).collect(),
        v: prims.iter().map(|w| w.v).collect(),
        t: prims.iter().map(|w| temperature(w, gas)).collect(),
        prims,
    })
}

fn x_sweep(grid: &Grid2D, f: &Fields, disc: &Discretization, kernel: Option<&ViscousKernel>) -> Vec<LineResult> {
    let (g, sx) = (grid.ghost as isize, grid.padded_nx());
    let row = |field: &[f64], j: isize| -> Vec<f64> {
        let start = grid.padded_index(-g, j);
        field[start..start + sx].to_vec()
    };
    (0..grid.ny as isize)
        .into_par_iter()
        .map_init(Scratch::default, |s, j| {
            let start = grid.padded_index(-g, j);
            let (mut du_dy, mut dv_dy) = (Vec::new(), Vec::new());
            if kernel.is_some() {
                let ur: [Vec<f64>; 5] = std::array::from_fn(|k| row(&f.u, j + k as isize - 2));
                let vr: [Vec<f64>; 5] = std::array::from_fn(|k| row(&f.v, j + k as isize - 2));
                transverse_cell_gradient(std::array::from_fn(|k| ur[k].as_slice()), grid.dy(), &mut du_dy);
                transverse_cell_gradient(std::array::from_fn(|k| vr[k].as_slice()), grid.dy(), &mut dv_dy);
            }
            let data = LineData {
                prims: &f.prims[start..start + sx],
                un: &f.u[start..start + sx],
                ut: &f.v[start..start + sx],
                t: &f.t[start..start + sx],
                dun_dt: &du_dy,
                dut_dt: &dv_dy,
            };
            line_residual(disc, kernel, &data, grid.ghost, grid.nx, grid.dx(), Axis::X, s)
        })
        .collect()
}

fn y_sweep(grid: &Grid2D, f: &Fields, disc: &Discretization, kernel: Option<&ViscousKernel>) -> Vec<LineResult> {
    let g = grid.ghost as isize;
    let span = -g..grid.ny as isize + g;
    let col = |field: &[f64], i: isize| -> Vec<f64> { span.clone().map(|j| field[grid.padded_index(i, j)]).collect() };
    (0..grid.nx as isize)
        .into_par_iter()
        .map_init(Scratch::default, |s, i| {
            let prims: Vec<Primitives> = span.clone().map(|j| f.prims[grid.padded_index(i, j)]).collect();
            let (u, v, t) = (col(&f.u, i), col(&f.v, i), col(&f.t, i));
            let (mut du_dx, mut dv_dx) = (Vec::new(), Vec::new());
            if kernel.is_some() {
                let uc: [Vec<f64>; 5] = std::array::from_fn(|k| col(&f.u, i + k as isize - 2));
                let vc: [Vec<f64>; 5] = std::array::from_fn(|k| col(&f.v, i + k as isize - 2));
                transverse_cell_gradient(std::array::from_fn(|k| uc[k].as_slice()), grid.dx(), &mut du_dx);
                transverse_cell_gradient(std::array::from_fn(|k| vc[k].as_slice()), grid.dx(), &mut dv_dx);
            }
            let data = LineData {
                prims: &prims,
                un: &v,
                ut: &u,
                t: &t,
                dun_dt: &dv_dx,
                dut_dt: &du_dx,
            };
            line_residual(disc, kernel, &data, grid.ghost, grid.ny, grid.dy(), Axis::Y, s)
        })
        .collect()
}

/// Time derivative of the interior conserved variables.
///
/// Fails with [`Error::NonPhysical`] when a cell or reconstructed face state
/// loses positivity and with [`Error::NonFinite`] when the result contains
/// NaN or infinity. Lines are processed in parallel; the result does not
/// depend on the thread count.
pub fn residual(state: &FlowState, disc: &Discretization) -> Result<Vec<Conserved>> {
    let grid = state.grid();
    if grid.ghost < disc.required_ghost() {
        return Err(Error::usage(format!(
            "grid has {} ghost layers, the discretisation needs {}",
            grid.ghost,
            disc.required_ghost()
        )));
    }
    let fields = padded_fields(state, disc)?;
    let kernel = disc.has_viscous().then(|| ViscousKernel::new(&disc.viscous));
    let rows = x_sweep(grid, &fields, disc, kernel.as_ref());
    let cols = y_sweep(grid, &fields, disc, kernel.as_ref());

    let mut x_part = Vec::with_capacity(grid.ny);
    for (j, r) in rows.into_iter().enumerate() {
        x_part.push(r.map_err(|(i, e)| e.at_cell(i, j as isize))?);
    }
    let mut y_part = Vec::with_capacity(grid.nx);
    for (i, r) in cols.into_iter().enumerate() {
        y_part.push(r.map_err(|(j, e)| e.at_cell(i as isize, j))?);
    }
    let mut out = Vec::with_capacity(grid.cells());
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let (a, b) = (x_part[j][i], y_part[i][j]);
            let r: Conserved = std::array::from_fn(|k| a[k] + b[k]);
            if r.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite { cell: (i as isize, j as isize) });
            }
            out.push(r);
        }
    }
    Ok(out)
}
