//! Viscous face fluxes in two dimensions.
//!
//! Face-normal derivatives come from the selected viscous scheme. Derivatives
//! along the face are averages of fourth-order cell gradients from the two
//! adjacent cells; no damping is applied to them.

use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::solver::Axis;
use crate::stencil::ops::{face_range, grad4, grad6, interpolate_face6, AlphaKernel};
use crate::stencil::{SchemeKind, SchemeSpec};

/// A line of cell values with `ghost` halo cells on each end.
#[derive(Debug, Clone, Copy)]
pub struct Line<'a> {
    pub values: &'a [f64],
    pub ghost: usize,
}

impl<'a> Line<'a> {
    pub fn new(values: &'a [f64], ghost: usize) -> Result<Self> {
        if values.len() <= 2 * ghost {
            return Err(Error::usage(format!(
                "line of {} values cannot hold {ghost} ghosts per side",
                values.len()
            )));
        }
        Ok(Line { values, ghost })
    }

    pub fn interior_len(&self) -> usize {
        self.values.len() - 2 * self.ghost
    }
}

/// Floating-point instantiation of a viscous scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ViscousKernel {
    Alpha(AlphaKernel),
    Shen,
}

impl ViscousKernel {
    pub fn new(spec: &SchemeSpec) -> Self {
        match spec.kind {
            SchemeKind::Shen6 => ViscousKernel::Shen,
            _ => ViscousKernel::Alpha(AlphaKernel::new(spec).expect("α-damping kind")),
        }
    }

    pub fn kind(&self) -> SchemeKind {
        match self {
            ViscousKernel::Shen => SchemeKind::Shen6,
            ViscousKernel::Alpha(k) if k.gradient_order == 2 => SchemeKind::AlphaDamping4,
            ViscousKernel::Alpha(_) => SchemeKind::AlphaDamping6,
        }
    }

    /// Face-normal gradients, and optionally face values, at the faces the
    /// scheme's divergence reads (see [`face_range`]).
    pub fn line_faces(&self, line: &[f64], ghost: usize, n: usize, dx: f64, grads: &mut Vec<f64>, mut values: Option<&mut Vec<f64>>) {
        let (first, count) = face_range(self.kind(), n);
        let start = (ghost as isize + first) as usize;
        grads.clear();
        if let Some(v) = values.as_deref_mut() {
            v.clear();
        }
        match self {
            ViscousKernel::Shen => {
                let cell_grads: Vec<f64> = (start - 2..start + count + 3).map(|c| grad6(line, c, dx)).collect();
                grads.extend(cell_grads.windows(6).take(count).map(interpolate_face6));
                if let Some(v) = values {
                    v.extend((0..count).map(|f| interpolate_face6(&line[start + f - 2..start + f + 4])));
                }
            }
            ViscousKernel::Alpha(k) => {
                for f in 0..count {
                    let c = start + f;
                    let g = k.cell_gradients(line, c, dx);
                    let (ul, ur) = k.traces(line, c, g, dx);
                    grads.push(0.5 * (g.0 + g.1) + k.alpha / (2.0 * dx) * (ur - ul));
                    if let Some(v) = values.as_deref_mut() {
                        v.push(0.5 * (ul + ur));
                    }
                }
            }
        }
    }
}

fn check_ghosts(line: &Line, spec: &SchemeSpec) -> Result<()> {
    if line.ghost < spec.kind.radius() {
        return Err(Error::usage(format!(
            "{} needs {} ghost cells, line has {}",
            spec.kind,
            spec.kind.radius(),
            line.ghost
        )));
    }
    Ok(())
}

/// Face-normal gradients of `u`, `v` and `T` along one line.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalGradients {
    pub du: Vec<f64>,
    pub dv: Vec<f64>,
    pub dt: Vec<f64>,
}

/// Each field is differentiated independently. Face `f` of the output is
/// `first + f + 1/2` with `first` from [`face_range`].
pub fn face_normal_gradients(fields: [Line; 3], spec: &SchemeSpec, dx: f64) -> Result<NormalGradients> {
    let n = fields[0].interior_len();
    for line in &fields {
        check_ghosts(line, spec)?;
        if line.interior_len() != n || line.ghost != fields[0].ghost {
            return Err(Error::usage("field lines differ in shape"));
        }
    }
    let kernel = ViscousKernel::new(spec);
    let mut out: [Vec<f64>; 3] = Default::default();
    for (line, grads) in fields.iter().zip(out.iter_mut()) {
        kernel.line_faces(line.values, line.ghost, n, dx, grads, None);
    }
    let [du, dv, dt] = out;
    Ok(NormalGradients { du, dv, dt })
}

/// Face values along one line: the mean of the α-damping traces, or the
/// sixth-order central interpolation for Shen's scheme.
pub fn face_velocity(line: Line, spec: &SchemeSpec, dx: f64) -> Result<Vec<f64>> {
    check_ghosts(&line, spec)?;
    let mut grads = Vec::new();
    let mut values = Vec::new();
    ViscousKernel::new(spec).line_faces(line.values, line.ghost, line.interior_len(), dx, &mut grads, Some(&mut values));
    Ok(values)
}

/// Average of the cell-centred derivatives on either side of each face.
/// `cell_derivatives[k]` and `[k+1]` bracket output face `k`.
pub fn transverse_face_gradient(cell_derivatives: &[f64]) -> Vec<f64> {
    cell_derivatives.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
}

/// Fourth-order derivative across lines: `rows[k]` is the line at
/// transverse offset `k - 2`, each sampled at the same cells.
pub fn transverse_cell_gradient(rows: [&[f64]; 5], dy: f64, out: &mut Vec<f64>) {
    out.clear();
    out.extend((0..rows[2].len()).map(|c| {
        let col = [rows[0][c], rows[1][c], rows[2][c], rows[3][c], rows[4][c]];
        grad4(&col, 2, dy)
    }));
}

/// Velocity and temperature derivatives at a face, split into the
/// face-normal velocity component `un` and the tangential `ut`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FaceGradients {
    pub dun_dn: f64,
    pub dut_dn: f64,
    pub dt_dn: f64,
    pub dun_dt: f64,
    pub dut_dt: f64,
}

/// Viscous flux `(0, -τ_xx, -τ_yx, -τ_xu + q_x)` on an x-face or its
/// y-face analogue, in global component order.
pub fn assemble_face_viscous_flux(g: &FaceGradients, un: f64, ut: f64, gas: &GasModel, axis: Axis) -> [f64; 4] {
    let mu = gas.mu;
    let tau_nn = 2.0 / 3.0 * mu * (2.0 * g.dun_dn - g.dut_dt);
    let tau_nt = mu * (g.dun_dt + g.dut_dn);
    let q_n = -gas.conductivity() * g.dt_dn;
    let energy = -(tau_nn * un + tau_nt * ut) + q_n;
    match axis {
        Axis::X => [0.0, -tau_nn, -tau_nt, energy],
        Axis::Y => [0.0, -tau_nt, -tau_nn, energy],
    }
}

/// Scratch buffers for [`viscous_line_fluxes`].
#[derive(Debug, Default)]
pub struct LineScratch {
    dun_dn: Vec<f64>,
    dut_dn: Vec<f64>,
    dt_dn: Vec<f64>,
    un_face: Vec<f64>,
    ut_face: Vec<f64>,
}

/// Inputs for one line of viscous fluxes. `dun_dt` and `dut_dt` are
/// cell-centred transverse derivatives with the same indexing as `un`.
pub struct ViscousLineInput<'a> {
    pub un: &'a [f64],
    pub ut: &'a [f64],
    pub temperature: &'a [f64],
    pub dun_dt: &'a [f64],
    pub dut_dt: &'a [f64],
    pub ghost: usize,
    pub n: usize,
    pub dx: f64,
}

/// Viscous flux vectors at the faces of [`face_range`] along one line.
pub fn viscous_line_fluxes(
    kernel: &ViscousKernel,
    input: &ViscousLineInput,
    gas: &GasModel,
    axis: Axis,
    scratch: &mut LineScratch,
    out: &mut Vec<[f64; 4]>,
) {
    let ViscousLineInput { un, ut, temperature, dun_dt, dut_dt, ghost, n, dx } = *input;
    kernel.line_faces(un, ghost, n, dx, &mut scratch.dun_dn, Some(&mut scratch.un_face));
    kernel.line_faces(ut, ghost, n, dx, &mut scratch.dut_dn, Some(&mut scratch.ut_face));
    kernel.line_faces(temperature, ghost, n, dx, &mut scratch.dt_dn, None);
    let (first, count) = face_range(kernel.kind(), n);
    let start = (ghost as isize + first) as usize;
    out.clear();
    out.extend((0..count).map(|f| {
        let c = start + f;
        let g = FaceGradients {
            dun_dn: scratch.dun_dn[f],
            dut_dn: scratch.dut_dn[f],
            dt_dn: scratch.dt_dn[f],
            dun_dt: 0.5 * (dun_dt[c] + dun_dt[c + 1]),
            dut_dt: 0.5 * (dut_dt[c] + dut_dt[c + 1]),
        };
        assemble_face_viscous_flux(&g, scratch.un_face[f], scratch.ut_face[f], gas, axis)
    }));
}
