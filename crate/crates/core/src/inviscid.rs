//! Convective fluxes: characteristic MP5 reconstruction of primitive
//! variables and the component-wise local Lax-Friedrichs flux.

use crate::error::{Error, Result};
use crate::gas::{conserved_from_primitives, sound_speed, Conserved, GasModel, Primitives};
use crate::solver::Axis;

/// Curvature factor of the monotonicity-preserving bound.
const MP_ALPHA: f64 = 4.0;
/// Skip the limiter when `(v_or - v_j)(v_or - v_mp)` is below this.
const MP_EPSILON: f64 = 1e-20;

/// Eigen-decomposition of the primitive-variable Jacobian `A` of the 1D
/// Euler equations along one axis, in the global ordering `(ρ, u, v, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicFrame {
    pub left: [[f64; 4]; 4],
    pub right: [[f64; 4]; 4],
    pub eigenvalues: [f64; 4],
}

fn normal_tangential(axis: Axis) -> (usize, usize) {
    match axis {
        Axis::X => (1, 2),
        Axis::Y => (2, 1),
    }
}

fn as_array(w: &Primitives) -> [f64; 4] {
    [w.rho, w.u, w.v, w.p]
}

fn from_array(a: [f64; 4]) -> Primitives {
    Primitives::new(a[0], a[1], a[2], a[3])
}

impl CharacteristicFrame {
    pub fn new(state: &Primitives, axis: Axis, gas: &GasModel) -> Self {
        let (n, t) = normal_tangential(axis);
        let rho = state.rho;
        let c = sound_speed(state, gas);
        let un = as_array(state)[n];
        let c2 = c * c;

        let mut left = [[0.0; 4]; 4];
        left[0][n] = -0.5 * rho / c;
        left[0][3] = 0.5 / c2;
        left[1][0] = 1.0;
        left[1][3] = -1.0 / c2;
        left[2][t] = 1.0;
        left[3][n] = 0.5 * rho / c;
        left[3][3] = 0.5 / c2;

        // columns are the right eigenvectors
        let mut right = [[0.0; 4]; 4];
        right[0][0] = 1.0;
        right[n][0] = -c / rho;
        right[3][0] = c2;
        right[0][1] = 1.0;
        right[t][2] = 1.0;
        right[0][3] = 1.0;
        right[n][3] = c / rho;
        right[3][3] = c2;

        CharacteristicFrame {
            left,
            right,
            eigenvalues: [un - c, un, un, un + c],
        }
    }

    /// Frame at the arithmetic average of two cell states.
    pub fn between(a: &Primitives, b: &Primitives, axis: Axis, gas: &GasModel) -> Self {
        let avg = Primitives::new(
            0.5 * (a.rho + b.rho),
            0.5 * (a.u + b.u),
            0.5 * (a.v + b.v),
            0.5 * (a.p + b.p),
        );
        Self::new(&avg, axis, gas)
    }

    #[inline]
    pub fn project(&self, w: &[f64; 4]) -> [f64; 4] {
        mat_vec(&self.left, w)
    }

    #[inline]
    pub fn unproject(&self, c: &[f64; 4]) -> [f64; 4] {
        mat_vec(&self.right, c)
    }

    /// The primitive-variable Jacobian the frame diagonalises.
    pub fn jacobian(state: &Primitives, axis: Axis, gas: &GasModel) -> [[f64; 4]; 4] {
        let (n, t) = normal_tangential(axis);
        let un = as_array(state)[n];
        let mut a = [[0.0; 4]; 4];
        for (k, row) in a.iter_mut().enumerate() {
            row[k] = un;
        }
        a[0][n] = state.rho;
        a[n][3] = 1.0 / state.rho;
        a[3][n] = gas.gamma * state.p;
        let _ = t;
        a
    }
}

#[inline]
fn mat_vec(m: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
    }
    out
}

#[inline]
fn minmod(a: f64, b: f64) -> f64 {
    0.5 * (a.signum() + b.signum()) * a.abs().min(b.abs())
}

#[inline]
fn minmod4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    0.125 * (a.signum() + b.signum()) * ((a.signum() + c.signum()) * (a.signum() + d.signum())).abs()
        * a.abs().min(b.abs()).min(c.abs()).min(d.abs())
}

/// Monotonicity-preserving fifth-order interpolation to face `j+1/2` from
/// `v[0..5] = v_{j-2}..v_{j+2}` (Suresh & Huynh, J. Comput. Phys. 136, 1997).
#[inline]
fn mp5_left(v: &[f64; 5]) -> f64 {
    let [vm2, vm1, v0, vp1, vp2] = *v;
    // eq. (2.1): unlimited fifth-order upwind interpolant
    let vor = (2.0 * vm2 - 13.0 * vm1 + 47.0 * v0 + 27.0 * vp1 - 3.0 * vp2) / 60.0;
    // eq. (2.12)
    let vmp = v0 + minmod(vp1 - v0, MP_ALPHA * (v0 - vm1));
    if (vor - v0) * (vor - vmp) <= MP_EPSILON {
        return vor;
    }
    // eqs. (2.19), (2.27): curvature measures
    let djm1 = vm2 - 2.0 * vm1 + v0;
    let dj = vm1 - 2.0 * v0 + vp1;
    let djp1 = v0 - 2.0 * vp1 + vp2;
    let dm4_jph = minmod4(4.0 * dj - djp1, 4.0 * djp1 - dj, dj, djp1);
    let dm4_jmh = minmod4(4.0 * dj - djm1, 4.0 * djm1 - dj, dj, djm1);
    // eqs. (2.8), (2.16), (2.20)
    let vul = v0 + MP_ALPHA * (v0 - vm1);
    let vav = 0.5 * (v0 + vp1);
    let vmd = vav - 0.5 * dm4_jph;
    let vlc = v0 + 0.5 * (v0 - vm1) + 4.0 / 3.0 * dm4_jmh;
    // eqs. (2.24a,b)
    let vmin = v0.min(vp1).min(vmd).max(v0.min(vul).min(vlc));
    let vmax = v0.max(vp1).max(vmd).min(v0.max(vul).max(vlc));
    // eq. (2.26): median(vor, vmin, vmax)
    vor + minmod(vmin - vor, vmax - vor)
}

pub use crate::stencil::ops::FaceSide;

/// MP5 trace at face `j+1/2`.
///
/// For [`FaceSide::Left`] the window is `v_{j-2}..v_{j+2}`; for
/// [`FaceSide::Right`] it is `v_{j-1}..v_{j+3}` (mirrored internally).
pub fn mp5_reconstruct(window: [f64; 5], side: FaceSide) -> f64 {
    match side {
        FaceSide::Left => mp5_left(&window),
        FaceSide::Right => {
            let mut w = window;
            w.reverse();
            mp5_left(&w)
        }
    }
}

/// Physical convective flux along `axis`.
pub fn physical_flux(w: &Primitives, axis: Axis, gas: &GasModel) -> Conserved {
    let q = conserved_from_primitives(w, gas);
    let un = match axis {
        Axis::X => w.u,
        Axis::Y => w.v,
    };
    let mut f = [un * q[0], un * q[1], un * q[2], un * (q[3] + w.p)];
    match axis {
        Axis::X => f[1] += w.p,
        Axis::Y => f[2] += w.p,
    }
    f
}

/// Component-wise local Lax-Friedrichs flux.
pub fn cllf_flux(ql: &Primitives, qr: &Primitives, axis: Axis, gas: &GasModel) -> Result<Conserved> {
    for w in [ql, qr] {
        if !w.is_physical() {
            return Err(Error::NonPhysical {
                rho: w.rho,
                p: w.p,
                cell: None,
            });
        }
    }
    let normal = |w: &Primitives| match axis {
        Axis::X => w.u,
        Axis::Y => w.v,
    };
    let lambda = (normal(ql).abs() + sound_speed(ql, gas)).max(normal(qr).abs() + sound_speed(qr, gas));
    let (fl, fr) = (physical_flux(ql, axis, gas), physical_flux(qr, axis, gas));
    let (ul, ur) = (conserved_from_primitives(ql, gas), conserved_from_primitives(qr, gas));
    Ok(std::array::from_fn(|k| 0.5 * (fl[k] + fr[k]) - 0.5 * lambda * (ur[k] - ul[k])))
}

/// Left and right states at the face between `cells[2]` and `cells[3]`,
/// reconstructed in the characteristic frame of their average.
pub fn reconstruct_face_states(cells: &[Primitives], axis: Axis, gas: &GasModel) -> (Primitives, Primitives) {
    debug_assert_eq!(cells.len(), 6);
    let frame = CharacteristicFrame::between(&cells[2], &cells[3], axis, gas);
    let chars: [[f64; 4]; 6] = std::array::from_fn(|k| frame.project(&as_array(&cells[k])));
    let mut left = [0.0; 4];
    let mut right = [0.0; 4];
    for field in 0..4 {
        left[field] = mp5_left(&[chars[0][field], chars[1][field], chars[2][field], chars[3][field], chars[4][field]]);
        right[field] = mp5_left(&[chars[5][field], chars[4][field], chars[3][field], chars[2][field], chars[1][field]]);
    }
    (from_array(frame.unproject(&left)), from_array(frame.unproject(&right)))
}

/// Convective fluxes at faces `-1/2 ..= n-1/2` of a line holding `ghost`
/// cells on each side. A failure reports the offending face as its left
/// cell index.
pub fn line_fluxes(
    line: &[Primitives],
    ghost: usize,
    n: usize,
    axis: Axis,
    gas: &GasModel,
    out: &mut Vec<Conserved>,
) -> std::result::Result<(), (isize, Error)> {
    out.clear();
    for f in 0..=n {
        // face between line cells c and c+1
        let c = ghost + f - 1;
        let (ql, qr) = reconstruct_face_states(&line[c - 2..c + 4], axis, gas);
        let flux = cllf_flux(&ql, &qr, axis, gas).map_err(|e| (f as isize - 1, e))?;
        out.push(flux);
    }
    Ok(())
}
