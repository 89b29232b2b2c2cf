//! Pointwise floating-point kernels of the viscous schemes.
//!
//! Windows are passed as slices ordered by increasing cell index. For face
//! operators the face sits between the two middle cells: a six-cell window
//! `u[0..6]` covers cells `j-2..=j+3` around face `j+1/2`.

use super::{rat, rational_to_f64, Rational, SchemeKind, SchemeSpec, Stencil1D};
use crate::error::{Error, Result};

/// Weights of the sixth-order face interpolation `(3, -25, 150, 150, -25, 3)/256`.
pub fn shen_interpolation_weights() -> [Rational; 6] {
    [
        rat(3, 256),
        rat(-25, 256),
        rat(150, 256),
        rat(150, 256),
        rat(-25, 256),
        rat(3, 256),
    ]
}

/// Coefficients of the three face-pair differences in Shen's divergence.
pub fn shen_divergence_coefficients() -> [Rational; 3] {
    [rat(75, 64), rat(-25, 384), rat(3, 640)]
}

/// Central-difference first derivative of the given order as an exact stencil.
pub fn gradient_stencil(order: usize) -> Result<Stencil1D> {
    let w: Vec<(i32, Rational)> = match order {
        2 => vec![(-1, rat(-1, 2)), (1, rat(1, 2))],
        4 => vec![
            (-2, rat(1, 12)),
            (-1, rat(-8, 12)),
            (1, rat(8, 12)),
            (2, rat(-1, 12)),
        ],
        6 => vec![
            (-3, rat(-1, 60)),
            (-2, rat(9, 60)),
            (-1, rat(-45, 60)),
            (1, rat(45, 60)),
            (2, rat(-9, 60)),
            (3, rat(1, 60)),
        ],
        _ => return Err(Error::usage(format!("gradient order {order} not in {{2, 4, 6}}"))),
    };
    Ok(Stencil1D::new(w, 1))
}

#[inline]
pub(crate) fn grad2(u: &[f64], c: usize, dx: f64) -> f64 {
    (u[c + 1] - u[c - 1]) / (2.0 * dx)
}

#[inline]
pub(crate) fn grad4(u: &[f64], c: usize, dx: f64) -> f64 {
    (8.0 * (u[c + 1] - u[c - 1]) - (u[c + 2] - u[c - 2])) / (12.0 * dx)
}

#[inline]
pub(crate) fn grad6(u: &[f64], c: usize, dx: f64) -> f64 {
    (45.0 * (u[c + 1] - u[c - 1]) - 9.0 * (u[c + 2] - u[c - 2]) + (u[c + 3] - u[c - 3]))
        / (60.0 * dx)
}

#[inline]
pub(crate) fn grad_of_order(order: usize, u: &[f64], c: usize, dx: f64) -> f64 {
    match order {
        2 => grad2(u, c, dx),
        4 => grad4(u, c, dx),
        _ => grad6(u, c, dx),
    }
}

/// Central-difference derivative at the centre of a `2r+1` window
/// (7, 5 or 3 values for order 6, 4 or 2).
pub fn cell_gradient(window: &[f64], order: usize, dx: f64) -> Result<f64> {
    let expected = match order {
        2 => 3,
        4 => 5,
        6 => 7,
        _ => return Err(Error::usage(format!("gradient order {order} not in {{2, 4, 6}}"))),
    };
    if window.len() != expected {
        return Err(Error::usage(format!(
            "order-{order} gradient needs a {expected}-cell window, got {}",
            window.len()
        )));
    }
    if !(dx > 0.0) {
        return Err(Error::usage(format!("dx must be positive, got {dx}")));
    }
    Ok(grad_of_order(order, window, expected / 2, dx))
}

/// Which trace of face `j+1/2` is being reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSide {
    /// `u_L`, from cell `j`.
    Left,
    /// `u_R`, from cell `j+1`.
    Right,
}

/// Quadratic reconstruction of a face trace from the three cells centred on
/// the donor cell: `u ± g Δx/2 + β (u_- - 2u + u_+)`.
#[inline]
pub fn reconstruct_face(window: [f64; 3], grad_center: f64, side: FaceSide, beta: f64, dx: f64) -> f64 {
    let curvature = beta * (window[0] - 2.0 * window[1] + window[2]);
    match side {
        FaceSide::Left => window[1] + grad_center * dx * 0.5 + curvature,
        FaceSide::Right => window[1] - grad_center * dx * 0.5 + curvature,
    }
}

/// Floating-point instantiation of an α-damping scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaKernel {
    pub gradient_order: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl AlphaKernel {
    pub fn new(spec: &SchemeSpec) -> Result<Self> {
        if !spec.kind.is_alpha_damping() {
            return Err(Error::usage(format!("{} is not an α-damping scheme", spec.kind)));
        }
        Ok(AlphaKernel {
            gradient_order: spec.kind.gradient_order(),
            alpha: spec.alpha_f64(),
            beta: spec.beta_f64(),
        })
    }

    /// Cell gradients at `j` and `j+1` for the face between cells `c` and
    /// `c+1` of `u`.
    #[inline]
    pub fn cell_gradients(&self, u: &[f64], c: usize, dx: f64) -> (f64, f64) {
        (
            grad_of_order(self.gradient_order, u, c, dx),
            grad_of_order(self.gradient_order, u, c + 1, dx),
        )
    }

    /// Left and right traces at the face between cells `c` and `c+1`.
    #[inline]
    pub fn traces(&self, u: &[f64], c: usize, g: (f64, f64), dx: f64) -> (f64, f64) {
        let ul = reconstruct_face([u[c - 1], u[c], u[c + 1]], g.0, FaceSide::Left, self.beta, dx);
        let ur = reconstruct_face([u[c], u[c + 1], u[c + 2]], g.1, FaceSide::Right, self.beta, dx);
        (ul, ur)
    }

    /// Consistent term plus damping term at the face between `c` and `c+1`.
    #[inline]
    pub fn face_gradient_at(&self, u: &[f64], c: usize, dx: f64) -> f64 {
        let g = self.cell_gradients(u, c, dx);
        let (ul, ur) = self.traces(u, c, g, dx);
        0.5 * (g.0 + g.1) + self.alpha / (2.0 * dx) * (ur - ul)
    }

    /// Average of the two reconstructed traces.
    #[inline]
    pub fn face_value_at(&self, u: &[f64], c: usize, dx: f64) -> f64 {
        let g = self.cell_gradients(u, c, dx);
        let (ul, ur) = self.traces(u, c, g, dx);
        0.5 * (ul + ur)
    }
}

/// α-damping face gradient at `j+1/2` from cells `j-2..=j+3`.
pub fn face_gradient_alpha(window: &[f64; 6], spec: &SchemeSpec, dx: f64) -> Result<f64> {
    if !(dx > 0.0) {
        return Err(Error::usage(format!("dx must be positive, got {dx}")));
    }
    Ok(AlphaKernel::new(spec)?.face_gradient_at(window, 2, dx))
}

/// Sixth-order interpolation of six cell values to the middle face.
#[inline]
pub fn interpolate_face6(v: &[f64]) -> f64 {
    (150.0 * (v[2] + v[3]) - 25.0 * (v[1] + v[4]) + 3.0 * (v[0] + v[5])) / 256.0
}

/// Shen's face gradient: the sixth-order interpolation of six precomputed
/// sixth-order cell gradients at `j-2..=j+3`.
pub fn face_gradient_shen(grad_window: &[f64; 6]) -> f64 {
    interpolate_face6(grad_window)
}

/// `(F_{j+1/2} - F_{j-1/2}) / Δx` for every cell between consecutive faces.
pub fn divergence_two_face(flux_faces: &[f64], dx: f64) -> Vec<f64> {
    flux_faces.windows(2).map(|f| (f[1] - f[0]) / dx).collect()
}

/// Three-pair conservative divergence. `flux_faces[k]` is the face
/// `j-5/2` of output cell `k`, so `n` faces give `n - 5` cells.
pub fn divergence_shen(flux_faces: &[f64], dx: f64) -> Result<Vec<f64>> {
    if flux_faces.len() < 6 {
        return Err(Error::usage(format!(
            "three-pair divergence needs at least 6 faces, got {}",
            flux_faces.len()
        )));
    }
    let [c1, c2, c3] = shen_divergence_coefficients().map(rational_to_f64);
    Ok(flux_faces
        .windows(6)
        .map(|f| (c1 * (f[3] - f[2]) + c2 * (f[4] - f[1]) + c3 * (f[5] - f[0])) / dx)
        .collect())
}

/// Index of the first face (as `j` in `j+1/2`) and the number of faces the
/// scheme's divergence reads for `n` interior cells.
pub fn face_range(kind: SchemeKind, n: usize) -> (isize, usize) {
    match kind {
        SchemeKind::Shen6 => (-3, n + 5),
        _ => (-1, n + 1),
    }
}

/// Divergence matching [`face_range`]: the two-face form for α-damping,
/// the three-pair form for Shen's scheme. Adds into `out`.
pub(crate) fn accumulate_divergence(kind: SchemeKind, faces: &[f64], dx: f64, scale: f64, out: &mut [f64]) {
    match kind {
        SchemeKind::Shen6 => {
            let [c1, c2, c3] = shen_divergence_coefficients().map(rational_to_f64);
            for (o, f) in out.iter_mut().zip(faces.windows(6)) {
                *o += scale * (c1 * (f[3] - f[2]) + c2 * (f[4] - f[1]) + c3 * (f[5] - f[0])) / dx;
            }
        }
        _ => {
            for (o, f) in out.iter_mut().zip(faces.windows(2)) {
                *o += scale * (f[1] - f[0]) / dx;
            }
        }
    }
}
