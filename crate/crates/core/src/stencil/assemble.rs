//! Exact assembly of the cell-to-cell diffusion operator of each scheme:
//! cell gradients, then face gradients, then the conservative divergence.

use super::ops::{gradient_stencil, shen_divergence_coefficients, shen_interpolation_weights};
use super::{rat, Rational, SchemeKind, SchemeSpec, Stencil1D};

/// Two-face divergence of a face operator given relative to cell `j` at
/// face `j+1/2`.
fn two_face_divergence(face: &Stencil1D) -> Stencil1D {
    (face - &face.shifted(-1)).with_dx_power(face.dx_power() + 1)
}

/// The α-damping diffusion operator split by its dependence on the scheme
/// parameters: `S(α, β) = consistent + α·jump + αβ·curvature_jump`.
#[derive(Debug, Clone)]
pub struct AlphaDampingParts {
    pub consistent: Stencil1D,
    pub jump: Stencil1D,
    pub curvature_jump: Stencil1D,
}

impl AlphaDampingParts {
    pub fn combine(&self, alpha: Rational, beta: Rational) -> Stencil1D {
        &(&self.consistent + &self.jump.scaled(alpha)) + &self.curvature_jump.scaled(alpha * beta)
    }
}

/// Split the α-damping family built on gradients of `gradient_order`.
pub fn alpha_damping_parts(gradient_order: usize) -> AlphaDampingParts {
    let half = rat(1, 2);
    // Δx-scaled cell gradient: Δx·(∂u/∂x)_j
    let grad = gradient_stencil(gradient_order)
        .expect("supported gradient order")
        .with_dx_power(0);
    let consistent_face = (&grad + &grad.shifted(1)).scaled(half);

    let left = &Stencil1D::delta(0) + &grad.scaled(half);
    let right = &Stencil1D::delta(1) - &grad.shifted(1).scaled(half);
    let jump = &right - &left;

    let second_diff = Stencil1D::new([(-1, rat(1, 1)), (0, rat(-2, 1)), (1, rat(1, 1))], 0);
    let curvature_jump = &second_diff.shifted(1) - &second_diff;

    // every face term is a Δx-scaled gradient
    let face = |s: Stencil1D| two_face_divergence(&s.with_dx_power(1));
    AlphaDampingParts {
        consistent: face(consistent_face),
        jump: face(jump.scaled(half)),
        curvature_jump: face(curvature_jump.scaled(half)),
    }
}

fn shen_face_gradient() -> Stencil1D {
    let grad = gradient_stencil(6).expect("order 6");
    let mut face = Stencil1D::zero(1);
    for (k, w) in (-2..=3).zip(shen_interpolation_weights()) {
        face = &face + &grad.shifted(k).scaled(w);
    }
    face
}

/// Full diffusion operator `u ↦ ∂²u/∂x²|_j` of a scheme, with exact weights
/// and `dx_power = 2`.
pub fn assemble_divergence_stencil(spec: &SchemeSpec) -> Stencil1D {
    match spec.kind {
        SchemeKind::AlphaDamping6 | SchemeKind::AlphaDamping4 => {
            alpha_damping_parts(spec.kind.gradient_order()).combine(spec.alpha, spec.beta)
        }
        SchemeKind::Shen6 => {
            let face = shen_face_gradient();
            let [c1, c2, c3] = shen_divergence_coefficients();
            let pair = |plus: i32, minus: i32| &face.shifted(plus) - &face.shifted(minus);
            let div = &(&pair(0, -1).scaled(c1) + &pair(1, -2).scaled(c2)) + &pair(2, -3).scaled(c3);
            div.with_dx_power(2)
        }
    }
}
