//! Fourier analysis of assembled diffusion stencils.
//!
//! For a stencil with weights `w_m`, the symbol `ℱ(θ) = Σ w_m e^{imθ}` is the
//! factor the operator applies to the grid mode `e^{ikx}` (times `1/Δx²`),
//! with `θ = kΔx`. The exact second derivative has `ℱ(θ) = -θ²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::stencil::{
    alpha_damping_parts, assemble_divergence_stencil, rational_to_f64, Rational, SchemeKind, SchemeSpec,
    Stencil1D,
};

/// A wavenumber and the operator's symbol there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample {
    pub theta: f64,
    pub symbol: Complex64,
}

pub fn fourier_symbol(stencil: &Stencil1D, theta: f64) -> Complex64 {
    stencil
        .weights()
        .map(|(m, w)| Complex64::from_polar(rational_to_f64(w), m as f64 * theta))
        .sum()
}

/// Real part of the symbol of a symmetric stencil, summed as
/// `w_0 + 2 Σ_{m>0} w_m cos(mθ)` so the result is exactly real.
pub fn symmetric_symbol(stencil: &Stencil1D, theta: f64) -> f64 {
    stencil
        .weights()
        .filter(|&(m, _)| m >= 0)
        .map(|(m, w)| {
            let w = rational_to_f64(w);
            if m == 0 {
                w
            } else {
                2.0 * w * (m as f64 * theta).cos()
            }
        })
        .sum()
}

pub fn sample(stencil: &Stencil1D, theta: f64) -> SpectralSample {
    SpectralSample {
        theta,
        symbol: fourier_symbol(stencil, theta),
    }
}

/// `Σ_m w_m m^n`, exactly. The `θ^n` coefficient of the symbol's Taylor
/// series is `(-1)^{n/2} moments(n) / n!`.
pub fn moments(stencil: &Stencil1D, n: u32) -> Result<Rational> {
    if n % 2 != 0 {
        return Err(Error::usage(format!("moment order must be even, got {n}")));
    }
    Ok(stencil
        .weights()
        .map(|(m, w)| w * Rational::from_integer(m as i128).pow(n as i32))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// Taylor coefficient of `θ^n` in the symbol.
pub fn series_coefficient(stencil: &Stencil1D, n: u32) -> Result<Rational> {
    let m = moments(stencil, n)?;
    let factorial: i128 = (1..=n as i128).product();
    let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
    Ok(m * Rational::new(sign, factorial))
}

/// A symmetric stencil written as `Σ_m D_m (u_{j+m} - 2u_j + u_{j-m}) / m²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DampingDecomposition {
    /// `d[m-1] = D_m`.
    pub d: Vec<Rational>,
}

impl DampingDecomposition {
    /// `Σ D_m`, which is 1 for a consistent second derivative.
    pub fn total(&self) -> Rational {
        self.d.iter().copied().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn to_stencil(&self) -> Stencil1D {
        let mut weights = Vec::with_capacity(2 * self.d.len() + 1);
        let mut center = Rational::zero();
        for (k, &dm) in self.d.iter().enumerate() {
            let m = k as i32 + 1;
            let w = dm / Rational::from_integer((m * m) as i128);
            weights.push((m, w));
            weights.push((-m, w));
            center -= w + w;
        }
        weights.push((0, center));
        Stencil1D::new(weights, 2)
    }

    /// Symbol contributed at the Nyquist mode: only odd `m` survive, each
    /// with `-4 D_m / m²`.
    pub fn nyquist_symbol(&self) -> Rational {
        self.d
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == 0)
            .map(|(k, &dm)| dm * Rational::new(-4, ((k + 1) * (k + 1)) as i128))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

pub fn dm_decomposition(stencil: &Stencil1D) -> Result<DampingDecomposition> {
    if !stencil.is_symmetric() {
        return Err(Error::usage("central-difference decomposition needs a symmetric stencil"));
    }
    if !stencil.sum().is_zero() {
        return Err(Error::usage(format!(
            "central-difference decomposition needs zero-sum weights, sum = {}",
            stencil.sum()
        )));
    }
    let radius = stencil.radius() as i32;
    let d: Vec<Rational> = (1..=radius)
        .map(|m| stencil.weight(m) * Rational::from_integer((m * m) as i128))
        .collect();
    let decomposition = DampingDecomposition { d };
    debug_assert_eq!(decomposition.to_stencil().weight(0), stencil.weight(0));
    Ok(decomposition)
}

/// The printed closed-form symbols, kept for cross-checking the stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// Product form with the 230400 denominator.
    Shen6,
    /// Trigonometric form in α and β.
    AlphaDamping6,
}

pub fn closed_form_symbol(form: ClosedForm, theta: f64, alpha: Rational, beta: Rational) -> f64 {
    let c = theta.cos();
    match form {
        ClosedForm::Shen6 => {
            let s2 = theta.sin().powi(2);
            -s2 * (3.0 * c * c - 14.0 * c + 43.0) * (9.0 * c * c - 58.0 * c + 529.0) * (2.0 * c * c - 9.0 * c + 22.0)
                / 230400.0
        }
        ClosedForm::AlphaDamping6 => {
            let a = rational_to_f64(alpha);
            let b = rational_to_f64(beta);
            let s2 = (0.5 * theta).sin().powi(2);
            -s2 / 6.0
                * (24.0 * a * b + 5.0 * a + 6.0 * (a * (4.0 * b - 1.0) + 2.0) * c + (a - 2.0) * (2.0 * theta).cos() + 14.0)
        }
    }
}

/// Parameters of an α-damping family that cancel its lowest error moments.
///
/// The assembled operator is affine in `(α, αβ)`, so sixth order is a 2×2
/// linear system in `moments(4) = moments(6) = 0`; the fourth-order family
/// fixes `β = 0` and solves `moments(4) = 0` for α alone.
pub fn solve_damping_params(kind: SchemeKind) -> Result<(Rational, Rational)> {
    let parts = alpha_damping_parts(kind.gradient_order());
    let m = |s: &Stencil1D, n| moments(s, n).expect("even order");
    match kind {
        SchemeKind::AlphaDamping6 => {
            let (a11, a12, b1) = (m(&parts.jump, 4), m(&parts.curvature_jump, 4), -m(&parts.consistent, 4));
            let (a21, a22, b2) = (m(&parts.jump, 6), m(&parts.curvature_jump, 6), -m(&parts.consistent, 6));
            let det = a11 * a22 - a12 * a21;
            if det.is_zero() {
                return Err(Error::NoSolution("singular moment system for alpha6".into()));
            }
            let alpha = (b1 * a22 - a12 * b2) / det;
            let alpha_beta = (a11 * b2 - a21 * b1) / det;
            if alpha.is_zero() {
                return Err(Error::NoSolution("α = 0 leaves β undetermined".into()));
            }
            Ok((alpha, alpha_beta / alpha))
        }
        SchemeKind::AlphaDamping4 => {
            let a = m(&parts.jump, 4);
            if a.is_zero() {
                return Err(Error::NoSolution("damping term does not enter moments(4)".into()));
            }
            Ok((-m(&parts.consistent, 4) / a, Rational::zero()))
        }
        SchemeKind::Shen6 => Err(Error::NoSolution("shen6 has no free parameters".into())),
    }
}

/// One row per wavenumber `θ = πk/n`, `k = 1..=n`: the exact symbol `-θ²`
/// followed by the real symbol of each scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable {
    pub schemes: Vec<SchemeSpec>,
    pub rows: Vec<SpectralRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRow {
    pub theta: f64,
    pub exact: f64,
    pub values: Vec<f64>,
}

pub const DEFAULT_SAMPLES: usize = 128;

pub fn spectral_table(schemes: &[SchemeSpec], n_samples: usize) -> Result<SpectralTable> {
    if n_samples < 2 {
        return Err(Error::usage(format!("need at least 2 samples, got {n_samples}")));
    }
    let stencils: Vec<Stencil1D> = schemes.iter().map(assemble_divergence_stencil).collect();
    let rows = (1..=n_samples)
        .map(|k| {
            // θ = π exactly on the last row
            let theta = if k == n_samples { PI } else { PI * k as f64 / n_samples as f64 };
            SpectralRow {
                theta,
                exact: -theta * theta,
                values: stencils.iter().map(|s| symmetric_symbol(s, theta)).collect(),
            }
        })
        .collect();
    Ok(SpectralTable {
        schemes: schemes.to_vec(),
        rows,
    })
}

/// Exact symbol at the Nyquist mode, `Σ w_m (-1)^m`.
pub fn nyquist_symbol_exact(stencil: &Stencil1D) -> Rational {
    stencil
        .weights()
        .map(|(m, w)| if m % 2 == 0 { w } else { -w })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Max-norm error of a second-derivative stencil applied to `sin x` on a
/// periodic grid of `n` points over `[0, 2π)`.
///
/// Each weighted difference `u_{j+m} - 2u_j + u_{j-m}` of the samples is
/// evaluated as `-4 sin(x_j) sin²(mΔx/2)`, its exact value, so the result
/// measures truncation error rather than the cancellation in the sampled sum.
pub fn sine_error(stencil: &Stencil1D, n: usize) -> f64 {
    let dx = 2.0 * PI / n as f64;
    let d = dm_decomposition(stencil).expect("symmetric zero-sum stencil");
    let factor: f64 = d
        .d
        .iter()
        .enumerate()
        .map(|(k, &dm)| {
            let m = (k + 1) as f64;
            rational_to_f64(dm) / (m * m) * -4.0 * (0.5 * m * dx).sin().powi(2)
        })
        .sum::<f64>()
        / (dx * dx);
    (0..n)
        .map(|j| {
            let s = (j as f64 * dx).sin();
            (s * factor + s).abs()
        })
        .fold(0.0, f64::max)
}

/// Observed orders `log2(e_k / e_{k+1})` between consecutive doublings.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|e| (e[0] / e[1]).log2()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stencil::rat;

    fn laplacian3() -> Stencil1D {
        Stencil1D::new([(-1, rat(1, 1)), (0, rat(-2, 1)), (1, rat(1, 1))], 2)
    }

    #[test]
    fn three_point_laplacian_at_nyquist() {
        let z = fourier_symbol(&laplacian3(), PI);
        assert!((z.re + 4.0).abs() < 1e-15 && z.im.abs() < 1e-15);
        assert_eq!(dm_decomposition(&laplacian3()).unwrap().d, vec![rat(1, 1)]);
    }

    #[test]
    fn nyquist_symbols() {
        let shen = assemble_divergence_stencil(&SchemeSpec::shen6());
        let alpha = assemble_divergence_stencil(&SchemeSpec::alpha6());
        assert_eq!(nyquist_symbol_exact(&shen), rat(0, 1));
        assert_eq!(nyquist_symbol_exact(&alpha), rat(-272, 45));
        assert!(fourier_symbol(&shen, PI).norm() < 1e-13);
        assert!((fourier_symbol(&alpha, PI).re + 272.0 / 45.0).abs() < 1e-13);
    }

    #[test]
    fn moment_conditions() {
        let alpha = assemble_divergence_stencil(&SchemeSpec::alpha6());
        let shen = assemble_divergence_stencil(&SchemeSpec::shen6());
        for s in [&alpha, &shen] {
            assert_eq!(moments(s, 0).unwrap(), rat(0, 1));
            assert_eq!(moments(s, 2).unwrap(), rat(2, 1));
            assert_eq!(moments(s, 4).unwrap(), rat(0, 1));
            assert_eq!(moments(s, 6).unwrap(), rat(0, 1));
            assert_ne!(moments(s, 8).unwrap(), rat(0, 1));
        }
        // leading error inside the bracket of -θ²[1 - 57θ⁶/4480 + ...]
        assert_eq!(series_coefficient(&shen, 8).unwrap(), rat(513, 40320));
        assert_eq!(rat(513, 40320), rat(57, 4480));
        assert!(moments(&alpha, 3).is_err());
    }

    #[test]
    fn series_coefficients_match_printed_expansion() {
        // -θ²[1 - (α(12β-1)+4)/24 θ² - (9-5α(6β+1))/360 θ⁴ - (63α(4β+3)-376)/40320 θ⁶]
        // holds for any α, β of the family
        let parts = alpha_damping_parts(4);
        for (a, b) in [(rat(1, 1), rat(0, 1)), (rat(38, 15), rat(-11, 228)), (rat(7, 3), rat(1, 5))] {
            let s = parts.combine(a, b);
            let twelve = Rational::from_integer(12);
            assert_eq!(series_coefficient(&s, 2).unwrap(), rat(-1, 1));
            assert_eq!(series_coefficient(&s, 4).unwrap(), (a * (twelve * b - 1) + 4) / 24);
            assert_eq!(
                series_coefficient(&s, 6).unwrap(),
                (Rational::from_integer(9) - a * 5 * (b * 6 + 1)) / 360
            );
            assert_eq!(
                series_coefficient(&s, 8).unwrap(),
                (a * 63 * (b * 4 + 3) - 376) / 40320
            );
        }
    }

    #[test]
    fn decomposition_tables() {
        let alpha = dm_decomposition(&assemble_divergence_stencil(&SchemeSpec::alpha6())).unwrap();
        assert_eq!(alpha.d, vec![rat(3, 2), rat(-3, 5), rat(1, 10)]);
        assert_eq!(alpha.total(), rat(1, 1));
        assert_eq!(alpha.nyquist_symbol(), rat(-272, 45));
        let shen = dm_decomposition(&assemble_divergence_stencil(&SchemeSpec::shen6())).unwrap();
        assert_eq!(shen.nyquist_symbol(), rat(0, 1));
        assert_eq!(shen.total(), rat(1, 1));
    }

    #[test]
    fn decomposition_rejects_bad_stencils() {
        let asym = Stencil1D::new([(-1, rat(-1, 2)), (1, rat(1, 2))], 1);
        assert!(dm_decomposition(&asym).is_err());
        let nonzero = Stencil1D::new([(-1, rat(1, 1)), (0, rat(-1, 1)), (1, rat(1, 1))], 2);
        assert!(dm_decomposition(&nonzero).is_err());
    }

    #[test]
    fn decomposition_round_trips() {
        for kind in SchemeKind::ALL {
            let s = assemble_divergence_stencil(&SchemeSpec::default_for(kind));
            assert_eq!(dm_decomposition(&s).unwrap().to_stencil(), s);
        }
    }

    #[test]
    fn solved_parameters() {
        assert_eq!(
            solve_damping_params(SchemeKind::AlphaDamping6).unwrap(),
            (rat(38, 15), rat(-11, 228))
        );
        let (a4, b4) = solve_damping_params(SchemeKind::AlphaDamping4).unwrap();
        assert_eq!(b4, rat(0, 1));
        let s4 = alpha_damping_parts(2).combine(a4, b4);
        assert_eq!(moments(&s4, 4).unwrap(), rat(0, 1));
        assert_eq!(moments(&s4, 2).unwrap(), rat(2, 1));
        let perturbed = alpha_damping_parts(4).combine(rat(38, 15) + rat(1, 100), rat(-11, 228));
        assert_ne!(moments(&perturbed, 4).unwrap(), rat(0, 1));
        assert!(solve_damping_params(SchemeKind::Shen6).is_err());
    }

    #[test]
    fn shen_closed_form_limits() {
        let small = 1e-4;
        let ratio = closed_form_symbol(ClosedForm::Shen6, small, rat(0, 1), rat(0, 1)) / -(small * small);
        assert!((ratio - 1.0).abs() < 1e-7);
        assert!(closed_form_symbol(ClosedForm::Shen6, PI, rat(0, 1), rat(0, 1)).abs() < 1e-12);
    }

    #[test]
    fn alpha_closed_form_disagrees_at_nyquist() {
        let spec = SchemeSpec::alpha6();
        let printed = closed_form_symbol(ClosedForm::AlphaDamping6, PI, spec.alpha, spec.beta);
        assert!((printed + 76.0 / 15.0).abs() < 1e-12);
        let stencil = symmetric_symbol(&assemble_divergence_stencil(&spec), PI);
        assert!((printed - stencil).abs() > 0.9);
    }

    #[test]
    fn table_endpoints() {
        let t = spectral_table(&[SchemeSpec::shen6(), SchemeSpec::alpha6()], 128).unwrap();
        assert_eq!(t.rows.len(), 128);
        let last = t.rows.last().unwrap();
        assert_eq!(last.theta, PI);
        assert!((last.exact + PI * PI).abs() < 1e-15);
        assert!(last.values[0].abs() < 1e-13);
        assert!((last.values[1] + 272.0 / 45.0).abs() < 1e-13);
        assert!(spectral_table(&[SchemeSpec::shen6()], 1).is_err());
    }
}
