use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, rational_to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeKind {
    /// Sixth-order α-damping: fourth-order cell gradients, quadratic
    /// reconstruction and a jump penalty.
    AlphaDamping6,
    /// Sixth-order interpolation of sixth-order cell gradients with the
    /// three-pair conservative divergence.
    Shen6,
    /// Fourth-order α-damping baseline: second-order gradients, linear
    /// reconstruction.
    AlphaDamping4,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [
        SchemeKind::AlphaDamping6,
        SchemeKind::Shen6,
        SchemeKind::AlphaDamping4,
    ];

    pub fn is_alpha_damping(self) -> bool {
        matches!(self, SchemeKind::AlphaDamping6 | SchemeKind::AlphaDamping4)
    }

    /// Order of the cell-centred gradients the scheme is built from.
    pub fn gradient_order(self) -> usize {
        match self {
            SchemeKind::AlphaDamping6 => 4,
            SchemeKind::Shen6 => 6,
            SchemeKind::AlphaDamping4 => 2,
        }
    }

    /// Cell radius of the assembled diffusion operator, which is also the
    /// ghost width the viscous terms need.
    pub fn radius(self) -> usize {
        match self {
            SchemeKind::AlphaDamping6 => 3,
            SchemeKind::Shen6 => 8,
            SchemeKind::AlphaDamping4 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::AlphaDamping6 => "alpha6",
            SchemeKind::Shen6 => "shen6",
            SchemeKind::AlphaDamping4 => "alpha4",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "alpha6" => Ok(SchemeKind::AlphaDamping6),
            "shen6" => Ok(SchemeKind::Shen6),
            "alpha4" => Ok(SchemeKind::AlphaDamping4),
            other => Err(Error::usage(format!(
                "unknown viscous scheme `{other}` (expected alpha6, shen6 or alpha4)"
            ))),
        }
    }
}

/// A viscous scheme together with its damping (α) and reconstruction (β)
/// coefficients. Both are zero for [`SchemeKind::Shen6`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeSpec {
    pub kind: SchemeKind,
    pub alpha: Rational,
    pub beta: Rational,
}

impl SchemeSpec {
    pub fn new(kind: SchemeKind, alpha: Rational, beta: Rational) -> Result<Self> {
        match kind {
            SchemeKind::Shen6 => {
                if !alpha.is_zero() || !beta.is_zero() {
                    return Err(Error::usage("shen6 takes no α or β"));
                }
            }
            SchemeKind::AlphaDamping6 | SchemeKind::AlphaDamping4 => {
                if !alpha.is_positive() {
                    return Err(Error::usage(format!(
                        "α must be positive for {kind}, got {alpha}"
                    )));
                }
                if kind == SchemeKind::AlphaDamping4 && !beta.is_zero() {
                    return Err(Error::usage("alpha4 uses linear reconstruction (β = 0)"));
                }
            }
        }
        Ok(SchemeSpec { kind, alpha, beta })
    }

    /// α = 38/15, β = −11/228.
    pub fn alpha6() -> Self {
        SchemeSpec {
            kind: SchemeKind::AlphaDamping6,
            alpha: rat(38, 15),
            beta: rat(-11, 228),
        }
    }

    pub fn shen6() -> Self {
        SchemeSpec {
            kind: SchemeKind::Shen6,
            alpha: Rational::zero(),
            beta: Rational::zero(),
        }
    }

    /// α solved so that the fourth-order Taylor term vanishes.
    pub fn alpha4() -> Self {
        let (alpha, beta) = crate::spectral::solve_damping_params(SchemeKind::AlphaDamping4)
            .expect("alpha4 moment system is regular");
        SchemeSpec {
            kind: SchemeKind::AlphaDamping4,
            alpha,
            beta,
        }
    }

    pub fn default_for(kind: SchemeKind) -> Self {
        match kind {
            SchemeKind::AlphaDamping6 => Self::alpha6(),
            SchemeKind::Shen6 => Self::shen6(),
            SchemeKind::AlphaDamping4 => Self::alpha4(),
        }
    }

    /// The α entering the viscous time-step limit. Shen's scheme has no
    /// damping coefficient and runs under the sixth-order α-damping value.
    pub fn timestep_alpha(&self) -> Rational {
        match self.kind {
            SchemeKind::Shen6 => rat(38, 15),
            _ => self.alpha,
        }
    }

    pub fn alpha_f64(&self) -> f64 {
        rational_to_f64(self.alpha)
    }

    pub fn beta_f64(&self) -> f64 {
        rational_to_f64(self.beta)
    }
}
