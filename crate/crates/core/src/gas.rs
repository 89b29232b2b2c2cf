//! Ideal-gas closure and transport properties.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conserved variables `(ρ, ρu, ρv, E)`.
pub type Conserved = [f64; 4];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    pub gamma: f64,
    pub prandtl: f64,
    pub gas_constant: f64,
    /// Constant dynamic viscosity.
    pub mu: f64,
}

impl Default for GasModel {
    fn default() -> Self {
        GasModel {
            gamma: 1.4,
            prandtl: 0.73,
            gas_constant: 1.0,
            mu: 0.0,
        }
    }
}

impl GasModel {
    pub fn new(gamma: f64, prandtl: f64, gas_constant: f64, mu: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(Error::usage(format!("gamma must exceed 1, got {gamma}")));
        }
        if !(prandtl > 0.0) {
            return Err(Error::usage(format!("Prandtl number must be positive, got {prandtl}")));
        }
        if !(gas_constant > 0.0) {
            return Err(Error::usage(format!("gas constant must be positive, got {gas_constant}")));
        }
        if !(mu >= 0.0) {
            return Err(Error::usage(format!("viscosity must be non-negative, got {mu}")));
        }
        Ok(GasModel {
            gamma,
            prandtl,
            gas_constant,
            mu,
        })
    }

    /// Defaults with `μ = 1/Re`.
    pub fn with_reynolds(re: f64) -> Self {
        GasModel {
            mu: 1.0 / re,
            ..GasModel::default()
        }
    }

    /// `C_p = Rγ/(γ-1)`.
    pub fn cp(&self) -> f64 {
        self.gas_constant * self.gamma / (self.gamma - 1.0)
    }

    /// `κ = C_p μ / Pr`.
    pub fn conductivity(&self) -> f64 {
        self.cp() * self.mu / self.prandtl
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Primitives {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl Primitives {
    pub fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Primitives { rho, u, v, p }
    }

    pub fn is_physical(&self) -> bool {
        self.rho > 0.0 && self.p > 0.0
    }
}

pub fn primitives_from_conserved(q: &Conserved, gas: &GasModel) -> Result<Primitives> {
    let rho = q[0];
    if !(rho > 0.0) {
        return Err(Error::NonPhysical {
            rho,
            p: f64::NAN,
            cell: None,
        });
    }
    let u = q[1] / rho;
    let v = q[2] / rho;
    let p = (gas.gamma - 1.0) * (q[3] - 0.5 * rho * (u * u + v * v));
    if !(p > 0.0) {
        return Err(Error::NonPhysical { rho, p, cell: None });
    }
    Ok(Primitives { rho, u, v, p })
}

pub fn conserved_from_primitives(w: &Primitives, gas: &GasModel) -> Conserved {
    [
        w.rho,
        w.rho * w.u,
        w.rho * w.v,
        w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v),
    ]
}

pub fn sound_speed(w: &Primitives, gas: &GasModel) -> f64 {
    (gas.gamma * w.p / w.rho).sqrt()
}

/// `T = γp / ((γ-1) C_p ρ)`, i.e. `p / (Rρ)`.
pub fn temperature(w: &Primitives, gas: &GasModel) -> f64 {
    gas.gamma * w.p / ((gas.gamma - 1.0) * gas.cp() * w.rho)
}

pub fn kinematic_viscosity(w: &Primitives, gas: &GasModel) -> f64 {
    gas.mu / w.rho
}
