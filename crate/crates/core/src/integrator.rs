//! Third-order TVD Runge-Kutta stepping and the explicit time-step limit.

use crate::error::{Error, Result};
use crate::gas::{kinematic_viscosity, primitives_from_conserved, sound_speed, GasModel};
use crate::solver::FlowState;

/// Types the RK3 stages can be formed on.
pub trait RkState: Sized {
    /// Time derivative produced by the residual.
    type Rate;

    /// `a·base + (1 - a)·(current + dt·rate)`, evaluated as
    /// `current + a·(base - current) + (1 - a)·dt·rate` so that a zero rate
    /// on `base == current` reproduces the state bit for bit.
    fn stage(base: &Self, a: f64, current: &Self, rate: &Self::Rate, dt: f64) -> Self;
}

impl RkState for f64 {
    type Rate = f64;

    fn stage(base: &f64, a: f64, current: &f64, rate: &f64, dt: f64) -> f64 {
        current + a * (base - current) + (1.0 - a) * dt * rate
    }
}

impl RkState for Vec<f64> {
    type Rate = Vec<f64>;

    fn stage(base: &Self, a: f64, current: &Self, rate: &Self, dt: f64) -> Self {
        base.iter()
            .zip(current)
            .zip(rate)
            .map(|((b, c), r)| c + a * (b - c) + (1.0 - a) * dt * r)
            .collect()
    }
}

/// One step of the Shu-Osher third-order TVD Runge-Kutta scheme:
///
/// ```text
/// u1 = un + dt L(un)
/// u2 = 3/4 un + 1/4 (u1 + dt L(u1))
/// u  = 1/3 un + 2/3 (u2 + dt L(u2))
/// ```
///
/// A failing residual aborts the step; `state` is never modified.
pub fn rk3_step<S, E, F>(state: &S, dt: f64, mut residual: F) -> Result<S, E>
where
    S: RkState,
    F: FnMut(&S) -> Result<S::Rate, E>,
{
    let l0 = residual(state)?;
    let u1 = S::stage(state, 0.0, state, &l0, dt);
    let l1 = residual(&u1)?;
    let u2 = S::stage(state, 0.75, &u1, &l1, dt);
    let l2 = residual(&u2)?;
    Ok(S::stage(state, 1.0 / 3.0, &u2, &l2, dt))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeControl {
    pub cfl: f64,
    /// Damping α of the viscous scheme, entering `Δt_viscous = Δx²/(αν)`.
    pub alpha_damp: f64,
    pub t_end: f64,
}

impl TimeControl {
    pub fn new(cfl: f64, alpha_damp: f64, t_end: f64) -> Result<Self> {
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(Error::usage(format!("CFL must be in (0, 1], got {cfl}")));
        }
        if !(alpha_damp > 0.0) {
            return Err(Error::usage(format!("damping α must be positive, got {alpha_damp}")));
        }
        Ok(TimeControl { cfl, alpha_damp, t_end })
    }
}

/// The two limits entering the time step, before the CFL factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepLimits {
    pub inviscid: f64,
    /// `+∞` when the flow is inviscid.
    pub viscous: f64,
}

pub fn step_limits(state: &FlowState, gas: &GasModel, alpha_damp: f64) -> Result<StepLimits> {
    let grid = state.grid();
    let (dx, dy) = (grid.dx(), grid.dy());
    let mut inviscid = f64::INFINITY;
    let mut viscous = f64::INFINITY;
    let h2 = dx.min(dy).powi(2);
    for j in 0..grid.ny as isize {
        for i in 0..grid.nx as isize {
            let w = primitives_from_conserved(state.get(i, j), gas).map_err(|e| e.at_cell(i, j))?;
            let c = sound_speed(&w, gas);
            inviscid = inviscid.min(dx / (w.u.abs() + c)).min(dy / (w.v.abs() + c));
            let nu = kinematic_viscosity(&w, gas);
            if nu > 0.0 {
                viscous = viscous.min(h2 / (alpha_damp * nu));
            }
        }
    }
    Ok(StepLimits { inviscid, viscous })
}

/// `CFL · min(Δt_viscous, Δt_inviscid)`, shortened so that a step from
/// `state.time` does not pass `tc.t_end`.
pub fn compute_dt(state: &FlowState, gas: &GasModel, tc: &TimeControl) -> Result<f64> {
    let limits = step_limits(state, gas, tc.alpha_damp)?;
    let dt = tc.cfl * limits.inviscid.min(limits.viscous);
    let remaining = tc.t_end - state.time;
    Ok(if dt >= remaining { remaining } else { dt })
}
