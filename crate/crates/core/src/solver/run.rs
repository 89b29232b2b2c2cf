//! Time-marching driver.

use super::{diagnostics, residual, Diagnostics, Discretization, FlowState};
use crate::error::{Error, Result};
use crate::integrator::{compute_dt, rk3_step, TimeControl};
use crate::stencil::rational_to_f64;

/// Output times used when none are configured.
pub const DEFAULT_SNAPSHOT_TIMES: [f64; 5] = [0.45, 0.5, 0.54, 0.65, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub cfl: f64,
    pub t_end: f64,
    /// Times at which the state is recorded; steps are shortened to land on
    /// them exactly. `t_end` is always recorded.
    pub snapshot_times: Vec<f64>,
    /// Record diagnostics every this many steps (and at every snapshot).
    pub diagnostics_every: usize,
}

impl RunOptions {
    pub fn new(t_end: f64) -> Self {
        RunOptions {
            cfl: 0.2,
            t_end,
            snapshot_times: DEFAULT_SNAPSHOT_TIMES.to_vec(),
            diagnostics_every: 1,
        }
    }

    /// Sorted, de-duplicated output times not beyond `t_end`, ending at `t_end`.
    pub fn output_times(&self) -> Vec<f64> {
        let mut times: Vec<f64> = self.snapshot_times.iter().copied().filter(|&t| t <= self.t_end).collect();
        times.push(self.t_end);
        times.sort_by(f64::total_cmp);
        times.dedup();
        times
    }
}

/// A run halted by loss of positivity or a non-finite residual.
#[derive(Debug)]
pub struct RunFailure {
    /// Time of the last completed step.
    pub time: f64,
    /// Index of the step that failed (1-based).
    pub step: usize,
    pub error: Error,
}

#[derive(Debug)]
pub struct RunReport {
    pub snapshots: Vec<FlowState>,
    pub diagnostics: Vec<Diagnostics>,
    pub failure: Option<RunFailure>,
    pub steps: usize,
    /// State after the last completed step.
    pub final_state: FlowState,
}

/// March `initial` to `opts.t_end` with RK3.
///
/// Runtime failures end the run early and are reported in
/// [`RunReport::failure`]; invalid setups return an error.
pub fn run(initial: FlowState, disc: &Discretization, opts: &RunOptions) -> Result<RunReport> {
    run_observed(initial, disc, opts, |_, _| {})
}

/// [`run`] calling `observer(step, state)` after each completed step.
pub fn run_observed(
    initial: FlowState,
    disc: &Discretization,
    opts: &RunOptions,
    mut observer: impl FnMut(usize, &FlowState),
) -> Result<RunReport> {
    if !(opts.t_end >= initial.time) || !opts.t_end.is_finite() {
        return Err(Error::usage(format!("end time {} precedes the initial time {}", opts.t_end, initial.time)));
    }
    if initial.grid().ghost < disc.required_ghost() {
        return Err(Error::usage(format!(
            "grid has {} ghost layers, the discretisation needs {}",
            initial.grid().ghost,
            disc.required_ghost()
        )));
    }
    let alpha = rational_to_f64(disc.viscous.timestep_alpha());
    let every = opts.diagnostics_every.max(1);
    let targets = opts.output_times();

    let mut state = initial;
    let mut report_diag = vec![diagnostics(&state, &disc.gas)];
    let mut snapshots = Vec::new();
    let mut failure = None;
    let mut steps = 0;
    let mut next = 0;
    while next < targets.len() && targets[next] <= state.time {
        snapshots.push(state.clone());
        next += 1;
    }
    while next < targets.len() {
        let target = targets[next];
        let step = steps + 1;
        let attempt = TimeControl::new(opts.cfl, alpha, target)
            .and_then(|tc| compute_dt(&state, &disc.gas, &tc))
            .and_then(|dt| {
                if dt > 0.0 && dt.is_finite() {
                    Ok(dt)
                } else {
                    Err(Error::NonFinite { cell: (-1, -1) })
                }
            })
            .and_then(|dt| rk3_step(&state, dt, |s: &FlowState| residual(s, disc)).map(|s| (dt, s)));
        let (dt, mut new_state) = match attempt {
            Ok(ok) => ok,
            Err(e) if e.is_runtime_failure() => {
                failure = Some(RunFailure { time: state.time, step, error: e });
                break;
            }
            Err(e) => return Err(e),
        };
        let reached = state.time + dt >= target;
        new_state.time = if reached { target } else { state.time + dt };
        state = new_state;
        steps = step;
        observer(steps, &state);
        if reached {
            snapshots.push(state.clone());
            next += 1;
        }
        if reached || steps % every == 0 {
            report_diag.push(diagnostics(&state, &disc.gas));
        }
    }
    Ok(RunReport {
        snapshots,
        diagnostics: report_diag,
        failure,
        steps,
        final_state: state,
    })
}
