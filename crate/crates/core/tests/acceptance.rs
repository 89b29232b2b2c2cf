//! Acceptance suite A1–A10. Runs as a plain binary (no libtest harness) so
//! that each criterion prints exactly one PASS/FAIL line; exits non-zero if
//! any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use viscdamp::gas::{conserved_from_primitives, primitives_from_conserved, sound_speed, GasModel, Primitives};
use viscdamp::integrator::rk3_step;
use viscdamp::solver::{
    init, residual, run, sawtooth_metric, wall_face_velocity, BoundaryKind, BoundarySet, Discretization, FlowState,
    Grid2D, RunOptions, RunReport,
};
use viscdamp::spectral::{
    closed_form_symbol, dm_decomposition, fourier_symbol, moments, observed_orders, sine_error, symmetric_symbol,
    ClosedForm,
};
use viscdamp::stencil::ops::{divergence_shen, divergence_two_face};
use viscdamp::stencil::{assemble_divergence_stencil, rat, SchemeKind, SchemeSpec};
use viscdamp::viscous::{face_normal_gradients, Line};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sixth_order_schemes() -> [SchemeSpec; 2] {
    [SchemeSpec::alpha6(), SchemeSpec::shen6()]
}

fn a1_moments() -> Outcome {
    let zero = rat(0, 1);
    let mut notes = Vec::new();
    for spec in sixth_order_schemes() {
        let s = assemble_divergence_stencil(&spec);
        let m = |n| moments(&s, n).map_err(|e| e.to_string());
        ensure(s.sum() == zero, format!("{}: Σw = {}", spec.kind, s.sum()))?;
        ensure(m(2)? == rat(2, 1), format!("{}: Σwm² = {}", spec.kind, m(2)?))?;
        ensure(m(4)? == zero, format!("{}: Σwm⁴ = {}", spec.kind, m(4)?))?;
        ensure(m(6)? == zero, format!("{}: Σwm⁶ = {}", spec.kind, m(6)?))?;
        ensure(m(8)? != zero, format!("{}: Σwm⁸ vanishes", spec.kind))?;
        notes.push(format!("{} Σwm⁸={}", spec.kind, m(8)?));
    }
    Ok(format!("Σw=0, Σwm²=2, Σwm⁴=Σwm⁶=0 exactly; {}", notes.join(", ")))
}

fn a2_dm_tables() -> Outcome {
    let alpha = dm_decomposition(&assemble_divergence_stencil(&SchemeSpec::alpha6())).map_err(|e| e.to_string())?;
    let alpha_expected = vec![rat(3, 2), rat(-3, 5), rat(1, 10)];
    ensure(alpha.d == alpha_expected, format!("alpha6 D = {:?}", alpha.d))?;
    let shen = dm_decomposition(&assemble_divergence_stencil(&SchemeSpec::shen6())).map_err(|e| e.to_string())?;
    let shen_expected = vec![
        rat(31895, 131072),
        rat(333251, 153600),
        rat(-6967107, 3276800),
        rat(26711, 30720),
        rat(-69475, 393216),
        rat(223, 10240),
        rat(-13769, 9830400),
        rat(3, 51200),
    ];
    ensure(shen.d == shen_expected, format!("shen6 D = {:?}", shen.d))?;
    ensure(alpha.total() == rat(1, 1) && shen.total() == rat(1, 1), "Σ D_m ≠ 1")?;
    Ok("alpha6 (3/2, -3/5, 1/10) and the eight shen6 D_m match exactly".into())
}

fn a3_nyquist() -> Outcome {
    let shen = fourier_symbol(&assemble_divergence_stencil(&SchemeSpec::shen6()), PI);
    let spec = SchemeSpec::alpha6();
    let alpha = fourier_symbol(&assemble_divergence_stencil(&spec), PI);
    ensure(shen.norm() <= 1e-13, format!("shen6 ℱ(π) = {shen}"))?;
    ensure((alpha.re + 272.0 / 45.0).abs() <= 1e-13 && alpha.im.abs() <= 1e-13, format!("alpha6 ℱ(π) = {alpha}"))?;
    let printed = closed_form_symbol(ClosedForm::AlphaDamping6, PI, spec.alpha, spec.beta);
    ensure((printed + 76.0 / 15.0).abs() <= 1e-12, format!("printed closed form at π = {printed}, expected -2α"))?;
    let gap = printed - alpha.re;
    ensure(gap.abs() > 0.9, "printed closed form unexpectedly agrees with the stencil")?;
    Ok(format!(
        "shen6 |ℱ(π)| = {:.1e}; alpha6 ℱ(π) = {:.15} (= -272/45); printed closed form gives {:.15} (= -2α), off by {:.6}",
        shen.norm(),
        alpha.re,
        printed,
        gap
    ))
}

fn a4_shen_closed_form() -> Outcome {
    let s = assemble_divergence_stencil(&SchemeSpec::shen6());
    let mut worst: f64 = 0.0;
    for k in 1..=128 {
        let theta = PI * k as f64 / 128.0;
        let printed = closed_form_symbol(ClosedForm::Shen6, theta, rat(0, 1), rat(0, 1));
        worst = worst.max((fourier_symbol(&s, theta).re - printed).abs());
        worst = worst.max((symmetric_symbol(&s, theta) - printed).abs());
    }
    ensure(worst <= 1e-10, format!("max deviation {worst:e}"))?;
    Ok(format!("max |stencil - product form| over 128 θ = {worst:.1e}"))
}

fn a5_convergence() -> Outcome {
    let sizes = [32, 64, 128, 256];
    let mut notes = Vec::new();
    for spec in [SchemeSpec::alpha6(), SchemeSpec::shen6(), SchemeSpec::alpha4()] {
        let s = assemble_divergence_stencil(&spec);
        let errors: Vec<f64> = sizes.iter().map(|&n| sine_error(&s, n)).collect();
        // the analytic differences agree with direct sampling where round-off is negligible
        let dx = 2.0 * PI / 32.0;
        let u: Vec<f64> = (0..32).map(|j| (j as f64 * dx).sin()).collect();
        let direct = s
            .apply_periodic(&u, dx)
            .iter()
            .zip(&u)
            .map(|(d, u)| (d + u).abs())
            .fold(0.0, f64::max);
        ensure((direct - errors[0]).abs() <= 1e-6 * errors[0], format!("{}: sampled {direct:e} vs analytic {:e}", spec.kind, errors[0]))?;
        let orders = observed_orders(&errors);
        let ok = match spec.kind {
            SchemeKind::AlphaDamping4 => orders.iter().all(|&p| (3.8..=4.2).contains(&p)),
            _ => orders.iter().all(|&p| p >= 5.8),
        };
        let formatted: Vec<String> = orders.iter().map(|p| format!("{p:.3}")).collect();
        ensure(ok, format!("{} orders {}", spec.kind, formatted.join(", ")))?;
        notes.push(format!("{} [{}]", spec.kind, formatted.join(", ")));
    }
    Ok(format!("orders N=32→256: {}", notes.join("; ")))
}

fn a6_odd_even() -> Outcome {
    let ghost = 8;
    let n = 16;
    let u: Vec<f64> = (0..n + 2 * ghost).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let zero = vec![0.0; u.len()];
    let line = |v| Line::new(v, ghost).unwrap();
    let mut shen_max: f64 = 0.0;
    let mut alpha_max: f64 = 0.0;
    for spec in sixth_order_schemes() {
        let g = face_normal_gradients([line(&u), line(&zero), line(&zero)], &spec, 1.0).map_err(|e| e.to_string())?;
        let div = match spec.kind {
            SchemeKind::Shen6 => divergence_shen(&g.du, 1.0).map_err(|e| e.to_string())?,
            _ => divergence_two_face(&g.du, 1.0),
        };
        ensure(div.len() == n, format!("{}: {} outputs", spec.kind, div.len()))?;
        for (c, d) in div.iter().enumerate() {
            let uj = u[ghost + c];
            match spec.kind {
                SchemeKind::Shen6 => shen_max = shen_max.max(d.abs()),
                _ => alpha_max = alpha_max.max((d + 272.0 / 45.0 * uj).abs()),
            }
        }
    }
    ensure(shen_max <= 1e-13, format!("shen6 divergence {shen_max:e}"))?;
    ensure(alpha_max <= 1e-12, format!("alpha6 deviation from -272/45·u {alpha_max:e}"))?;

    // the same contrast through the full 2D residual
    let gas = GasModel::with_reynolds(500.0);
    let grid = Grid2D::new(16, 32, (0.0, 1.0), (0.0, 1.0), 8).unwrap();
    let eps = 1e-3;
    let state = init::checkerboard(grid, &gas, eps).map_err(|e| e.to_string())?;
    let unit = gas.mu * eps / grid.dy().powi(2);
    for spec in sixth_order_schemes() {
        let disc = Discretization {
            convective: false,
            ..Discretization::navier_stokes(gas, spec, BoundarySet::periodic())
        };
        let res = residual(&state, &disc).map_err(|e| e.to_string())?;
        for j in 0..grid.ny {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let expected = match spec.kind {
                SchemeKind::Shen6 => 0.0,
                _ => -272.0 / 45.0 * sign,
            };
            let got = res[grid.index(3, j)][1] / unit;
            ensure((got - expected).abs() <= 1e-9, format!("{} 2D residual row {j}: {got}", spec.kind))?;
        }
    }
    Ok(format!(
        "shen6 max |div| = {shen_max:.1e}; alpha6 max |div + 272/45·u| = {alpha_max:.1e}; 2D residual agrees"
    ))
}

/// Measured decay rate of mode `k` of a periodic shear layer under the
/// viscous operator alone, against `ν ℱ(θ)/Δy²`.
fn decay_rate(spec: SchemeSpec, ny: usize, k: usize) -> Result<(f64, f64), String> {
    let gas = GasModel::with_reynolds(100.0);
    let grid = Grid2D::new(16, ny, (0.0, 1.0), (0.0, 1.0), 8).unwrap();
    let theta = 2.0 * PI * k as f64 / ny as f64;
    let state = init::shear_wave(grid, &gas, 1e-3, k);
    let disc = Discretization {
        convective: false,
        ..Discretization::navier_stokes(gas, spec, BoundarySet::periodic())
    };
    let symbol = symmetric_symbol(&assemble_divergence_stencil(&spec), theta);
    let nu_over_h2 = gas.mu / grid.dy().powi(2);
    let predicted = nu_over_h2 * symbol;
    // λΔt ≤ 0.01 keeps the RK3 error far below the 1% tolerance; integrate
    // to roughly one e-folding, or a fixed span when no decay is predicted
    let dt = 0.01 / (nu_over_h2 * symbol.abs().max(4.0));
    let steps = if symbol.abs() > 1e-12 { ((1.0 / (predicted.abs() * dt)).ceil() as usize).clamp(100, 5000) } else { 200 };
    let amplitude = |s: &FlowState| {
        let (mut num, mut den) = (0.0, 0.0);
        for j in 0..grid.ny {
            let phase = (theta * (j as f64 + 0.5)).sin();
            let q = s.data()[grid.index(5, j)];
            num += q[1] / q[0] * phase;
            den += phase * phase;
        }
        num / den
    };
    let a0 = amplitude(&state);
    let mut s = state;
    for _ in 0..steps {
        s = rk3_step(&s, dt, |x: &FlowState| residual(x, &disc)).map_err(|e| e.to_string())?;
    }
    let measured = (amplitude(&s) / a0).ln() / (steps as f64 * dt);
    Ok((measured, predicted))
}

fn a7_decay_rates() -> Outcome {
    let ny = 32;
    let mut notes = Vec::new();
    for spec in [SchemeSpec::alpha6(), SchemeSpec::shen6(), SchemeSpec::alpha4()] {
        for (band, k) in [("low", 1), ("mid", ny / 4), ("high", 3 * ny / 8), ("nyquist", ny / 2)] {
            let (measured, predicted) = decay_rate(spec, ny, k)?;
            let physical = GasModel::with_reynolds(100.0).mu * (ny as f64 * PI).powi(2) / 1.0;
            if predicted.abs() > 1e-9 * physical {
                let rel = (measured - predicted).abs() / predicted.abs();
                ensure(rel <= 0.01, format!("{} {band}: measured {measured:e}, predicted {predicted:e}", spec.kind))?;
            } else {
                // zero predicted rate: compare against the physical rate at this wavenumber
                ensure(
                    measured.abs() <= 0.01 * physical,
                    format!("{} {band}: measured {measured:e} for a zero predicted rate", spec.kind),
                )?;
            }
            notes.push(format!("{}/{band} {measured:.4e} vs {predicted:.4e}", spec.kind));
        }
    }
    Ok(notes.join("; "))
}

fn uniform(grid: Grid2D, gas: &GasModel, u: f64, v: f64) -> FlowState {
    FlowState::uniform(grid, conserved_from_primitives(&Primitives::new(1.3, u, v, 0.9), gas))
}

/// Magnitude of a face flux divided by the cell size, for scaling residuals.
fn flux_scale(state: &FlowState, gas: &GasModel) -> f64 {
    let grid = state.grid();
    let h = grid.dx().min(grid.dy());
    state
        .data()
        .iter()
        .map(|q| {
            let w = primitives_from_conserved(q, gas).unwrap();
            let speed = w.u.abs() + w.v.abs() + sound_speed(&w, gas);
            (q.iter().fold(w.p, |m, x| m.max(x.abs()))) * speed / h
        })
        .fold(0.0, f64::max)
}

fn a10_freestream_conservation() -> Outcome {
    use BoundaryKind::*;
    let gas = GasModel::with_reynolds(200.0);
    let cases = [
        ("periodic", BoundarySet::periodic(), 0.3, -0.2),
        ("periodic-x/symmetry-y", BoundarySet::new(Periodic, Periodic, Symmetry, Symmetry).unwrap(), 0.3, 0.0),
        ("symmetry-x/periodic-y", BoundarySet::new(Symmetry, Symmetry, Periodic, Periodic).unwrap(), 0.0, 0.25),
        ("shock-tube walls", BoundarySet::shock_tube(), 0.0, 0.0),
        ("closed walls", BoundarySet::new(NoSlipWall, NoSlipWall, NoSlipWall, NoSlipWall).unwrap(), 0.0, 0.0),
    ];
    let mut worst_free: f64 = 0.0;
    for spec in [SchemeSpec::alpha6(), SchemeSpec::shen6(), SchemeSpec::alpha4()] {
        for (name, bc, u, v) in cases {
            let grid = Grid2D::new(16, 20, (0.0, 1.0), (0.0, 1.25), 8).unwrap();
            let state = uniform(grid, &gas, u, v);
            let disc = Discretization::navier_stokes(gas, spec, bc);
            let res = residual(&state, &disc).map_err(|e| e.to_string())?;
            let scaled = res.iter().flatten().fold(0.0f64, |m, r| m.max(r.abs())) / flux_scale(&state, &gas);
            ensure(scaled <= 1e-12, format!("{} / {name}: scaled residual {scaled:e}", spec.kind))?;
            worst_free = worst_free.max(scaled);
        }
    }

    // discrete conservation on a periodic box with rough data
    let mut worst_sum: f64 = 0.0;
    for spec in [SchemeSpec::alpha6(), SchemeSpec::shen6(), SchemeSpec::alpha4()] {
        let grid = Grid2D::new(24, 20, (0.0, 1.0), (0.0, 0.8), 8).unwrap();
        let state = FlowState::from_fn(grid, |x, y| {
            let rough = (1e3 * x * y + 17.0 * x).sin();
            let w = Primitives::new(
                1.0 + 0.3 * (2.0 * PI * x).sin() + 0.05 * rough,
                0.4 * (2.0 * PI * y / 0.8).cos() + 0.05 * rough,
                -0.2 * (2.0 * PI * x).sin(),
                1.0 + 0.2 * (2.0 * PI * (x + y / 0.8)).cos(),
            );
            conserved_from_primitives(&w, &gas)
        });
        let disc = Discretization::navier_stokes(gas, spec, BoundarySet::periodic());
        let res = residual(&state, &disc).map_err(|e| e.to_string())?;
        let cells = grid.cells() as f64;
        let scale = flux_scale(&state, &gas) * cells;
        for k in 0..4 {
            let sum: f64 = res.iter().map(|r| r[k]).sum();
            let scaled = sum.abs() / scale;
            ensure(scaled <= 1e-11, format!("{} component {k}: scaled sum {scaled:e}", spec.kind))?;
            worst_sum = worst_sum.max(scaled);
        }
    }
    Ok(format!(
        "uniform-flow residual ≤ {worst_free:.1e} scaled over 3 schemes × 5 BC sets; periodic residual sums ≤ {worst_sum:.1e} scaled"
    ))
}

struct ShockTubeRuns {
    alpha6: RunReport,
    alpha6_secs: f64,
    shen6: RunReport,
    shen6_secs: f64,
    gas: GasModel,
}

fn shock_tube_run(spec: SchemeSpec, t_end: f64, gas: &GasModel) -> (RunReport, f64) {
    let start = Instant::now();
    let state = init::viscous_shock_tube(250, 125, spec.kind.radius().max(3), gas).expect("valid grid");
    let disc = Discretization::navier_stokes(*gas, spec, BoundarySet::shock_tube());
    let mut opts = RunOptions::new(t_end);
    opts.cfl = 0.2;
    let report = run(state, &disc, &opts).expect("valid setup");
    (report, start.elapsed().as_secs_f64())
}

/// x of the first cell, scanning from the left wall, whose density exceeds
/// `factor` times the density at the left wall.
fn front_position(state: &FlowState, j: usize, factor: f64) -> Option<f64> {
    let grid = state.grid();
    let base = state.get(0, j as isize)[0];
    (0..grid.nx).find(|&i| state.get(i as isize, j as isize)[0] > factor * base).map(|i| grid.x_center(i as isize))
}

fn a8_shock_tube(runs: &ShockTubeRuns) -> Outcome {
    let report = &runs.alpha6;
    let gas = &runs.gas;
    if let Some(f) = &report.failure {
        return Err(format!("alpha6 run halted at t = {} (step {}): {}", f.time, f.step, f.error));
    }
    ensure(report.final_state.time == 1.0, format!("ended at t = {}", report.final_state.time))?;
    let m0 = report.diagnostics[0].total_mass;
    let drift = report
        .diagnostics
        .iter()
        .map(|d| (d.total_mass - m0).abs() / m0)
        .fold(0.0, f64::max);
    ensure(drift <= 1e-6, format!("relative mass drift {drift:e}"))?;
    ensure(
        report.diagnostics.iter().all(|d| d.min_density > 0.0 && d.min_pressure > 0.0),
        "non-positive density or pressure recorded",
    )?;
    let bc = BoundarySet::shock_tube();
    let mut wall: f64 = 0.0;
    for s in report.snapshots.iter() {
        wall = wall.max(wall_face_velocity(s, gas, &bc, &SchemeSpec::alpha6()).map_err(|e| e.to_string())?);
    }
    ensure(wall <= 1e-10, format!("wall-face velocity {wall:e}"))?;

    // structure at t = 1: the shock reflected from x = 1 has travelled back
    // into the domain, and along the bottom wall its foot runs ahead of it
    // (bifurcated λ-shock over the separated boundary layer), so the flow
    // is genuinely two-dimensional.
    let fin = &report.final_state;
    let top = fin.grid().ny - 1;
    let x_axis = front_position(fin, top, 1.3).ok_or("no reflected shock on the symmetry line")?;
    let x_wall = front_position(fin, 0, 1.3).ok_or("no reflected shock at the wall")?;
    let (mut ahead, mut behind) = (Vec::new(), Vec::new());
    for i in 0..fin.grid().nx as isize {
        let rho = fin.get(i, top as isize)[0];
        if fin.grid().x_center(i) < x_axis { ahead.push(rho) } else { behind.push(rho) }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let compression = mean(&behind) / mean(&ahead);
    ensure((0.5..0.95).contains(&x_axis), format!("reflected shock at x = {x_axis} on the symmetry line"))?;
    ensure(compression > 1.5, format!("mean density behind / ahead of the front = {compression}"))?;
    ensure(x_wall < x_axis - 0.02, format!("no λ-foot: wall front {x_wall}, axis front {x_axis}"))?;
    Ok(format!(
        "t = 1 in {} steps ({:.0} s), no positivity failure, mass drift {drift:.1e}, wall-face |u| ≤ {wall:.1e}, \
         reflected shock at x = {x_axis:.3} (compression {compression:.2}) with wall foot at x = {x_wall:.3}",
        report.steps, runs.alpha6_secs
    ))
}

fn a9_sawtooth(runs: &ShockTubeRuns) -> Outcome {
    let at_half = |r: &RunReport| r.snapshots.iter().find(|s| s.time == 0.5).map(sawtooth_metric);
    let alpha = at_half(&runs.alpha6).ok_or("alpha6 run has no t = 0.5 snapshot")?;
    if let Some(f) = &runs.shen6.failure {
        if f.time < 0.5 {
            return Ok(format!(
                "shen6 halted at t = {:.4} (step {}): {} — accepted as the demonstrated instability; alpha6 sawtooth {alpha:.4e}",
                f.time, f.step, f.error
            ));
        }
    }
    let shen = at_half(&runs.shen6).ok_or("shen6 run has no t = 0.5 snapshot")?;
    ensure(shen > alpha, format!("sawtooth at t = 0.5: shen6 {shen:.4e} ≤ alpha6 {alpha:.4e}"))?;
    Ok(format!(
        "sawtooth at t = 0.5: shen6 {shen:.4e} > alpha6 {alpha:.4e} (ratio {:.2}; shen6 run {:.0} s)",
        shen / alpha,
        runs.shen6_secs
    ))
}

fn report(id: &str, title: &str, f: impl FnOnce() -> Outcome, failures: &mut Vec<String>) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("{id} PASS  {title} [{secs:.1} s]: {detail}"),
        Err(detail) => {
            println!("{id} FAIL  {title} [{secs:.1} s]: {detail}");
            failures.push(id.to_string());
        }
    }
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful for this suite
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut failures = Vec::new();
    report("A1", "exact moment conditions", a1_moments, &mut failures);
    report("A2", "D_m tables", a2_dm_tables, &mut failures);
    report("A3", "Nyquist damping", a3_nyquist, &mut failures);
    report("A4", "shen6 closed-form cross-check", a4_shen_closed_form, &mut failures);
    report("A5", "spatial convergence", a5_convergence, &mut failures);
    report("A6", "odd-even residual oracle", a6_odd_even, &mut failures);
    report("A7", "semi-discrete decay rates", a7_decay_rates, &mut failures);
    report("A10", "freestream and conservation", a10_freestream_conservation, &mut failures);

    let gas = GasModel::with_reynolds(500.0);
    let (alpha6, alpha6_secs) = shock_tube_run(SchemeSpec::alpha6(), 1.0, &gas);
    let (shen6, shen6_secs) = shock_tube_run(SchemeSpec::shen6(), 0.5, &gas);
    let runs = ShockTubeRuns { alpha6, alpha6_secs, shen6, shen6_secs, gas };
    report("A8", "shock-tube integrity (Re 500, 250x125, alpha6)", || a8_shock_tube(&runs), &mut failures);
    report("A9", "saw-tooth contrast at t = 0.5", || a9_sawtooth(&runs), &mut failures);

    if failures.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: FAILED {}", failures.join(", "));
        std::process::exit(1);
    }
}
