//! Flat `key = value` run configuration.
//!
//! ```text
//! # viscous shock tube
//! nx = 250
//! ny = 125
//! Re = 500
//! t_end = 1.0
//! viscous = alpha6
//! ```

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::solver::{init, BoundarySet, Discretization, FlowState, Grid2D, RunOptions, DEFAULT_SNAPSHOT_TIMES};
use crate::stencil::{SchemeKind, SchemeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Viscous shock tube on `[0, 1] × [0, 1/2]` with walls and a symmetry top.
    ShockTube,
    /// Periodic sinusoidal shear layer `u = A sin(2πky/L_y)`.
    Manufactured,
    /// Periodic odd-even velocity `u = A(-1)^j`.
    Checkerboard,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::ShockTube => "shock_tube",
            Case::Manufactured => "manufactured",
            Case::Checkerboard => "checkerboard",
        })
    }
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "shock_tube" => Ok(Case::ShockTube),
            "manufactured" => Ok(Case::Manufactured),
            "checkerboard" => Ok(Case::Checkerboard),
            _ => Err(format!("unknown case `{s}` (expected shock_tube, manufactured or checkerboard)")),
        }
    }
}

/// Which artifacts `run` writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputFormats {
    pub snapshots: bool,
    pub diagnostics: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub nx: usize,
    pub ny: usize,
    pub x_bounds: (f64, f64),
    pub y_bounds: (f64, f64),
    pub gas: GasModel,
    pub viscous: SchemeKind,
    pub convective: bool,
    pub cfl: f64,
    pub t_end: f64,
    pub snapshot_times: Vec<f64>,
    pub output_dir: PathBuf,
    pub formats: OutputFormats,
    pub case: Case,
    /// Perturbation amplitude of the periodic cases.
    pub amplitude: f64,
    /// Wavenumber of the manufactured case.
    pub wavenumber: usize,
}

const KEYS: &[&str] = &[
    "nx",
    "ny",
    "Re",
    "mu",
    "t_end",
    "gamma",
    "Pr",
    "R",
    "cfl",
    "viscous",
    "inviscid",
    "convective",
    "snapshot_times",
    "output_dir",
    "formats",
    "case",
    "bounds",
    "amplitude",
    "wavenumber",
];

fn config_error(line: Option<usize>, key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

/// Raw entries with their 1-based line numbers.
struct Entries(HashMap<String, (usize, String)>);

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(config_error(Some(line), content, "expected `key = value`"));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(config_error(Some(line), key, "unknown key"));
            }
            if value.is_empty() {
                return Err(config_error(Some(line), key, "missing value"));
            }
            if let Some((first, _)) = map.insert(key.to_string(), (line, value.to_string())) {
                return Err(config_error(Some(line), key, format!("duplicate key (first set on line {first})")));
            }
        }
        Ok(Entries(map))
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.0.get(key).map(|(l, _)| *l)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|e| config_error(Some(*line), key, format!("invalid value `{v}`: {e}"))),
        }
    }

    fn require<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        self.get(key)?.ok_or_else(|| config_error(None, key, "required key is missing"))
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some((line, v)) = self.0.get(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| config_error(Some(*line), key, format!("invalid number `{}`: {e}", s.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}

/// Parse and validate a configuration.
///
/// Every malformed input produces [`Error::Config`] naming the key and,
/// where there is one, the line.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let e = Entries::parse(text)?;
    let check = |ok: bool, key: &str, msg: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(config_error(e.line(key), key, msg))
        }
    };

    let nx: usize = e.require("nx")?;
    let ny: usize = e.require("ny")?;
    let t_end: f64 = e.require("t_end")?;
    check(t_end.is_finite() && t_end >= 0.0, "t_end", "must be a finite non-negative time")?;

    let mu = match (e.get::<f64>("Re")?, e.get::<f64>("mu")?) {
        (Some(re), None) => {
            check(re.is_finite() && re > 0.0, "Re", "must be positive")?;
            1.0 / re
        }
        (None, Some(mu)) => {
            check(mu.is_finite() && mu >= 0.0, "mu", "must be non-negative")?;
            mu
        }
        (Some(_), Some(_)) => return Err(config_error(e.line("mu"), "mu", "give exactly one of Re and mu")),
        (None, None) => return Err(config_error(None, "Re", "one of Re or mu is required")),
    };
    let gamma = e.get("gamma")?.unwrap_or(1.4);
    let prandtl = e.get("Pr")?.unwrap_or(0.73);
    let gas_constant = e.get("R")?.unwrap_or(1.0);
    check(gamma > 1.0, "gamma", "must exceed 1")?;
    check(prandtl > 0.0, "Pr", "must be positive")?;
    check(gas_constant > 0.0, "R", "must be positive")?;
    let gas = GasModel::new(gamma, prandtl, gas_constant, mu)?;

    let viscous: SchemeKind = e.get("viscous")?.unwrap_or(SchemeKind::AlphaDamping6);
    if let Some(inv) = e.get::<String>("inviscid")? {
        check(inv == "mp5-cllf", "inviscid", "only `mp5-cllf` is available")?;
    }
    let convective = e.get("convective")?.unwrap_or(true);
    let cfl: f64 = e.get("cfl")?.unwrap_or(0.2);
    check(cfl > 0.0 && cfl <= 1.0, "cfl", "must be in (0, 1]")?;

    let snapshot_times = match e.list("snapshot_times")? {
        Some(times) => {
            check(times.iter().all(|t| t.is_finite() && *t >= 0.0), "snapshot_times", "times must be non-negative")?;
            check(times.windows(2).all(|w| w[0] < w[1]), "snapshot_times", "times must be strictly increasing")?;
            check(times.iter().all(|&t| t <= t_end), "snapshot_times", "times must not exceed t_end")?;
            times
        }
        None => DEFAULT_SNAPSHOT_TIMES.iter().copied().filter(|&t| t <= t_end).collect(),
    };

    let case: Case = e.get("case")?.unwrap_or(Case::ShockTube);
    let (x_bounds, y_bounds) = match e.list("bounds")? {
        Some(b) => {
            check(b.len() == 4, "bounds", "expected x0, x1, y0, y1")?;
            check(b[1] > b[0] && b[3] > b[2], "bounds", "empty domain")?;
            check(
                case != Case::ShockTube || b == [0.0, 1.0, 0.0, 0.5],
                "bounds",
                "the shock tube is defined on 0, 1, 0, 0.5",
            )?;
            ((b[0], b[1]), (b[2], b[3]))
        }
        None if case == Case::ShockTube => ((0.0, 1.0), (0.0, 0.5)),
        None => ((0.0, 1.0), (0.0, 1.0)),
    };

    let mut formats = OutputFormats { snapshots: true, diagnostics: true };
    if let Some((line, v)) = e.0.get("formats") {
        formats = OutputFormats { snapshots: false, diagnostics: false };
        for f in v.split(',').map(str::trim) {
            match f {
                "snapshots" => formats.snapshots = true,
                "diagnostics" => formats.diagnostics = true,
                other => {
                    return Err(config_error(
                        Some(*line),
                        "formats",
                        format!("unknown format `{other}` (expected snapshots, diagnostics)"),
                    ))
                }
            }
        }
    }

    let amplitude: f64 = e.get("amplitude")?.unwrap_or(0.01);
    check(amplitude.is_finite(), "amplitude", "must be finite")?;
    let wavenumber = e.get("wavenumber")?.unwrap_or(1);

    let config = RunConfig {
        nx,
        ny,
        x_bounds,
        y_bounds,
        gas,
        viscous,
        convective,
        cfl,
        t_end,
        snapshot_times,
        output_dir: e.get::<String>("output_dir")?.map_or_else(|| PathBuf::from("output"), PathBuf::from),
        formats,
        case,
        amplitude,
        wavenumber,
    };
    let g = config.ghost();
    check(
        nx >= 2 * g,
        "nx",
        &format!("{} needs nx >= {} ({g} ghost layers per side)", viscous, 2 * g),
    )?;
    check(
        ny >= 2 * g,
        "ny",
        &format!("{} needs ny >= {} ({g} ghost layers per side)", viscous, 2 * g),
    )?;
    if case == Case::Checkerboard {
        check(ny % 2 == 0, "ny", "the checkerboard case needs an even ny")?;
    }
    Ok(config)
}

impl RunConfig {
    /// Ghost width: the convective stencil's 3 or the viscous radius.
    pub fn ghost(&self) -> usize {
        self.viscous.radius().max(3)
    }

    pub fn grid(&self) -> Result<Grid2D> {
        Grid2D::new(self.nx, self.ny, self.x_bounds, self.y_bounds, self.ghost())
    }

    pub fn boundaries(&self) -> BoundarySet {
        match self.case {
            Case::ShockTube => BoundarySet::shock_tube(),
            Case::Manufactured | Case::Checkerboard => BoundarySet::periodic(),
        }
    }

    pub fn scheme(&self) -> SchemeSpec {
        SchemeSpec::default_for(self.viscous)
    }

    /// Replace the viscous scheme, re-checking the ghost-width rule.
    pub fn with_viscous(mut self, viscous: SchemeKind) -> Result<Self> {
        self.viscous = viscous;
        let g = self.ghost();
        for (n, key) in [(self.nx, "nx"), (self.ny, "ny")] {
            if n < 2 * g {
                return Err(config_error(None, key, format!("{viscous} needs {key} >= {}", 2 * g)));
            }
        }
        Ok(self)
    }

    pub fn discretization(&self) -> Discretization {
        Discretization {
            convective: self.convective,
            ..Discretization::navier_stokes(self.gas, self.scheme(), self.boundaries())
        }
    }

    pub fn initial_state(&self) -> Result<FlowState> {
        match self.case {
            Case::ShockTube => init::viscous_shock_tube(self.nx, self.ny, self.ghost(), &self.gas),
            Case::Manufactured => Ok(init::shear_wave(self.grid()?, &self.gas, self.amplitude, self.wavenumber)),
            Case::Checkerboard => init::checkerboard(self.grid()?, &self.gas, self.amplitude),
        }
    }

    pub fn run_options(&self) -> RunOptions {
        RunOptions {
            cfl: self.cfl,
            t_end: self.t_end,
            snapshot_times: self.snapshot_times.clone(),
            diagnostics_every: 1,
        }
    }
}
