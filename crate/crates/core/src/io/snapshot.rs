//! Snapshot CSV:
//!
//! ```text
//! # nx=250 ny=125 time=5.0000000000000000e-1 gamma=1.4000000000000000e0
//! x,y,rho,u,v,p
//! 2.0000000000000000e-3,2.0000000000000000e-3,1.2000000000000000e2,...
//! ```
//!
//! One row per cell, `i` (x) outer and `j` (y) inner, every value with 17
//! significant digits so that reading is the exact inverse of writing.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gas::{conserved_from_primitives, GasModel, Primitives};
use crate::solver::{FlowState, Grid2D};

pub const COLUMNS: &str = "x,y,rho,u,v,p";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotRow {
    pub x: f64,
    pub y: f64,
    pub w: Primitives,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub nx: usize,
    pub ny: usize,
    pub time: f64,
    pub gamma: f64,
    /// `rows[i * ny + j]` is cell `(i, j)`.
    pub rows: Vec<SnapshotRow>,
}

pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl Snapshot {
    /// Primitive variables of every cell. No positivity check is made, so
    /// the state a failed run stopped at can still be recorded.
    pub fn from_state(state: &FlowState, gas: &GasModel) -> Self {
        let grid = state.grid();
        let mut rows = Vec::with_capacity(grid.cells());
        for i in 0..grid.nx as isize {
            for j in 0..grid.ny as isize {
                let q = state.get(i, j);
                let (u, v) = (q[1] / q[0], q[2] / q[0]);
                let p = (gas.gamma - 1.0) * (q[3] - 0.5 * q[0] * (u * u + v * v));
                rows.push(SnapshotRow {
                    x: grid.x_center(i),
                    y: grid.y_center(j),
                    w: Primitives::new(q[0], u, v, p),
                });
            }
        }
        Snapshot {
            nx: grid.nx,
            ny: grid.ny,
            time: state.time,
            gamma: gas.gamma,
            rows,
        }
    }

    /// Conserved state on `grid`, whose cell counts must match.
    pub fn to_state(&self, grid: Grid2D, gas: &GasModel) -> Result<FlowState> {
        if (grid.nx, grid.ny) != (self.nx, self.ny) {
            return Err(Error::usage(format!(
                "snapshot is {} x {}, grid is {} x {}",
                self.nx, self.ny, grid.nx, grid.ny
            )));
        }
        let mut state = FlowState::uniform(grid, [0.0; 4]);
        for i in 0..self.nx {
            for j in 0..self.ny {
                state.set(i, j, conserved_from_primitives(&self.rows[i * self.ny + j].w, gas));
            }
        }
        state.time = self.time;
        Ok(state)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * 150);
        let _ = writeln!(
            out,
            "# nx={} ny={} time={} gamma={}",
            self.nx,
            self.ny,
            fmt_f64(self.time),
            fmt_f64(self.gamma)
        );
        out.push_str(COLUMNS);
        out.push('\n');
        for r in &self.rows {
            let vals = [r.x, r.y, r.w.rho, r.w.u, r.w.v, r.w.p].map(fmt_f64);
            out.push_str(&vals.join(","));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Snapshot::to_csv`]; `path` only labels errors.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
        let fields = header
            .strip_prefix('#')
            .ok_or_else(|| err(1, "header must start with `#`".into()))?;
        let (mut nx, mut ny, mut time, mut gamma) = (None, None, None, None);
        for field in fields.split_whitespace() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| err(1, format!("malformed header field `{field}`")))?;
            let bad = |_| err(1, format!("invalid value for `{k}`: `{v}`"));
            match k {
                "nx" => nx = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "ny" => ny = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "time" => time = Some(v.parse::<f64>().map_err(|e| bad(e.to_string()))?),
                "gamma" => gamma = Some(v.parse::<f64>().map_err(|e| bad(e.to_string()))?),
                _ => return Err(err(1, format!("unknown header field `{k}`"))),
            }
        }
        let missing = |name: &str| err(1, format!("header lacks `{name}`"));
        let (nx, ny) = (nx.ok_or_else(|| missing("nx"))?, ny.ok_or_else(|| missing("ny"))?);
        let time = time.ok_or_else(|| missing("time"))?;
        let gamma = gamma.ok_or_else(|| missing("gamma"))?;

        match lines.next() {
            Some((_, c)) if c.trim() == COLUMNS => {}
            Some((n, c)) => return Err(err(n, format!("expected column line `{COLUMNS}`, found `{c}`"))),
            None => return Err(err(2, "missing column line".into())),
        }
        let expected = nx
            .checked_mul(ny)
            .ok_or_else(|| err(1, "nx · ny overflows".into()))?;
        let mut rows = Vec::with_capacity(expected.min(1 << 24));
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let vals: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| err(n, format!("invalid number: {e}")))?;
            let [x, y, rho, u, v, p] = vals[..] else {
                return Err(err(n, format!("expected 6 values, found {}", vals.len())));
            };
            if rows.len() == expected {
                return Err(err(n, format!("more than nx·ny = {expected} rows")));
            }
            rows.push(SnapshotRow { x, y, w: Primitives::new(rho, u, v, p) });
        }
        if rows.len() != expected {
            let last = text.lines().count();
            return Err(err(last, format!("found {} rows, header declares nx·ny = {expected}", rows.len())));
        }
        Ok(Snapshot { nx, ny, time, gamma, rows })
    }
}

pub fn write_snapshot(snapshot: &Snapshot, path: &Path) -> Result<()> {
    fs::write(path, snapshot.to_csv()).map_err(|e| Error::io(path, e))
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Snapshot::parse(&text, path)
}
