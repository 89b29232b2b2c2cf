//! Ghost-cell boundary conditions.

use std::fmt;
use std::str::FromStr;

use super::{Axis, Grid2D};
use crate::error::{Error, Result};
use crate::gas::{Conserved, Primitives};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    /// No-slip adiabatic wall: density, pressure and temperature are
    /// mirrored evenly, both velocity components oddly.
    NoSlipWall,
    /// Only the normal velocity is mirrored oddly.
    Symmetry,
    Periodic,
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryKind::NoSlipWall => "wall",
            BoundaryKind::Symmetry => "symmetry",
            BoundaryKind::Periodic => "periodic",
        })
    }
}

impl FromStr for BoundaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "wall" => Ok(BoundaryKind::NoSlipWall),
            "symmetry" => Ok(BoundaryKind::Symmetry),
            "periodic" => Ok(BoundaryKind::Periodic),
            other => Err(Error::usage(format!(
                "unknown boundary `{other}` (expected wall, symmetry or periodic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    West,
    East,
    South,
    North,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundarySet {
    pub west: BoundaryKind,
    pub east: BoundaryKind,
    pub south: BoundaryKind,
    pub north: BoundaryKind,
}

impl BoundarySet {
    pub fn new(west: BoundaryKind, east: BoundaryKind, south: BoundaryKind, north: BoundaryKind) -> Result<Self> {
        let set = BoundarySet { west, east, south, north };
        for (a, b, axis) in [(west, east, "x"), (south, north, "y")] {
            if (a == BoundaryKind::Periodic) != (b == BoundaryKind::Periodic) {
                return Err(Error::usage(format!("periodicity in {axis} must apply to both sides")));
            }
        }
        Ok(set)
    }

    /// Walls at west, east and south, symmetry at the top.
    pub fn shock_tube() -> Self {
        BoundarySet {
            west: BoundaryKind::NoSlipWall,
            east: BoundaryKind::NoSlipWall,
            south: BoundaryKind::NoSlipWall,
            north: BoundaryKind::Symmetry,
        }
    }

    pub fn periodic() -> Self {
        BoundarySet {
            west: BoundaryKind::Periodic,
            east: BoundaryKind::Periodic,
            south: BoundaryKind::Periodic,
            north: BoundaryKind::Periodic,
        }
    }

    pub fn side(&self, side: Side) -> BoundaryKind {
        match side {
            Side::West => self.west,
            Side::East => self.east,
            Side::South => self.south,
            Side::North => self.north,
        }
    }
}

/// Mirror image of a cell state across a boundary with the given normal.
pub trait Reflect: Copy {
    fn reflect(&self, normal: Axis, kind: BoundaryKind) -> Self;
}

fn flip_velocity(u: f64, v: f64, normal: Axis, kind: BoundaryKind) -> (f64, f64) {
    match (kind, normal) {
        (BoundaryKind::Periodic, _) => (u, v),
        (BoundaryKind::NoSlipWall, _) => (-u, -v),
        (BoundaryKind::Symmetry, Axis::X) => (-u, v),
        (BoundaryKind::Symmetry, Axis::Y) => (u, -v),
    }
}

impl Reflect for Conserved {
    fn reflect(&self, normal: Axis, kind: BoundaryKind) -> Self {
        let (mu, mv) = flip_velocity(self[1], self[2], normal, kind);
        [self[0], mu, mv, self[3]]
    }
}

impl Reflect for Primitives {
    fn reflect(&self, normal: Axis, kind: BoundaryKind) -> Self {
        let (u, v) = flip_velocity(self.u, self.v, normal, kind);
        Primitives { u, v, ..*self }
    }
}

/// Interior values padded with `grid.ghost` layers per side.
///
/// The y-halo of the interior columns is filled first, then the x-halo of
/// every row, so corner cells see both reflections.
pub fn pad_field<T: Reflect>(grid: &Grid2D, interior: &[T], bc: &BoundarySet) -> Result<Vec<T>> {
    let (nx, ny, g) = (grid.nx, grid.ny, grid.ghost);
    if interior.len() != grid.cells() {
        return Err(Error::usage(format!("{} values for {} cells", interior.len(), grid.cells())));
    }
    if g > nx || g > ny {
        return Err(Error::usage(format!("{g} ghost layers need at least {g} cells per direction, grid is {nx} x {ny}")));
    }
    let sx = grid.padded_nx();
    let mut out = vec![interior[0]; sx * grid.padded_ny()];
    for j in 0..ny {
        let row = (j + g) * sx + g;
        out[row..row + nx].copy_from_slice(&interior[j * nx..(j + 1) * nx]);
    }
    let at = |i: isize, j: isize| grid.padded_index(i, j);
    let (nxi, nyi) = (nx as isize, ny as isize);
    for k in 0..g as isize {
        for i in 0..nxi {
            let (src_s, src_n) = match bc.south {
                BoundaryKind::Periodic => (nyi - 1 - k, k),
                _ => (k, nyi - 1 - k),
            };
            out[at(i, -1 - k)] = out[at(i, src_s)].reflect(Axis::Y, bc.south);
            out[at(i, nyi + k)] = out[at(i, src_n)].reflect(Axis::Y, bc.north);
        }
    }
    for j in -(g as isize)..nyi + g as isize {
        for k in 0..g as isize {
            let (src_w, src_e) = match bc.west {
                BoundaryKind::Periodic => (nxi - 1 - k, k),
                _ => (k, nxi - 1 - k),
            };
            out[at(-1 - k, j)] = out[at(src_w, j)].reflect(Axis::X, bc.west);
            out[at(nxi + k, j)] = out[at(src_e, j)].reflect(Axis::X, bc.east);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(nx: usize, ny: usize, g: usize) -> Grid2D {
        Grid2D::new(nx, ny, (0.0, 1.0), (0.0, 1.0), g).unwrap()
    }

    fn numbered(grid: &Grid2D) -> Vec<Conserved> {
        (0..grid.cells()).map(|k| [1.0 + k as f64, 10.0 + k as f64, 100.0 + k as f64, 5.0]).collect()
    }

    #[test]
    fn wall_mirrors_both_momenta() {
        let g = grid(4, 4, 3);
        let data = numbered(&g);
        let p = pad_field(&g, &data, &BoundarySet::shock_tube()).unwrap();
        // west ghost -1-k mirrors interior k
        for k in 0..3 {
            let ghost = p[g.padded_index(-1 - k, 1)];
            let src = data[g.index(k as usize, 1)];
            assert_eq!(ghost, [src[0], -src[1], -src[2], src[3]]);
        }
        // north is symmetry: only ρv flips
        let ghost = p[g.padded_index(2, 4)];
        let src = data[g.index(2, 3)];
        assert_eq!(ghost, [src[0], src[1], -src[2], src[3]]);
    }

    #[test]
    fn corners_see_both_reflections() {
        let g = grid(4, 4, 3);
        let data = numbered(&g);
        let p = pad_field(&g, &data, &BoundarySet::shock_tube()).unwrap();
        // (-1, 4): x-wall then y-symmetry of cell (0, 3)
        let src = data[g.index(0, 3)];
        assert_eq!(p[g.padded_index(-1, 4)], [src[0], -src[1], src[2], src[3]]);
    }

    #[test]
    fn periodic_wraps() {
        let g = grid(4, 5, 3);
        let data = numbered(&g);
        let p = pad_field(&g, &data, &BoundarySet::periodic()).unwrap();
        for (i, j) in [(-1, 0), (-3, 2), (4, 4), (6, -2), (-2, 7)] {
            let wrap = |a: isize, n: isize| a.rem_euclid(n) as usize;
            assert_eq!(p[g.padded_index(i, j)], data[g.index(wrap(i, 4), wrap(j, 5))]);
        }
    }

    #[test]
    fn too_few_cells_for_mirror() {
        let g = grid(4, 2, 3);
        let data = numbered(&g);
        assert!(pad_field(&g, &data, &BoundarySet::shock_tube()).is_err());
    }

    #[test]
    fn mismatched_periodicity_rejected() {
        use BoundaryKind::*;
        assert!(BoundarySet::new(Periodic, NoSlipWall, Symmetry, Symmetry).is_err());
        assert!(BoundarySet::new(Periodic, Periodic, NoSlipWall, Symmetry).is_ok());
        assert_eq!("wall".parse::<BoundaryKind>().unwrap(), NoSlipWall);
        assert!("slip".parse::<BoundaryKind>().is_err());
    }
}
