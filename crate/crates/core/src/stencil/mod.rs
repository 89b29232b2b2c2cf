//! Exact 1D difference operators on a uniform line.
//!
//! A [`Stencil1D`] maps cell offsets to rational weights; its value at cell
//! `j` is `Σ w_m u_{j+m} / Δx^p`. Every scheme in the crate is defined by
//! composing such operators, and the floating-point kernels in [`ops`] are
//! instantiated from the same coefficients.

mod assemble;
pub mod ops;
mod scheme;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub use assemble::{alpha_damping_parts, assemble_divergence_stencil, AlphaDampingParts};
pub use scheme::{SchemeKind, SchemeSpec};

/// Exact rational coefficient.
pub type Rational = Ratio<i128>;

/// Shorthand for building a [`Rational`].
pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

pub fn rational_to_f64(r: Rational) -> f64 {
    // numerator and denominator are far below 2^53 for every coefficient in
    // this crate, so the division is correctly rounded
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// A finite-support linear operator on a uniform line.
#[derive(Clone, PartialEq, Eq)]
pub struct Stencil1D {
    weights: BTreeMap<i32, Rational>,
    dx_power: u32,
}

impl Stencil1D {
    pub fn new(weights: impl IntoIterator<Item = (i32, Rational)>, dx_power: u32) -> Self {
        let mut s = Stencil1D {
            weights: BTreeMap::new(),
            dx_power,
        };
        for (m, w) in weights {
            s.accumulate(m, w);
        }
        s
    }

    /// The identity operator `u ↦ u_{j+offset}`.
    pub fn delta(offset: i32) -> Self {
        Self::new([(offset, Rational::from_integer(1))], 0)
    }

    pub fn zero(dx_power: u32) -> Self {
        Self::new([], dx_power)
    }

    fn accumulate(&mut self, m: i32, w: Rational) {
        let entry = self.weights.entry(m).or_insert_with(Rational::zero);
        *entry += w;
        if entry.is_zero() {
            self.weights.remove(&m);
        }
    }

    pub fn dx_power(&self) -> u32 {
        self.dx_power
    }

    /// Weight at `offset`, zero outside the support.
    pub fn weight(&self, offset: i32) -> Rational {
        self.weights.get(&offset).copied().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> impl Iterator<Item = (i32, Rational)> + '_ {
        self.weights.iter().map(|(&m, &w)| (m, w))
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Smallest and largest offsets with a nonzero weight.
    pub fn support(&self) -> Option<(i32, i32)> {
        let lo = *self.weights.keys().next()?;
        let hi = *self.weights.keys().next_back()?;
        Some((lo, hi))
    }

    /// Largest `|m|` with a nonzero weight (0 for the empty stencil).
    pub fn radius(&self) -> u32 {
        self.weights.keys().map(|m| m.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn sum(&self) -> Rational {
        self.weights.values().copied().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.weights.iter().all(|(&m, &w)| self.weight(-m) == w)
    }

    /// The same operator evaluated at cell `j + k` instead of `j`.
    pub fn shifted(&self, k: i32) -> Self {
        Stencil1D {
            weights: self.weights.iter().map(|(&m, &w)| (m + k, w)).collect(),
            dx_power: self.dx_power,
        }
    }

    pub fn scaled(&self, factor: Rational) -> Self {
        Self::new(self.weights.iter().map(|(&m, &w)| (m, w * factor)), self.dx_power)
    }

    /// Same weights with a different Δx power.
    pub fn with_dx_power(mut self, dx_power: u32) -> Self {
        self.dx_power = dx_power;
        self
    }

    pub fn weights_f64(&self) -> Vec<(i32, f64)> {
        self.weights().map(|(m, w)| (m, rational_to_f64(w))).collect()
    }

    /// Evaluate at `values[center]`. Panics if the support leaves the slice.
    pub fn apply(&self, values: &[f64], center: usize, dx: f64) -> f64 {
        let acc: f64 = self
            .weights()
            .map(|(m, w)| {
                let idx = center as isize + m as isize;
                rational_to_f64(w) * values[idx as usize]
            })
            .sum();
        acc / dx.powi(self.dx_power as i32)
    }

    /// Apply on a periodic line of samples.
    pub fn apply_periodic(&self, values: &[f64], dx: f64) -> Vec<f64> {
        let n = values.len() as isize;
        let w = self.weights_f64();
        let scale = dx.powi(self.dx_power as i32);
        (0..n)
            .map(|j| {
                w.iter()
                    .map(|&(m, wm)| wm * values[(j + m as isize).rem_euclid(n) as usize])
                    .sum::<f64>()
                    / scale
            })
            .collect()
    }
}

impl fmt::Debug for Stencil1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Stencil1D")
            .field("dx_power", &self.dx_power)
            .field(
                "weights",
                &self
                    .weights
                    .iter()
                    .map(|(m, w)| format!("{m}: {w}"))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Add for &Stencil1D {
    type Output = Stencil1D;

    fn add(self, rhs: &Stencil1D) -> Stencil1D {
        assert_eq!(self.dx_power, rhs.dx_power, "adding stencils of different Δx power");
        let mut out = self.clone();
        for (m, w) in rhs.weights() {
            out.accumulate(m, w);
        }
        out
    }
}

impl Sub for &Stencil1D {
    type Output = Stencil1D;

    fn sub(self, rhs: &Stencil1D) -> Stencil1D {
        self + &(-rhs)
    }
}

impl Neg for &Stencil1D {
    type Output = Stencil1D;

    fn neg(self) -> Stencil1D {
        self.scaled(Rational::from_integer(-1))
    }
}

impl Add for Stencil1D {
    type Output = Stencil1D;
    fn add(self, rhs: Stencil1D) -> Stencil1D {
        &self + &rhs
    }
}

impl Sub for Stencil1D {
    type Output = Stencil1D;
    fn sub(self, rhs: Stencil1D) -> Stencil1D {
        &self - &rhs
    }
}
