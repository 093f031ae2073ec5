//! Periodic Cartesian grids and their frequency lattices.
//!
//! The box is `[-L, L)^d` with `n` points per axis (n a power of two), so
//! `dx = 2L/n`. The dual lattice carries frequencies `xi_j = (pi/L) k_j`
//! with integer `k_j in [-n/2, n/2)`; the axis Nyquist frequency is
//! `(pi/L)(n/2)`. Coefficients are stored in unshifted FFT order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    d_sim: usize,
    n: usize,
    box_half_width: f64,
}

impl GridSpec {
    pub fn new(d_sim: usize, n: usize, box_half_width: f64) -> Result<Self> {
        if !(1..=2).contains(&d_sim) {
            return Err(Error::InvalidGrid(format!(
                "d_sim must be 1 or 2, got {d_sim}"
            )));
        }
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n must be a power of two >= 16, got {n}"
            )));
        }
        if !(box_half_width > 0.0 && box_half_width.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "box half-width must be positive and finite, got {box_half_width}"
            )));
        }
        Ok(GridSpec {
            d_sim,
            n,
            box_half_width,
        })
    }

    pub fn d_sim(&self) -> usize {
        self.d_sim
    }

    /// Points per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Box half-width L; the domain is `[-L, L)^d`.
    pub fn box_half_width(&self) -> f64 {
        self.box_half_width
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.box_half_width / self.n as f64
    }

    /// Total sample count `n^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.d_sim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell volume `dx^d`, the quadrature weight for grid sums.
    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.d_sim as i32)
    }

    /// Axis Nyquist frequency `(pi/L)(n/2)`.
    pub fn xi_max(&self) -> f64 {
        std::f64::consts::PI / self.box_half_width * (self.n as f64 / 2.0)
    }

    /// Fundamental frequency `pi/L`, the smallest nonzero lattice spacing.
    pub fn xi_fundamental(&self) -> f64 {
        std::f64::consts::PI / self.box_half_width
    }

    /// Signed integer mode number for a flat array position along one axis.
    #[inline]
    pub fn k_of_index(&self, idx: usize) -> i64 {
        debug_assert!(idx < self.n);
        if idx < self.n / 2 {
            idx as i64
        } else {
            idx as i64 - self.n as i64
        }
    }

    /// Per-axis mode numbers of a flattened (row-major) lattice position.
    #[inline]
    pub fn k_axes(&self, flat: usize) -> [i64; 2] {
        match self.d_sim {
            1 => [self.k_of_index(flat), 0],
            _ => [self.k_of_index(flat / self.n), self.k_of_index(flat % self.n)],
        }
    }

    /// |xi|^2 of a flattened lattice position.
    #[inline]
    pub fn xi_sq(&self, flat: usize) -> f64 {
        let [k1, k2] = self.k_axes(flat);
        let f = self.xi_fundamental();
        let x1 = f * k1 as f64;
        let x2 = f * k2 as f64;
        x1 * x1 + x2 * x2
    }

    /// Parity sign `(-1)^(k1+k2+...)` used to re-anchor the FFT phase at x = -L.
    #[inline]
    pub fn parity(&self, flat: usize) -> f64 {
        let s = match self.d_sim {
            1 => flat & 1,
            _ => (flat / self.n + flat % self.n) & 1,
        };
        if s == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Physical coordinates of a flattened sample position.
    pub fn coords(&self, flat: usize) -> [f64; 2] {
        let dx = self.dx();
        let l = self.box_half_width;
        match self.d_sim {
            1 => [-l + flat as f64 * dx, 0.0],
            _ => [
                -l + (flat / self.n) as f64 * dx,
                -l + (flat % self.n) as f64 * dx,
            ],
        }
    }

    /// Flat index of the spatial origin x = 0 (sample n/2 along each axis).
    pub fn origin_index(&self) -> usize {
        match self.d_sim {
            1 => self.n / 2,
            _ => (self.n / 2) * self.n + self.n / 2,
        }
    }

    /// Squared periodic (torus) distance between two flattened sample positions.
    pub fn periodic_dist_sq(&self, a: usize, b: usize) -> f64 {
        let dx = self.dx();
        let span = self.n as i64;
        let wrap = |d: i64| -> f64 {
            let m = d.rem_euclid(span);
            let m = m.min(span - m);
            m as f64 * dx
        };
        match self.d_sim {
            1 => {
                let d = wrap(a as i64 - b as i64);
                d * d
            }
            _ => {
                let (a1, a2) = ((a / self.n) as i64, (a % self.n) as i64);
                let (b1, b2) = ((b / self.n) as i64, (b % self.n) as i64);
                let d1 = wrap(a1 - b1);
                let d2 = wrap(a2 - b2);
                d1 * d1 + d2 * d2
            }
        }
    }

    pub fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::GridMismatch {
                d_sim: self.d_sim,
                n: self.n,
                expected: self.len(),
                got,
            });
        }
        Ok(())
    }

    /// Dyadic ladder `M = 2^k` covering the nonzero lattice radii, from the
    /// largest power of two at or below the fundamental frequency up to the
    /// first at or above `sqrt(d) * xi_max`.
    pub fn dyadic_ladder(&self) -> Vec<f64> {
        let lo = self.xi_fundamental();
        let hi = (self.d_sim as f64).sqrt() * self.xi_max();
        let k_lo = lo.log2().floor() as i32;
        let k_hi = hi.log2().ceil() as i32;
        (k_lo..=k_hi).map(|k| 2f64.powi(k)).collect()
    }
}
