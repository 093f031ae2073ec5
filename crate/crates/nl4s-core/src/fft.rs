//! Unitary discrete Fourier pair between physical samples and lattice
//! coefficients.
//!
//! The pair is anchored at the box corner x = -L, which shows up as a parity
//! sign `(-1)^k` relative to the raw FFT, and scaled so that Plancherel holds
//! with constant 1: `sum |f|^2 dx^d = sum |fhat|^2`. With this convention a
//! lattice plane wave `e^(i xi_k . x)` transforms to a single real coefficient
//! `sqrt((2L)^d)` at mode k.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::field::{PhysicalField, SpectralField};
use crate::grid::GridSpec;

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plans_for(n: usize) -> Arc<Plans> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Plans>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fft plan cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Plans {
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

fn transform_axes(grid: GridSpec, data: &mut [Complex64], inverse: bool) {
    let n = grid.n();
    let plans = plans_for(n);
    let fft = if inverse {
        plans.inverse.clone()
    } else {
        plans.forward.clone()
    };
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    match grid.d_sim() {
        1 => fft.process_with_scratch(data, &mut scratch),
        _ => {
            // rows
            for row in data.chunks_exact_mut(n) {
                fft.process_with_scratch(row, &mut scratch);
            }
            // columns via transpose, transform, transpose back
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            for j in 0..n {
                for i in 0..n {
                    col[i] = data[i * n + j];
                }
                fft.process_with_scratch(&mut col, &mut scratch);
                for i in 0..n {
                    data[i * n + j] = col[i];
                }
            }
        }
    }
}

/// Forward transform; output coefficients are unitary-normalized.
pub fn to_spectral(f: &PhysicalField) -> SpectralField {
    let grid = f.grid();
    let mut data = f.values().to_vec();
    transform_axes(grid, &mut data, false);
    let scale = (grid.dx() / grid.n() as f64).powf(grid.d_sim() as f64 / 2.0);
    for (i, c) in data.iter_mut().enumerate() {
        *c *= scale * grid.parity(i);
    }
    SpectralField::from_raw(grid, data)
}

/// Inverse transform; exact inverse of `to_spectral` up to roundoff.
pub fn to_physical(f: &SpectralField) -> PhysicalField {
    let grid = f.grid();
    let mut data: Vec<Complex64> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * grid.parity(i))
        .collect();
    transform_axes(grid, &mut data, true);
    let scale = 1.0 / (grid.dx() * grid.n() as f64).powf(grid.d_sim() as f64 / 2.0);
    for c in data.iter_mut() {
        *c *= scale;
    }
    PhysicalField::from_raw(grid, data)
}

/// Evaluate the trigonometric interpolant of `f` at arbitrary points given as
/// per-axis coordinate lists (tensor-product evaluation, row-major output).
///
/// Cost is O(n^d * m) per axis rather than O(n^d * m^d); fine for the modest
/// grids this crate targets.
pub fn evaluate_at(f: &SpectralField, axis_points: &[Vec<f64>]) -> Vec<Complex64> {
    let grid = f.grid();
    let n = grid.n();
    let fund = grid.xi_fundamental();
    let inv_vol = 1.0 / (grid.dx() * n as f64).powf(grid.d_sim() as f64 / 2.0);

    // Per-axis evaluation matrices E[a][m][k] = exp(i xi_k x_m).
    let basis: Vec<Vec<Complex64>> = axis_points
        .iter()
        .map(|pts| {
            let mut mat = Vec::with_capacity(pts.len() * n);
            for &x in pts {
                for idx in 0..n {
                    let k = if idx < n / 2 {
                        idx as i64
                    } else {
                        idx as i64 - n as i64
                    };
                    mat.push(Complex64::cis(fund * k as f64 * x));
                }
            }
            mat
        })
        .collect();

    match grid.d_sim() {
        1 => {
            let pts = &basis[0];
            let m = axis_points[0].len();
            (0..m)
                .map(|j| {
                    let row = &pts[j * n..(j + 1) * n];
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (c, e) in f.coeffs().iter().zip(row) {
                        acc += c * e;
                    }
                    acc * inv_vol
                })
                .collect()
        }
        _ => {
            let (m1, m2) = (axis_points[0].len(), axis_points[1].len());
            // partial evaluation along the second axis: A[k1][j2]
            let mut partial = vec![Complex64::new(0.0, 0.0); n * m2];
            for k1 in 0..n {
                for j2 in 0..m2 {
                    let row = &basis[1][j2 * n..(j2 + 1) * n];
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (k2, e) in row.iter().enumerate() {
                        acc += f.coeffs()[k1 * n + k2] * e;
                    }
                    partial[k1 * m2 + j2] = acc;
                }
            }
            let mut out = vec![Complex64::new(0.0, 0.0); m1 * m2];
            for j1 in 0..m1 {
                let row = &basis[0][j1 * n..(j1 + 1) * n];
                for j2 in 0..m2 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (k1, e) in row.iter().enumerate() {
                        acc += partial[k1 * m2 + j2] * e;
                    }
                    out[j1 * m2 + j2] = acc * inv_vol;
                }
            }
            out
        }
    }
}

/// Best circular shift and global phase aligning `psi` to `target`, found
/// jointly by cross-correlation over all grid shifts, plus the resulting L²
/// distance. The returned shift is the flat index j* maximizing
/// `|<psi(· + j), target>|`; the minimizer property is exact over the grid.
pub fn align_fields(target: &PhysicalField, psi: &PhysicalField) -> (usize, f64, f64) {
    let grid = target.grid();
    debug_assert_eq!(grid, psi.grid());
    let len = grid.len();
    let mut a: Vec<Complex64> = psi.values().to_vec();
    let mut b: Vec<Complex64> = target.values().to_vec();
    transform_axes(grid, &mut a, false);
    transform_axes(grid, &mut b, false);
    let mut prod: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y.conj()).collect();
    transform_axes(grid, &mut prod, true);
    let w = grid.cell_volume() / len as f64;
    let mut best = 0usize;
    let mut best_v = -1.0;
    for (i, c) in prod.iter().enumerate() {
        let v = c.norm_sqr();
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    let corr = prod[best] * w;
    let phase = corr.arg();
    let d2 = psi.l2_norm().powi(2) + target.l2_norm().powi(2) - 2.0 * corr.norm();
    (best, phase, d2.max(0.0).sqrt())
}
