//! Complex fields sampled on a periodic grid, and their Fourier coefficients.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Complex samples of a function on the grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    grid: GridSpec,
    values: Vec<Complex64>,
}

/// Fourier coefficients on the frequency lattice, unshifted FFT order,
/// normalized so that Plancherel holds with constant 1:
/// `sum |values|^2 dx^d == sum |coeffs|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

impl PhysicalField {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        grid.check_len(values.len())?;
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFiniteField { index: i });
        }
        Ok(PhysicalField { grid, values })
    }

    /// Zero field.
    pub fn zeros(grid: GridSpec) -> Self {
        PhysicalField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Build from a function of the physical coordinates.
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.len())
            .map(|i| {
                let c = grid.coords(i);
                f(&c[..grid.d_sim()])
            })
            .collect();
        PhysicalField { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Construct without the finiteness scan; internal fast path for values
    /// produced by arithmetic on already-validated fields.
    pub(crate) fn from_raw(grid: GridSpec, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        PhysicalField { grid, values }
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// L2 norm with the grid quadrature weight.
    pub fn l2_norm(&self) -> f64 {
        let w = self.grid.cell_volume();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * w).sqrt()
    }

    /// L^q norm, q finite, with the grid quadrature weight.
    pub fn lq_norm(&self, q: f64) -> f64 {
        let w = self.grid.cell_volume();
        (self
            .values
            .iter()
            .map(|v| v.norm().powf(q))
            .sum::<f64>()
            * w)
            .powf(1.0 / q)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, a: Complex64) -> Self {
        PhysicalField::from_raw(self.grid, self.values.iter().map(|v| v * a).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.check_len(other.values.len())?;
        Ok(PhysicalField::from_raw(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.check_len(other.values.len())?;
        Ok(PhysicalField::from_raw(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// Relative L2 distance `|self - other| / |other|`.
    pub fn rel_l2_distance(&self, other: &Self) -> Result<f64> {
        let denom = other.l2_norm();
        if denom == 0.0 {
            return Err(Error::ZeroNorm {
                context: "relative L2 distance",
            });
        }
        Ok(self.sub(other)?.l2_norm() / denom)
    }

    /// L2 inner product `<self, other> = sum self * conj(other) dx^d`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let w = self.grid.cell_volume();
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * w
    }

    /// Circularly shift samples so that the sample at `from` lands on `to`.
    pub fn circular_shift_index(&self, from: usize, to: usize) -> Self {
        let n = self.grid.n();
        let out = match self.grid.d_sim() {
            1 => {
                let off = (from as i64 - to as i64).rem_euclid(n as i64) as usize;
                (0..n).map(|j| self.values[(j + off) % n]).collect()
            }
            _ => {
                let (f1, f2) = (from / n, from % n);
                let (t1, t2) = (to / n, to % n);
                let o1 = (f1 as i64 - t1 as i64).rem_euclid(n as i64) as usize;
                let o2 = (f2 as i64 - t2 as i64).rem_euclid(n as i64) as usize;
                (0..n * n)
                    .map(|flat| {
                        let (j1, j2) = (flat / n, flat % n);
                        self.values[((j1 + o1) % n) * n + (j2 + o2) % n]
                    })
                    .collect()
            }
        };
        PhysicalField::from_raw(self.grid, out)
    }

    /// Flat index of the sample with the largest modulus (first on ties).
    pub fn argmax_abs(&self) -> usize {
        let mut best = 0;
        let mut best_v = -1.0;
        for (i, v) in self.values.iter().enumerate() {
            let a = v.norm_sqr();
            if a > best_v {
                best_v = a;
                best = i;
            }
        }
        best
    }
}

impl SpectralField {
    pub fn new(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        grid.check_len(coeffs.len())?;
        Ok(SpectralField { grid, coeffs })
    }

    pub(crate) fn from_raw(grid: GridSpec, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        SpectralField { grid, coeffs }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Spectral-side L2 norm; equals the physical L2 norm by Plancherel.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Weighted L2 norm `(sum w(|xi|^2) |coeff|^2)^(1/2)` for a symbol given
    /// on |xi|^2. The workhorse behind every Sobolev-type norm.
    pub fn weighted_l2(&self, mut weight_sq: impl FnMut(f64) -> f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| weight_sq(self.grid.xi_sq(i)) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Deterministic generator for random test fields.
///
/// Two flavors:
/// - `localized`: a few Gaussian wavepackets well inside the box, mimicking
///   Schwartz-class data on R^d (negligible boundary mass);
/// - `spectral`: coefficients drawn with an algebraically decaying envelope,
///   covering every dyadic shell of the lattice.
pub struct FieldSampler {
    rng: ChaCha8Rng,
}

impl FieldSampler {
    pub fn new(seed: u64) -> Self {
        FieldSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn localized(&mut self, grid: GridSpec) -> PhysicalField {
        let l = grid.box_half_width();
        let bumps = self.rng.gen_range(1..=3);
        let mut params = Vec::new();
        for _ in 0..bumps {
            let amp = self.rng.gen_range(0.3..1.0);
            let width = self.rng.gen_range(l / 20.0..l / 8.0);
            let mut center = [0.0f64; 2];
            let mut k = [0.0f64; 2];
            for a in 0..grid.d_sim() {
                center[a] = self.rng.gen_range(-l / 2.0..l / 2.0);
                k[a] = self.rng.gen_range(-2.0..2.0) / width;
            }
            let phase = self.rng.gen_range(0.0..std::f64::consts::TAU);
            params.push((amp, width, center, k, phase));
        }
        PhysicalField::from_fn(grid, |x| {
            let mut v = Complex64::new(0.0, 0.0);
            for (amp, width, center, k, phase) in &params {
                let mut r2 = 0.0;
                let mut kx = *phase;
                for (a, &xa) in x.iter().enumerate() {
                    let d = xa - center[a];
                    r2 += d * d;
                    kx += k[a] * xa;
                }
                v += amp * (-r2 / (2.0 * width * width)).exp() * Complex64::cis(kx);
            }
            v
        })
    }

    /// Random field with spectrum `|coeff| ~ <xi>^(-1)` times complex noise.
    pub fn spectral(&mut self, grid: GridSpec) -> PhysicalField {
        let coeffs: Vec<Complex64> = (0..grid.len())
            .map(|i| {
                let xi2 = grid.xi_sq(i);
                let env = 1.0 / (1.0 + xi2).sqrt();
                let re: f64 = self.rng.gen_range(-1.0..1.0);
                let im: f64 = self.rng.gen_range(-1.0..1.0);
                Complex64::new(re, im) * env
            })
            .collect();
        crate::fft::to_physical(&SpectralField::from_raw(grid, coeffs))
    }

    /// Random field whose discrete spectrum is zero outside `|k|_axis <= k_max`
    /// (mode numbers, not frequencies). Products of degree up to
    /// `(n/2 - 1) / k_max` then stay alias-free on the grid.
    pub fn band_limited(&mut self, grid: GridSpec, k_max: i64) -> PhysicalField {
        let coeffs: Vec<Complex64> = (0..grid.len())
            .map(|i| {
                let [k1, k2] = grid.k_axes(i);
                if k1.abs() > k_max || k2.abs() > k_max || k1 == 0 && k2 == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    let re: f64 = self.rng.gen_range(-1.0..1.0);
                    let im: f64 = self.rng.gen_range(-1.0..1.0);
                    Complex64::new(re, im) / (1.0 + (k1 * k1 + k2 * k2) as f64)
                }
            })
            .collect();
        crate::fft::to_physical(&SpectralField::from_raw(grid, coeffs))
    }
}
