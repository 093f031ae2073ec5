//! Fourier multipliers on the frequency lattice: generic symbols, fractional
//! derivatives, and the building blocks for every operator in this crate
//! (biharmonic propagator, smoothing operator, dyadic projectors).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::{to_physical, to_spectral};
use crate::field::{PhysicalField, SpectralField};
use crate::grid::GridSpec;

#[derive(Debug, Clone)]
pub enum Symbol {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// A multiplier with its symbol tabulated on the frequency lattice.
#[derive(Debug, Clone)]
pub struct Multiplier {
    grid: GridSpec,
    symbol: Symbol,
}

impl Multiplier {
    /// Tabulate a radial symbol `f(|xi|)`.
    pub fn from_radial(grid: GridSpec, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values: Vec<f64> = (0..grid.len()).map(|i| f(grid.xi_sq(i).sqrt())).collect();
        Self::validate_real(grid, values)
    }

    /// Tabulate a general real symbol of the frequency vector.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let fund = grid.xi_fundamental();
        let values: Vec<f64> = (0..grid.len())
            .map(|i| {
                let [k1, k2] = grid.k_axes(i);
                let xi = [fund * k1 as f64, fund * k2 as f64];
                f(&xi[..grid.d_sim()])
            })
            .collect();
        Self::validate_real(grid, values)
    }

    /// Tabulate a complex symbol of |xi| (e.g. a propagator phase).
    pub fn from_radial_complex(grid: GridSpec, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values: Vec<Complex64> = (0..grid.len()).map(|i| f(grid.xi_sq(i).sqrt())).collect();
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteSymbol {
                    index: i,
                    xi_abs: grid.xi_sq(i).sqrt(),
                });
            }
        }
        Ok(Multiplier {
            grid,
            symbol: Symbol::Complex(values),
        })
    }

    fn validate_real(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteSymbol {
                    index: i,
                    xi_abs: grid.xi_sq(i).sqrt(),
                });
            }
        }
        Ok(Multiplier {
            grid,
            symbol: Symbol::Real(values),
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn symbol_value(&self, index: usize) -> Complex64 {
        match &self.symbol {
            Symbol::Real(v) => Complex64::new(v[index], 0.0),
            Symbol::Complex(v) => v[index],
        }
    }

    pub fn apply_spectral(&self, f: &mut SpectralField) -> Result<()> {
        self.grid.check_len(f.coeffs().len())?;
        match &self.symbol {
            Symbol::Real(sym) => {
                for (c, s) in f.coeffs_mut().iter_mut().zip(sym) {
                    *c *= *s;
                }
            }
            Symbol::Complex(sym) => {
                for (c, s) in f.coeffs_mut().iter_mut().zip(sym) {
                    *c *= *s;
                }
            }
        }
        Ok(())
    }

    /// Transform, multiply, transform back.
    pub fn apply(&self, f: &PhysicalField) -> Result<PhysicalField> {
        self.grid.check_len(f.values().len())?;
        let mut s = to_spectral(f);
        self.apply_spectral(&mut s)?;
        Ok(to_physical(&s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Bracket {
    /// `|xi|^s`; the zero mode is sent to 0 when s < 0 (flagged).
    Homogeneous,
    /// `(1 + |xi|^2)^(s/2)`.
    Inhomogeneous,
}

/// Output of a fractional derivative; for negative homogeneous orders the
/// zero mode has no finite image and is dropped, with the removed coefficient
/// reported.
#[derive(Debug, Clone)]
pub struct FractionalDerivative {
    pub field: PhysicalField,
    /// Zero-mode coefficient annihilated by `|xi|^s`, s < 0, when the input
    /// had nonzero mean.
    pub dropped_zero_mode: Option<Complex64>,
}

pub fn fractional_derivative(
    f: &PhysicalField,
    s: f64,
    bracket: Bracket,
) -> Result<FractionalDerivative> {
    if !(-4.0..=4.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "fractional order s must lie in [-4, 4], got {s}"
        )));
    }
    let grid = f.grid();
    let mut spec = to_spectral(f);
    let mut dropped = None;
    match bracket {
        Bracket::Homogeneous => {
            for (i, c) in spec.coeffs_mut().iter_mut().enumerate() {
                let xi2 = grid.xi_sq(i);
                if xi2 == 0.0 {
                    if s < 0.0 {
                        if c.norm_sqr() > 0.0 {
                            dropped = Some(*c);
                        }
                        *c = Complex64::new(0.0, 0.0);
                    } else if s > 0.0 {
                        *c = Complex64::new(0.0, 0.0);
                    }
                } else {
                    *c *= xi2.powf(s / 2.0);
                }
            }
        }
        Bracket::Inhomogeneous => {
            for (i, c) in spec.coeffs_mut().iter_mut().enumerate() {
                *c *= (1.0 + grid.xi_sq(i)).powf(s / 2.0);
            }
        }
    }
    Ok(FractionalDerivative {
        field: to_physical(&spec),
        dropped_zero_mode: dropped,
    })
}

/// Spectral gradient: the d components `d/dx_a f` via the symbol `i xi_a`.
pub fn gradient(f: &PhysicalField) -> Vec<PhysicalField> {
    let grid = f.grid();
    let fund = grid.xi_fundamental();
    let spec = to_spectral(f);
    (0..grid.d_sim())
        .map(|axis| {
            let coeffs: Vec<Complex64> = spec
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let k = grid.k_axes(i)[axis];
                    c * Complex64::new(0.0, fund * k as f64)
                })
                .collect();
            to_physical(&SpectralField::new(grid, coeffs).expect("gradient grid"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSampler;

    #[test]
    fn identity_symbol_roundtrips() {
        let g = GridSpec::new(1, 64, 4.0).unwrap();
        let f = FieldSampler::new(1).localized(g);
        let m = Multiplier::from_radial(g, |_| 1.0).unwrap();
        let out = m.apply(&f).unwrap();
        assert!(out.rel_l2_distance(&f).unwrap() < 1e-13);
    }

    #[test]
    fn biharmonic_symbol_on_plane_wave() {
        let g = GridSpec::new(1, 64, 4.0).unwrap();
        let fund = g.xi_fundamental();
        let k = 5i64;
        let f = PhysicalField::from_fn(g, |x| Complex64::cis(fund * k as f64 * x[0]));
        let m = Multiplier::from_radial(g, |r| r.powi(4)).unwrap();
        let out = m.apply(&f).unwrap();
        let expect = (fund * k as f64).powi(4);
        let err = out
            .values()
            .iter()
            .zip(f.values())
            .map(|(o, v)| (o - v * expect).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-9 * expect, "err {err}");
    }

    #[test]
    fn multipliers_commute() {
        let g = GridSpec::new(2, 16, 3.0).unwrap();
        let f = FieldSampler::new(2).spectral(g);
        let a = Multiplier::from_radial(g, |r| 1.0 / (1.0 + r * r)).unwrap();
        let b = Multiplier::from_radial(g, |r| (1.0 + r).sqrt()).unwrap();
        let ab = b.apply(&a.apply(&f).unwrap()).unwrap();
        let ba = a.apply(&b.apply(&f).unwrap()).unwrap();
        assert!(ab.rel_l2_distance(&ba).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_non_finite_symbol() {
        let g = GridSpec::new(1, 16, 1.0).unwrap();
        // |xi|^(-1) is infinite at the zero mode
        assert!(Multiplier::from_radial(g, |r| 1.0 / r).is_err());
    }

    #[test]
    fn brackets_invert() {
        let g = GridSpec::new(1, 128, 6.0).unwrap();
        let f = FieldSampler::new(3).spectral(g);
        let up = fractional_derivative(&f, 1.3, Bracket::Inhomogeneous).unwrap();
        let down = fractional_derivative(&up.field, -1.3, Bracket::Inhomogeneous).unwrap();
        assert!(down.field.rel_l2_distance(&f).unwrap() < 1e-12);
        assert!(up.dropped_zero_mode.is_none());
    }

    #[test]
    fn homogeneous_negative_order_flags_mean() {
        let g = GridSpec::new(1, 32, 2.0).unwrap();
        let f = PhysicalField::from_fn(g, |x| Complex64::new(1.0 + 0.1 * x[0].cos(), 0.0));
        let d = fractional_derivative(&f, -1.0, Bracket::Homogeneous).unwrap();
        assert!(d.dropped_zero_mode.is_some());
        let g0 = fractional_derivative(&f, 0.0, Bracket::Homogeneous).unwrap();
        assert!(g0.dropped_zero_mode.is_none());
        assert!(g0.field.rel_l2_distance(&f).unwrap() < 1e-13);
    }

    #[test]
    fn plane_wave_fractional_derivative() {
        let g = GridSpec::new(1, 64, 4.0).unwrap();
        let fund = g.xi_fundamental();
        let k = 7i64;
        let f = PhysicalField::from_fn(g, |x| Complex64::cis(fund * k as f64 * x[0]));
        let s = 1.5;
        let out = fractional_derivative(&f, s, Bracket::Homogeneous).unwrap().field;
        let expect = (fund * k as f64).powf(s);
        let err = out
            .values()
            .iter()
            .zip(f.values())
            .map(|(o, v)| (o - v * expect).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10 * expect);
    }
}
