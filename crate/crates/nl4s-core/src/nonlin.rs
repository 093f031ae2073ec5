//! The power nonlinearity `F(z) = |z|^p z` and its Wirtinger derivatives.
//!
//! `F'(z)` acts on w as `w ∂_z F + conj(w) ∂_zbar F` with
//! `∂_z F = (1 + p/2)|z|^p` and `∂_zbar F = (p/2)|z|^(p-2) z^2`, so that the
//! chain rule `∇F(u) = F'(u)·∇u` holds componentwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PhysicalField;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearityParams {
    /// Power p > 0; the mass-critical choice on a d-dimensional grid is 8/d.
    pub p: f64,
    /// Sign of the nonlinear term in `i u_t + Δ²u + ε Δu + μ |u|^p u = 0`;
    /// the focusing equation `i u_t + Δ²u = |u|^p u` is μ = -1.
    pub mu: i8,
    /// Coefficient of the lower-order dispersion `ε Δu`, in {-1, 0, +1}.
    pub epsilon: i8,
}

impl NonlinearityParams {
    pub fn new(p: f64, mu: i8, epsilon: i8) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("power p must be > 0, got {p}")));
        }
        if mu != 1 && mu != -1 {
            return Err(Error::InvalidParameter(format!("mu must be +-1, got {mu}")));
        }
        if !(-1..=1).contains(&epsilon) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be in {{-1, 0, 1}}, got {epsilon}"
            )));
        }
        Ok(NonlinearityParams { p, mu, epsilon })
    }

    /// Focusing mass-critical parameters for a d-dimensional simulation grid.
    pub fn mass_critical(d_sim: usize) -> Self {
        NonlinearityParams {
            p: 8.0 / d_sim as f64,
            mu: -1,
            epsilon: 0,
        }
    }
}

/// Pointwise `|u|^p u`.
pub fn f_eval(u: &PhysicalField, params: &NonlinearityParams) -> PhysicalField {
    let p = params.p;
    PhysicalField::from_raw(
        u.grid(),
        u.values()
            .iter()
            .map(|&z| {
                let a = z.norm();
                if a == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    z * a.powf(p)
                }
            })
            .collect(),
    )
}

/// The derivative pair `(∂_z F, ∂_zbar F)` evaluated pointwise.
#[derive(Debug, Clone)]
pub struct FPrime {
    /// `(1 + p/2)|z|^p`, real.
    pub dz: PhysicalField,
    /// `(p/2)|z|^(p-2) z^2` (zero at z = 0).
    pub dzbar: PhysicalField,
}

impl FPrime {
    /// Apply the real-linear operator to a field w: `w ∂_z F + conj(w) ∂_zbar F`.
    pub fn apply(&self, w: &PhysicalField) -> Result<PhysicalField> {
        self.dz.grid().check_len(w.values().len())?;
        Ok(PhysicalField::from_raw(
            w.grid(),
            w.values()
                .iter()
                .zip(self.dz.values())
                .zip(self.dzbar.values())
                .map(|((w, dz), dzb)| w * dz + w.conj() * dzb)
                .collect(),
        ))
    }

    /// Pointwise magnitude `|∂_z F| + |∂_zbar F|`, the O(|z|^p) bound.
    pub fn magnitude(&self) -> Vec<f64> {
        self.dz
            .values()
            .iter()
            .zip(self.dzbar.values())
            .map(|(a, b)| a.norm() + b.norm())
            .collect()
    }
}

pub fn f_prime(u: &PhysicalField, params: &NonlinearityParams) -> FPrime {
    let p = params.p;
    let grid = u.grid();
    let mut dz = Vec::with_capacity(u.values().len());
    let mut dzbar = Vec::with_capacity(u.values().len());
    for &z in u.values() {
        let a = z.norm();
        if a == 0.0 {
            dz.push(Complex64::new(0.0, 0.0));
            dzbar.push(Complex64::new(0.0, 0.0));
        } else {
            dz.push(Complex64::new((1.0 + p / 2.0) * a.powf(p), 0.0));
            // z/zbar = z^2/|z|^2
            dzbar.push(z * z / (a * a) * (p / 2.0) * a.powf(p));
        }
    }
    FPrime {
        dz: PhysicalField::from_raw(grid, dz),
        dzbar: PhysicalField::from_raw(grid, dzbar),
    }
}

/// Pointwise l1 magnitude of the second Wirtinger derivatives,
/// `c(p) |z|^(p-1)` with `c(p) = (p/2)(3(1 + p/2) + |p/2 - 1|)`.
pub fn f_second_mag(u: &PhysicalField, params: &NonlinearityParams) -> Vec<f64> {
    let p = params.p;
    let c = (p / 2.0) * (3.0 * (1.0 + p / 2.0) + (p / 2.0 - 1.0).abs());
    u.values()
        .iter()
        .map(|z| {
            let a = z.norm();
            if a == 0.0 {
                0.0
            } else {
                c * a.powf(p - 1.0)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSampler;
    use crate::grid::GridSpec;
    use crate::multiplier::gradient;

    #[test]
    fn derivative_values_at_unit_point() {
        // p = 8/5: dz F(1) = 1.8, dzbar F(1) = 0.8
        let g = GridSpec::new(1, 16, 1.0).unwrap();
        let u = PhysicalField::from_fn(g, |_| Complex64::new(1.0, 0.0));
        let params = NonlinearityParams::new(8.0 / 5.0, -1, 0).unwrap();
        let fp = f_prime(&u, &params);
        assert!((fp.dz.values()[0].re - 1.8).abs() < 1e-15);
        assert!((fp.dzbar.values()[0].re - 0.8).abs() < 1e-15);
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = GridSpec::new(1, 16, 1.0).unwrap();
        let u = PhysicalField::zeros(g);
        let params = NonlinearityParams::mass_critical(1);
        assert_eq!(f_eval(&u, &params).values()[0], Complex64::new(0.0, 0.0));
        let fp = f_prime(&u, &params);
        assert_eq!(fp.dz.values()[5], Complex64::new(0.0, 0.0));
        assert_eq!(fp.dzbar.values()[5], Complex64::new(0.0, 0.0));
        assert_eq!(f_second_mag(&u, &params)[0], 0.0);
    }

    #[test]
    fn chain_rule_holds_spectrally() {
        // Band-limited u and integer p keep |u|^p u alias-free, so the
        // spectral gradient of F(u) matches F'(u) grad u to roundoff.
        let g = GridSpec::new(1, 512, 10.0).unwrap();
        let params = NonlinearityParams::mass_critical(1); // p = 8, degree 9
        let k_max = (g.n() as i64 / 2 - 1) / 9;
        let u = FieldSampler::new(42).band_limited(g, k_max);
        let fu = f_eval(&u, &params);
        let grad_fu = &gradient(&fu)[0];
        let fp = f_prime(&u, &params);
        let via_chain = fp.apply(&gradient(&u)[0]).unwrap();
        let err = grad_fu.sub(&via_chain).unwrap().l2_norm();
        assert!(
            err < 1e-10 * grad_fu.l2_norm(),
            "chain-rule mismatch: {err} vs norm {}",
            grad_fu.l2_norm()
        );
    }

    #[test]
    fn rejects_bad_params() {
        assert!(NonlinearityParams::new(0.0, -1, 0).is_err());
        assert!(NonlinearityParams::new(8.0, 2, 0).is_err());
        assert!(NonlinearityParams::new(8.0, -1, 3).is_err());
    }
}
