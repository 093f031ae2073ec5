//! Littlewood-Paley projectors on the dyadic ladder, built from a fixed
//! radial bump, plus Bernstein-type ratio diagnostics.
//!
//! The bump is phi(y) = 1 for |y| <= 1, 0 for |y| >= 2, and the cubic
//! smoothstep `1 - (3t^2 - 2t^3)` in `t = log2|y|` in between: C^1, monotone,
//! and bit-reproducible. `P_{<=M}` multiplies by `phi(xi/M)`, `P_{>M}` by
//! `1 - phi(xi/M)`, and the shell projector `P_M` by
//! `phi(xi/M) - phi(2 xi/M)`, supported on `M/2 < |xi| < 2M`.

use crate::error::{Error, Result};
use crate::field::PhysicalField;
use crate::multiplier::{fractional_derivative, Bracket, Multiplier};

/// The fixed radial bump phi.
pub fn bump(y: f64) -> f64 {
    let a = y.abs();
    if a <= 1.0 {
        1.0
    } else if a >= 2.0 {
        0.0
    } else {
        let t = a.log2();
        1.0 - (3.0 * t * t - 2.0 * t * t * t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpMode {
    /// Frequencies at or below M: symbol `phi(xi/M)`.
    Leq,
    /// Frequencies above M: symbol `1 - phi(xi/M)`.
    Gt,
    /// The dyadic shell around M: symbol `phi(xi/M) - phi(2 xi/M)`.
    Eq,
}

/// Symbol of the requested projector at radius `xi_abs`.
pub fn lp_symbol(mode: LpMode, m: f64, xi_abs: f64) -> f64 {
    match mode {
        LpMode::Leq => bump(xi_abs / m),
        LpMode::Gt => 1.0 - bump(xi_abs / m),
        LpMode::Eq => bump(xi_abs / m) - bump(xi_abs / (m / 2.0)),
    }
}

fn require_dyadic(m: f64) -> Result<()> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dyadic cutoff must be positive and finite, got {m}"
        )));
    }
    let k = m.log2().round();
    if (-1000.0..=1000.0).contains(&k) && m == 2f64.powi(k as i32) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "cutoff {m} is not a power of two"
        )))
    }
}

pub fn lp_project(f: &PhysicalField, m: f64, mode: LpMode) -> Result<PhysicalField> {
    require_dyadic(m)?;
    let mult = Multiplier::from_radial(f.grid(), |r| lp_symbol(mode, m, r))?;
    mult.apply(f)
}

/// Bernstein ratio diagnostics for a field around the dyadic cutoff M.
///
/// `shell` is `|P_M |grad|^s f| / (M^s |P_M f|)`; the shell support
/// `M/2 < |xi| < 2M` forces it into `[2^-|s|, 2^|s|]`. For s > 0 the
/// low/high-frequency counterparts are reported too:
/// `low  = |P_{<=M} |grad|^s f| / (M^s |P_{<=M} f|)`   (<= 2^s, support <= 2M)
/// `high = M^s |P_{>=M} f| / | |grad|^s P_{>=M} f|`    (<= 2^s, support > M/2)
#[derive(Debug, Clone)]
pub struct BernsteinReport {
    pub m: f64,
    pub s: f64,
    pub shell: f64,
    pub low: Option<f64>,
    pub high: Option<f64>,
}

pub fn bernstein_check(f: &PhysicalField, m: f64, s: f64) -> Result<BernsteinReport> {
    require_dyadic(m)?;
    let grid = f.grid();
    let floor = 1e-13 * f.l2_norm().max(f64::MIN_POSITIVE);

    let p_m = lp_project(f, m, LpMode::Eq)?;
    let shell_norm = p_m.l2_norm();
    if shell_norm <= floor {
        return Err(Error::ZeroProjection { norm: shell_norm });
    }
    let shell_deriv = fractional_derivative(&p_m, s, Bracket::Homogeneous)?.field;
    let shell = shell_deriv.l2_norm() / (m.powf(s) * shell_norm);

    let (low, high) = if s > 0.0 {
        let p_leq = lp_project(f, m, LpMode::Leq)?;
        let leq_norm = p_leq.l2_norm();
        let low = if leq_norm > floor {
            let d = fractional_derivative(&p_leq, s, Bracket::Homogeneous)?.field;
            Some(d.l2_norm() / (m.powf(s) * leq_norm))
        } else {
            None
        };
        // P_{>=M} = P_{>M} + P_M, i.e. symbol 1 - phi(2 xi / M)
        let geq = Multiplier::from_radial(grid, |r| 1.0 - bump(r / (m / 2.0)))?.apply(f)?;
        let geq_norm = geq.l2_norm();
        let high = if geq_norm > floor {
            let d = fractional_derivative(&geq, s, Bracket::Homogeneous)?.field;
            let dn = d.l2_norm();
            if dn > floor {
                Some(m.powf(s) * geq_norm / dn)
            } else {
                None
            }
        } else {
            None
        };
        (low, high)
    } else {
        (None, None)
    };

    Ok(BernsteinReport {
        m,
        s,
        shell,
        low,
        high,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSampler;
    use crate::fft::to_spectral;
    use crate::grid::GridSpec;
    use num_complex::Complex64;

    #[test]
    fn bump_profile() {
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(1.0), 1.0);
        assert_eq!(bump(2.0), 0.0);
        assert_eq!(bump(3.0), 0.0);
        let mid = bump(2f64.powf(0.5));
        assert!((mid - 0.5).abs() < 1e-15);
        // monotone non-increasing over the transition
        let mut prev = 1.0;
        for i in 0..=100 {
            let y = 1.0 + i as f64 / 100.0;
            let v = bump(y);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn full_cutoff_is_identity() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let f = FieldSampler::new(5).spectral(g);
        let m_top = 2f64.powi(g.xi_max().log2().ceil() as i32);
        let p = lp_project(&f, m_top, LpMode::Leq).unwrap();
        assert!(p.rel_l2_distance(&f).unwrap() < 1e-13);
    }

    #[test]
    fn telescoping_sum() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let f = FieldSampler::new(6).spectral(g);
        let ladder = g.dyadic_ladder();
        let m1 = ladder[2];
        let m2 = ladder[ladder.len() - 2];
        let direct = lp_project(&f, m2, LpMode::Leq)
            .unwrap()
            .sub(&lp_project(&f, m1, LpMode::Leq).unwrap())
            .unwrap();
        let mut acc = PhysicalField::zeros(g);
        let mut m = 2.0 * m1;
        while m <= m2 {
            acc = acc.add(&lp_project(&f, m, LpMode::Eq).unwrap()).unwrap();
            m *= 2.0;
        }
        assert!(acc.sub(&direct).unwrap().l2_norm() < 1e-12 * f.l2_norm());
    }

    #[test]
    fn dyadic_partition_reconstructs() {
        let g = GridSpec::new(2, 32, 4.0).unwrap();
        let f = FieldSampler::new(7).spectral(g);
        let ladder = g.dyadic_ladder();
        let m0 = ladder[0];
        let mut acc = lp_project(&f, m0, LpMode::Leq).unwrap();
        for &m in &ladder[1..] {
            acc = acc.add(&lp_project(&f, m, LpMode::Eq).unwrap()).unwrap();
        }
        assert!(acc.sub(&f).unwrap().l2_norm() < 1e-12 * f.l2_norm());
    }

    #[test]
    fn shell_weight_on_plane_wave() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let fund = g.xi_fundamental();
        let k = 11i64; // |xi| = 1.1 * pi ~ 3.46
        let xi = fund * k as f64;
        let m = 2.0; // shell (1, 4) contains xi
        let f = PhysicalField::from_fn(g, |x| Complex64::cis(xi * x[0]));
        let p = lp_project(&f, m, LpMode::Eq).unwrap();
        let weight = lp_symbol(LpMode::Eq, m, xi);
        let s = to_spectral(&p);
        let idx = (0..g.len()).find(|&i| g.k_of_index(i) == k).unwrap();
        let expect = (2.0 * g.box_half_width()).sqrt() * weight;
        assert!((s.coeffs()[idx].re - expect).abs() < 1e-10);
    }

    #[test]
    fn bernstein_plane_wave_at_m_is_one() {
        // box width a multiple of pi puts dyadic radii on the lattice:
        // fund = 1/8, so mode k = 32 sits exactly at |xi| = 4
        let g = GridSpec::new(1, 256, 8.0 * std::f64::consts::PI).unwrap();
        let xi = g.xi_fundamental() * 32.0;
        let m = 4.0;
        assert_eq!(xi, m, "fixture requires M on the lattice");
        let f = PhysicalField::from_fn(g, |x| Complex64::cis(xi * x[0]));
        let r = bernstein_check(&f, m, 1.7).unwrap();
        assert!((r.shell - 1.0).abs() < 1e-12, "shell {}", r.shell);
    }

    #[test]
    fn bernstein_annulus_bounds_hold() {
        let g = GridSpec::new(1, 256, 16.0).unwrap();
        let mut sampler = FieldSampler::new(8);
        for trial in 0..20 {
            let f = sampler.spectral(g);
            for &s in &[0.5, 1.0, 2.0] {
                let m = 4.0;
                let r = bernstein_check(&f, m, s).unwrap();
                let cap = 2f64.powf(s.abs());
                assert!(
                    r.shell >= 1.0 / cap - 1e-12 && r.shell <= cap + 1e-12,
                    "trial {trial}: shell ratio {} outside annulus bound {cap}",
                    r.shell
                );
                if let Some(low) = r.low {
                    assert!(low <= cap + 1e-12);
                }
                if let Some(high) = r.high {
                    assert!(high <= cap + 1e-12);
                }
            }
        }
    }

    #[test]
    fn zero_projection_is_an_error() {
        let g = GridSpec::new(1, 64, 4.0).unwrap();
        // constant field has no content in the shell around M = 4
        let f = PhysicalField::from_fn(g, |_| Complex64::new(1.0, 0.0));
        assert!(matches!(
            bernstein_check(&f, 4.0, 1.0),
            Err(Error::ZeroProjection { .. })
        ));
    }
}
