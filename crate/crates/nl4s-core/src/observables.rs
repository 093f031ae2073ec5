//! Conserved functionals, Sobolev and spacetime norms, spectral diagnostics,
//! and the windowed mass-concentration functional.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{is_biharmonic_admissible, Exponent};
use crate::fft::to_spectral;
use crate::field::{PhysicalField, SpectralField};
use crate::i_operator::IMultiplier;
use crate::multiplier::Bracket;
use crate::nonlin::NonlinearityParams;

/// Mass `|u|_L2^2`.
pub fn mass(u: &PhysicalField) -> f64 {
    let w = u.grid().cell_volume();
    u.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * w
}

/// The conserved energy of `i u_t + Δ²u + ε Δu + μ |u|^p u = 0`:
/// `E = 1/2 |Δu|² - ε/2 |∇u|² + μ/(p+2) |u|_{p+2}^{p+2}`.
/// For the focusing equation (ε = 0, μ = -1) this is
/// `1/2 |Δu|² - 1/(p+2) |u|_{p+2}^{p+2}`.
pub fn energy(u: &PhysicalField, params: &NonlinearityParams) -> f64 {
    energy_spectral(&to_spectral(u), u, params)
}

/// Energy when the spectrum is already available (saves one transform).
pub fn energy_spectral(spec: &SpectralField, u: &PhysicalField, params: &NonlinearityParams) -> f64 {
    let kinetic = spec.weighted_l2(|xi2| xi2 * xi2);
    let mut e = 0.5 * kinetic * kinetic;
    if params.epsilon != 0 {
        let grad = spec.weighted_l2(|xi2| xi2);
        e -= 0.5 * params.epsilon as f64 * grad * grad;
    }
    let q = params.p + 2.0;
    let potential = u.lq_norm(q).powf(q);
    e + params.mu as f64 / q * potential
}

/// Sobolev norm of order s: homogeneous `| |ξ|^s û |_2` or inhomogeneous
/// `| (1+|ξ|²)^{s/2} û |_2` (Japanese bracket).
pub fn sobolev_norm(u: &PhysicalField, s: f64, bracket: Bracket) -> f64 {
    sobolev_norm_spectral(&to_spectral(u), s, bracket)
}

pub fn sobolev_norm_spectral(spec: &SpectralField, s: f64, bracket: Bracket) -> f64 {
    match bracket {
        Bracket::Homogeneous => spec.weighted_l2(|xi2| if xi2 == 0.0 { 0.0 } else { xi2.powf(s) }),
        Bracket::Inhomogeneous => spec.weighted_l2(|xi2| (1.0 + xi2).powf(s)),
    }
}

/// Fraction of the spectral L² mass in the top octave (any axis mode above
/// half its Nyquist). The monitor for trustworthiness of a run.
pub fn spectral_tail_fraction(spec: &SpectralField) -> f64 {
    let grid = spec.grid();
    let half = grid.n() as i64 / 4; // |k| > n/4 is the top octave of |k| <= n/2
    let mut tail = 0.0;
    let mut total = 0.0;
    for (i, c) in spec.coeffs().iter().enumerate() {
        let [k1, k2] = grid.k_axes(i);
        let e = c.norm_sqr();
        total += e;
        if k1.abs() > half || k2.abs() > half {
            tail += e;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        tail / total
    }
}

/// Fraction of the mass in the strip within L/8 of the box boundary.
/// Experiments on the periodic box monitor this to certify that the box is a
/// faithful stand-in for the whole space.
pub fn boundary_mass_fraction(u: &PhysicalField) -> f64 {
    let grid = u.grid();
    let l = grid.box_half_width();
    let cut = 7.0 * l / 8.0;
    let mut strip = 0.0;
    let mut total = 0.0;
    for (i, v) in u.values().iter().enumerate() {
        let c = grid.coords(i);
        let e = v.norm_sqr();
        total += e;
        if c[..grid.d_sim()].iter().any(|x| x.abs() >= cut) {
            strip += e;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        strip / total
    }
}

/// Windowed mass and its maximizing center:
/// `max_y ∫_{|x-y| <= alpha} |u|² dx` over grid centers y, computed by
/// circular convolution of |u|² with the ball indicator. Ties go to the
/// lexicographically smallest index.
pub fn concentration(u: &PhysicalField, alpha: f64) -> Result<(f64, Vec<f64>)> {
    let grid = u.grid();
    if !(alpha > 0.0 && alpha <= grid.box_half_width()) {
        return Err(Error::InvalidParameter(format!(
            "concentration radius must lie in (0, L], got {alpha}"
        )));
    }
    let n = grid.n();
    let len = grid.len();

    let mut w: Vec<Complex64> = u.values().iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
    let alpha2 = alpha * alpha;
    let mut ball: Vec<Complex64> = (0..len)
        .map(|i| {
            if grid.periodic_dist_sq(i, 0) <= alpha2 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();

    // raw circular convolution (no unitary scaling needed, 1/n^d at the end)
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let run = |data: &mut Vec<Complex64>, plan: &std::sync::Arc<dyn rustfft::Fft<f64>>| {
        match grid.d_sim() {
            1 => plan.process(data),
            _ => {
                for row in data.chunks_exact_mut(n) {
                    plan.process(row);
                }
                let mut col = vec![Complex64::new(0.0, 0.0); n];
                for j in 0..n {
                    for i in 0..n {
                        col[i] = data[i * n + j];
                    }
                    plan.process(&mut col);
                    for i in 0..n {
                        data[i * n + j] = col[i];
                    }
                }
            }
        }
    };
    run(&mut w, &fwd);
    run(&mut ball, &fwd);
    let mut prod: Vec<Complex64> = w.iter().zip(&ball).map(|(a, b)| a * b).collect();
    run(&mut prod, &inv);
    let scale = grid.cell_volume() / len as f64;

    let mut best = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for (i, v) in prod.iter().enumerate() {
        let val = v.re * scale;
        if val > best_v {
            best_v = val;
            best = i;
        }
    }
    let c = grid.coords(best);
    Ok((best_v.max(0.0), c[..grid.d_sim()].to_vec()))
}

/// One sampled row of the observable time series.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObsSample {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    /// Modified energy E(I_N u) for the configured (N, gamma).
    pub e_iu: f64,
    /// Inhomogeneous H^gamma norm for the configured gamma.
    pub h_gamma: f64,
    /// Homogeneous `|Δu|_L2`.
    pub delta_l2: f64,
    pub sup: f64,
    pub tail_fraction: f64,
    pub boundary_fraction: f64,
    /// Windowed mass within the configured radius.
    pub concentration: f64,
}

/// Time series of observables; times strictly increasing.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ObservableSeries {
    pub samples: Vec<ObsSample>,
}

impl ObservableSeries {
    pub fn push(&mut self, s: ObsSample) -> Result<()> {
        if let Some(last) = self.samples.last() {
            if s.t <= last.t {
                return Err(Error::InvalidParameter(format!(
                    "observable times must increase: {} after {}",
                    s.t, last.t
                )));
            }
        }
        self.samples.push(s);
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|s| {
            s.mass.is_finite()
                && s.energy.is_finite()
                && s.e_iu.is_finite()
                && s.h_gamma.is_finite()
                && s.delta_l2.is_finite()
                && s.sup.is_finite()
        })
    }
}

/// Evaluate all observables for one state; reuses a single forward transform.
pub fn sample_observables(
    t: f64,
    u: &PhysicalField,
    params: &NonlinearityParams,
    gamma: f64,
    i_mult: &IMultiplier,
    concentration_radius: f64,
) -> Result<ObsSample> {
    let spec = to_spectral(u);
    let e_iu = crate::i_operator::modified_energy_with_spec(u, &spec, i_mult, params)?;
    let (conc, _) = concentration(u, concentration_radius)?;
    Ok(ObsSample {
        t,
        mass: mass(u),
        energy: energy_spectral(&spec, u, params),
        e_iu,
        h_gamma: sobolev_norm_spectral(&spec, gamma, Bracket::Inhomogeneous),
        delta_l2: sobolev_norm_spectral(&spec, 2.0, Bracket::Homogeneous),
        sup: u.sup_norm(),
        tail_fraction: spectral_tail_fraction(&spec),
        boundary_fraction: boundary_mass_fraction(u),
        concentration: conc,
    })
}

/// `L^p_t L^q_x` norm of a snapshot sequence over its time span, with
/// trapezoid quadrature in time (max over samples when p = ∞).
pub fn spacetime_norm(
    snapshots: &[(f64, PhysicalField)],
    p_t: Exponent,
    q_x: f64,
) -> Result<f64> {
    spacetime_from_values(
        &snapshots.iter().map(|(t, _)| *t).collect::<Vec<_>>(),
        &snapshots
            .iter()
            .map(|(_, u)| if q_x.is_infinite() { u.sup_norm() } else { u.lq_norm(q_x) })
            .collect::<Vec<_>>(),
        p_t,
    )
}

/// Trapezoid `L^p_t` quadrature of pre-computed spatial norms.
pub fn spacetime_from_values(times: &[f64], norms: &[f64], p_t: Exponent) -> Result<f64> {
    if times.len() < 2 {
        return Err(Error::TooFewSamples {
            got: times.len(),
            need: 2,
        });
    }
    match p_t {
        Exponent::Infinity => Ok(norms.iter().cloned().fold(0.0, f64::max)),
        Exponent::Finite(p) => {
            let p = crate::exponents::rational_to_f64(&p);
            let mut acc = 0.0;
            for i in 1..times.len() {
                let dt = times[i] - times[i - 1];
                acc += 0.5 * dt * (norms[i - 1].powf(p) + norms[i].powf(p));
            }
            Ok(acc.powf(1.0 / p))
        }
    }
}

/// Finite-catalogue estimate of `sup_{(p,q)} |<Δ>I u|_{L^p_t L^q_x}`:
/// the max over the supplied biharmonic-admissible pairs. A finite max lower
/// bounds the sup, which is what trend tracking needs.
pub fn z_i_estimate(
    snapshots: &[(f64, PhysicalField)],
    i_mult: &IMultiplier,
    catalogue: &[(Exponent, Exponent, u32)],
) -> Result<f64> {
    if catalogue.is_empty() {
        return Err(Error::EmptyCatalogue);
    }
    for (p, q, d) in catalogue {
        if !is_biharmonic_admissible(p, q, *d) {
            return Err(Error::InvalidParameter(format!(
                "catalogue pair ({p:?}, {q:?}) is not biharmonic admissible in d = {d}"
            )));
        }
    }
    if snapshots.len() < 2 {
        return Err(Error::TooFewSamples {
            got: snapshots.len(),
            need: 2,
        });
    }
    // <Δ> I u per snapshot, then the norms per pair
    let grid = snapshots[0].1.grid();
    let bracket_i = crate::multiplier::Multiplier::from_radial(grid, |r| {
        (1.0 + r * r) * i_mult.symbol_at(r)
    })?;
    let fields: Vec<PhysicalField> = crate::exec::map_slice(snapshots, |(_, u)| {
        bracket_i.apply(u).expect("grid checked above")
    });
    let times: Vec<f64> = snapshots.iter().map(|(t, _)| *t).collect();
    let mut best: f64 = 0.0;
    for (p, q, _) in catalogue {
        let q_f = match q {
            Exponent::Infinity => f64::INFINITY,
            Exponent::Finite(r) => crate::exponents::rational_to_f64(r),
        };
        let norms: Vec<f64> = fields
            .iter()
            .map(|f| if q_f.is_infinite() { f.sup_norm() } else { f.lq_norm(q_f) })
            .collect();
        best = best.max(spacetime_from_values(&times, &norms, p.clone())?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSampler;
    use crate::grid::GridSpec;

    fn params1d() -> NonlinearityParams {
        NonlinearityParams::mass_critical(1)
    }

    #[test]
    fn zero_field_has_zero_functionals() {
        let g = GridSpec::new(1, 64, 5.0).unwrap();
        let u = PhysicalField::zeros(g);
        assert_eq!(mass(&u), 0.0);
        assert_eq!(energy(&u, &params1d()), 0.0);
        let (v, c) = concentration(&u, 1.0).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(c[0], -g.box_half_width()); // first index on total tie
    }

    #[test]
    fn constant_field_closed_forms() {
        let g = GridSpec::new(1, 64, 5.0).unwrap();
        let a = Complex64::new(0.8, 0.3);
        let u = PhysicalField::from_fn(g, |_| a);
        let vol = 2.0 * g.box_half_width();
        let p = params1d().p;
        assert!((mass(&u) - a.norm_sqr() * vol).abs() < 1e-12);
        let expect_e = -vol * a.norm().powf(p + 2.0) / (p + 2.0);
        assert!((energy(&u, &params1d()) - expect_e).abs() < 1e-10 * expect_e.abs());
    }

    #[test]
    fn energy_invariant_under_translation_and_phase() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let u = FieldSampler::new(4).localized(g);
        let e0 = energy(&u, &params1d());
        let shifted = u.circular_shift_index(0, 17);
        let phased = u.scale(Complex64::cis(1.234));
        assert!((energy(&shifted, &params1d()) - e0).abs() < 1e-9 * e0.abs().max(1.0));
        assert!((energy(&phased, &params1d()) - e0).abs() < 1e-10 * e0.abs().max(1.0));
    }

    #[test]
    fn concentration_monotone_and_bounded() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let u = FieldSampler::new(9).localized(g);
        let m = mass(&u);
        let mut prev = 0.0;
        for &alpha in &[0.5, 1.0, 2.0, 5.0, 10.0] {
            let (v, _) = concentration(&u, alpha).unwrap();
            assert!(v + 1e-12 >= prev, "not monotone at alpha {alpha}");
            assert!(v <= m * (1.0 + 1e-10), "exceeds mass at alpha {alpha}");
            prev = v;
        }
    }

    #[test]
    fn concentration_finds_translated_bump() {
        // window radius with ~99.99% of the bump mass inside: wide enough for
        // the value to approximate the mass, narrow enough that the maximum
        // over centers is sharply located
        let g = GridSpec::new(1, 256, 10.0).unwrap();
        let x0 = 3.0;
        let u = PhysicalField::from_fn(g, |x| {
            Complex64::new((-(x[0] - x0) * (x[0] - x0)).exp(), 0.0)
        });
        let m = mass(&u);
        let (v, c) = concentration(&u, 2.5).unwrap();
        assert!((v - m).abs() < 1e-4 * m, "windowed {v} vs mass {m}");
        assert!((c[0] - x0).abs() <= g.dx() + 1e-12, "center {}", c[0]);
    }

    #[test]
    fn two_far_bumps_count_once() {
        let g = GridSpec::new(1, 256, 16.0).unwrap();
        let u = PhysicalField::from_fn(g, |x| {
            let a = (-(x[0] + 8.0) * (x[0] + 8.0)).exp();
            let b = (-(x[0] - 8.0) * (x[0] - 8.0)).exp();
            Complex64::new(a + b, 0.0)
        });
        let m = mass(&u);
        let (v, _) = concentration(&u, 3.0).unwrap();
        assert!((v - 0.5 * m).abs() < 1e-3 * m, "v = {v}, mass = {m}");
    }

    #[test]
    fn fubini_for_p_equals_q_2() {
        let g = GridSpec::new(1, 64, 5.0).unwrap();
        let mut s = FieldSampler::new(12);
        let snaps: Vec<(f64, PhysicalField)> =
            (0..9).map(|i| (0.1 * i as f64, s.localized(g))).collect();
        let via_norms = spacetime_norm(
            &snaps,
            Exponent::finite_int(2),
            2.0,
        )
        .unwrap();
        // direct double sum with the same trapezoid weights
        let mut acc = 0.0;
        for i in 1..snaps.len() {
            let dt = snaps[i].0 - snaps[i - 1].0;
            let a: f64 = mass(&snaps[i - 1].1);
            let b: f64 = mass(&snaps[i].1);
            acc += 0.5 * dt * (a + b);
        }
        assert!((via_norms - acc.sqrt()).abs() < 1e-12 * acc.sqrt());
    }

    #[test]
    fn constant_snapshot_spacetime_norm() {
        let g = GridSpec::new(1, 64, 5.0).unwrap();
        let u = FieldSampler::new(13).localized(g);
        let snaps: Vec<(f64, PhysicalField)> = (0..5).map(|i| (0.25 * i as f64, u.clone())).collect();
        let p = 4.0;
        let norm = spacetime_norm(&snaps, Exponent::finite_int(4), 2.0).unwrap();
        let expect = 1f64.powf(1.0 / p) * u.l2_norm();
        assert!((norm - expect).abs() < 1e-10 * expect);
    }
}
