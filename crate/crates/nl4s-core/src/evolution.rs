//! Split-step time integration of `i u_t + Δ²u + ε Δu + μ |u|^p u = 0`.
//!
//! Both substeps are exact maps: the linear flow is the unimodular spectral
//! phase `exp(i τ (|ξ|⁴ - ε |ξ|²))` and the nonlinear flow is the pointwise
//! rotation `u exp(i μ τ |u|^p)` (|u| conserved). The symmetric composition
//! `L(τ/2) N(τ) L(τ/2)` is second order; mass is conserved exactly by each
//! substep, so any drift is pure roundoff.
//!
//! Steps adapt to the nonlinear rotation speed, `τ = min(dt0, c/(1+|u|_∞^p))`,
//! and shrink automatically toward a blowup, where the run halts on the first
//! stop rule (norm growth, step underflow, or spectral-tail pollution) since
//! a fixed grid cannot follow self-similar collapse. Blowup is then
//! summarized by fitting `|u(t)|_{H^γ} ~ C (T*-t)^(-β)` with T* free.

use std::collections::VecDeque;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::{to_physical, to_spectral};
use crate::field::PhysicalField;
use crate::grid::GridSpec;
use crate::i_operator::{build_m, IMultiplier};
use crate::nonlin::NonlinearityParams;
use crate::observables::{sample_observables, ObsSample, ObservableSeries};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StopRules {
    /// Stop when `|u|_{H^γ}` exceeds this multiple of its initial value.
    pub norm_factor: f64,
    /// Stop when the adaptive step falls below this.
    pub dt_min: f64,
    /// Stop when the top-octave spectral fraction exceeds this.
    pub tail_stop: f64,
    /// Mark the run untrusted when the tail fraction exceeds this.
    pub tail_untrusted: f64,
}

impl Default for StopRules {
    fn default() -> Self {
        StopRules {
            norm_factor: 1e3,
            dt_min: 1e-12,
            tail_stop: 1e-3,
            tail_untrusted: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub params: NonlinearityParams,
    /// Upper bound on the step.
    pub dt0: f64,
    /// CFL-like factor: `τ <= c_dt / (1 + |u|_∞^p)`. Defaults to `0.1 dt0`.
    pub c_dt: f64,
    pub t_max: f64,
    /// Observable sampling interval (time).
    pub sample_dt: f64,
    /// Stored-snapshot interval (time).
    pub snapshot_dt: f64,
    /// Also sample every this many steps, keeping the series dense while the
    /// adaptive step collapses toward a singularity.
    pub sample_every_steps: usize,
    /// Regularity used for the `H^γ` column and the blowup fit.
    pub gamma: f64,
    /// Smoothing cutoff for the modified-energy column.
    pub n_cut: f64,
    /// Radius for the concentration column.
    pub concentration_radius: f64,
    /// How many most recent sampled states to retain for end-of-run analysis.
    pub tail_ring: usize,
    pub stop: StopRules,
}

impl EvolveConfig {
    pub fn with_defaults(grid: GridSpec, params: NonlinearityParams, t_max: f64) -> Self {
        let dt0 = 0.01;
        EvolveConfig {
            params,
            dt0,
            c_dt: 0.1 * dt0,
            t_max,
            sample_dt: (t_max / 200.0).min(0.01),
            snapshot_dt: t_max / 50.0,
            sample_every_steps: 16,
            gamma: 1.5,
            n_cut: 2f64.powi((grid.xi_max() / 4.0).log2().floor() as i32),
            concentration_radius: grid.box_half_width() / 8.0,
            tail_ring: 64,
            stop: StopRules::default(),
        }
    }

    pub fn validate(&self, grid: GridSpec) -> Result<()> {
        if !(self.dt0 > 0.0 && self.c_dt > 0.0) {
            return Err(Error::InvalidParameter("dt0 and c_dt must be positive".into()));
        }
        if !(self.t_max > 0.0) {
            return Err(Error::InvalidParameter("t_max must be positive".into()));
        }
        if !(self.sample_dt > 0.0 && self.snapshot_dt > 0.0) {
            return Err(Error::InvalidParameter("cadences must be positive".into()));
        }
        if !(self.gamma > 0.0 && self.gamma < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (0, 2), got {}",
                self.gamma
            )));
        }
        if !(self.n_cut > 0.0) {
            return Err(Error::InvalidParameter("n_cut must be positive".into()));
        }
        if !(self.concentration_radius > 0.0
            && self.concentration_radius <= grid.box_half_width())
        {
            return Err(Error::InvalidParameter(
                "concentration radius must lie in (0, L]".into(),
            ));
        }
        Ok(())
    }
}

/// Exact linear flow: spectral phase `exp(i τ (|ξ|⁴ - ε |ξ|²))`.
pub fn linear_step(u: &PhysicalField, tau: f64, params: &NonlinearityParams) -> PhysicalField {
    let grid = u.grid();
    let eps = params.epsilon as f64;
    let mut spec = to_spectral(u);
    for (i, c) in spec.coeffs_mut().iter_mut().enumerate() {
        let xi2 = grid.xi_sq(i);
        *c *= Complex64::cis(tau * (xi2 * xi2 - eps * xi2));
    }
    to_physical(&spec)
}

/// Exact nonlinear flow: pointwise phase rotation `u exp(i μ τ |u|^p)`;
/// the modulus is untouched, bit for bit.
pub fn nonlinear_step(u: &PhysicalField, tau: f64, params: &NonlinearityParams) -> PhysicalField {
    let mu = params.mu as f64;
    let p = params.p;
    PhysicalField::from_raw(
        u.grid(),
        u.values()
            .iter()
            .map(|&z| {
                let a = z.norm();
                if a == 0.0 {
                    z
                } else {
                    z * Complex64::cis(mu * tau * a.powf(p))
                }
            })
            .collect(),
    )
}

fn strang_step(u: &PhysicalField, tau: f64, params: &NonlinearityParams) -> PhysicalField {
    let half = linear_step(u, tau / 2.0, params);
    let rotated = nonlinear_step(&half, tau, params);
    linear_step(&rotated, tau / 2.0, params)
}

/// Apply a recorded step schedule; negating and reversing a trajectory's
/// schedule retraces it to roundoff.
pub fn evolve_schedule(
    u0: &PhysicalField,
    taus: &[f64],
    params: &NonlinearityParams,
) -> PhysicalField {
    let mut u = u0.clone();
    for &tau in taus {
        u = strang_step(&u, tau, params);
    }
    u
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopCause {
    TMaxReached,
    NormThreshold,
    DtUnderflow,
    SpectralTail,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub config: EvolveConfig,
    pub series: ObservableSeries,
    /// Sparse stored fields at the snapshot cadence (always includes t = 0
    /// and the final state).
    pub snapshots: Vec<(f64, PhysicalField)>,
    /// Dense ring of the most recent sampled states.
    pub tail_ring: VecDeque<(f64, PhysicalField)>,
    pub final_state: (f64, PhysicalField),
    pub stop: StopCause,
    /// Set when the spectral tail ever exceeded the untrusted threshold.
    pub untrusted: bool,
    /// The executed step schedule.
    pub taus: Vec<f64>,
}

impl Trajectory {
    pub fn initial_h_gamma(&self) -> f64 {
        self.series.samples[0].h_gamma
    }

    /// Mass drift relative to the initial mass, max over samples.
    pub fn mass_drift(&self) -> f64 {
        let m0 = self.series.samples[0].mass;
        self.series
            .samples
            .iter()
            .map(|s| (s.mass - m0).abs())
            .fold(0.0, f64::max)
            / m0
    }

    /// Energy drift relative to `max(|E0|, |ΔIu0|² scale)`, max over samples.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.series.samples[0].energy;
        let scale = e0
            .abs()
            .max(self.series.samples[0].delta_l2.powi(2))
            .max(f64::MIN_POSITIVE);
        self.series
            .samples
            .iter()
            .map(|s| (s.energy - e0).abs())
            .fold(0.0, f64::max)
            / scale
    }
}

pub fn strang_evolve(u0: &PhysicalField, config: &EvolveConfig) -> Result<Trajectory> {
    let grid = u0.grid();
    config.validate(grid)?;
    let params = config.params;
    let i_mult: IMultiplier = build_m(grid, config.n_cut, config.gamma)?;

    let mut u = u0.clone();
    let mut t = 0.0f64;
    let mut series = ObservableSeries::default();
    let mut snapshots: Vec<(f64, PhysicalField)> = Vec::new();
    let mut ring: VecDeque<(f64, PhysicalField)> = VecDeque::new();
    let mut taus: Vec<f64> = Vec::new();
    let mut untrusted = false;

    let first = sample_observables(
        t,
        &u,
        &params,
        config.gamma,
        &i_mult,
        config.concentration_radius,
    )?;
    let h0 = first.h_gamma.max(f64::MIN_POSITIVE);
    series.push(first).expect("first sample");
    snapshots.push((t, u.clone()));
    ring.push_back((t, u.clone()));

    let mut next_sample = config.sample_dt;
    let mut next_snapshot = config.snapshot_dt;
    let mut steps_since_sample = 0usize;
    let mut stop = None;

    while stop.is_none() {
        if t >= config.t_max {
            stop = Some(StopCause::TMaxReached);
            break;
        }
        let sup = u.sup_norm();
        let adaptive = config.c_dt / (1.0 + sup.powf(params.p));
        let mut tau = config.dt0.min(adaptive);
        if tau < config.stop.dt_min {
            stop = Some(StopCause::DtUnderflow);
            break;
        }
        // clip to the next event boundary and land on it exactly
        let mut boundary: Option<f64> = None;
        let gap_floor = 1e-14 * t.abs().max(1.0);
        for &b in &[next_sample, next_snapshot, config.t_max] {
            let gap = b - t;
            if gap > gap_floor && gap <= tau * (1.0 + 1e-12) {
                boundary = Some(match boundary {
                    Some(prev) => prev.min(b),
                    None => b,
                });
            }
        }
        if let Some(b) = boundary {
            tau = b - t;
        }

        let next = strang_step(&u, tau, &params);
        if !next.is_finite() {
            return Err(Error::IntegrationFailure {
                t,
                last_good: Box::new(u),
            });
        }
        u = next;
        t = match boundary {
            Some(b) => b,
            None => t + tau,
        };
        taus.push(tau);
        steps_since_sample += 1;

        let due_sample = t + 1e-12 >= next_sample
            || steps_since_sample >= config.sample_every_steps
            || t >= config.t_max;
        if due_sample {
            let sample = sample_observables(
                t,
                &u,
                &params,
                config.gamma,
                &i_mult,
                config.concentration_radius,
            )?;
            let tail = sample.tail_fraction;
            let h = sample.h_gamma;
            series.push(sample).expect("time advanced");
            ring.push_back((t, u.clone()));
            while ring.len() > config.tail_ring.max(2) {
                ring.pop_front();
            }
            steps_since_sample = 0;
            while t + 1e-12 >= next_sample {
                next_sample += config.sample_dt;
            }
            if tail > config.stop.tail_untrusted {
                untrusted = true;
            }
            if tail > config.stop.tail_stop {
                stop = Some(StopCause::SpectralTail);
            }
            if h > config.stop.norm_factor * h0 {
                stop = Some(StopCause::NormThreshold);
            }
        }
        if t + 1e-12 >= next_snapshot {
            snapshots.push((t, u.clone()));
            while t + 1e-12 >= next_snapshot {
                next_snapshot += config.snapshot_dt;
            }
        }
        if t >= config.t_max && stop.is_none() {
            stop = Some(StopCause::TMaxReached);
        }
    }

    // make sure the final state is sampled and stored
    if series.samples.last().map(|s| s.t) != Some(t) {
        if let Ok(sample) = sample_observables(
            t,
            &u,
            &params,
            config.gamma,
            &i_mult,
            config.concentration_radius,
        ) {
            let _ = series.push(sample);
            ring.push_back((t, u.clone()));
        }
    }
    if snapshots.last().map(|s| s.0) != Some(t) {
        snapshots.push((t, u.clone()));
    }

    Ok(Trajectory {
        config: config.clone(),
        series,
        snapshots,
        tail_ring: ring,
        final_state: (t, u),
        stop: stop.unwrap_or(StopCause::TMaxReached),
        untrusted,
        taus,
    })
}

/// Blowup summary from a halted trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct BlowupReport {
    pub detected: bool,
    /// Fitted singular time (NaN when not detected).
    pub t_star_estimate: f64,
    /// Fitted β in `|u|_{H^γ} ~ C (T*-t)^(-β)` (NaN when not detected).
    pub rate_exponent: f64,
    pub fit_residual: f64,
    pub samples_used: usize,
    /// Concentration value and radius at the last sample.
    pub last_concentration: f64,
    pub concentration_radius: f64,
    pub stop: StopCause,
}

/// Samples enter the fit once `|u|_{H^γ}` exceeds this multiple of its
/// initial value, trimming the pre-asymptotic transient.
pub const FIT_THRESHOLD_FACTOR: f64 = 2.0;
/// And only the last this-many doublings of the norm are kept: earlier
/// samples carry transient curvature that biases the exponent low.
pub const FIT_LAST_OCTAVES: f64 = 4.0;
pub const FIT_MIN_SAMPLES: usize = 8;
/// A relative dip beyond this within the fit window classifies the series as
/// non-monotone, hence not a blowup approach.
const FIT_DIP_TOLERANCE: f64 = 0.01;

pub fn detect_blowup_fit(traj: &Trajectory) -> BlowupReport {
    let samples = &traj.series.samples;
    let h0 = samples[0].h_gamma;
    let last = samples.last().expect("series nonempty");
    let not_detected = |stop| BlowupReport {
        detected: false,
        t_star_estimate: f64::NAN,
        rate_exponent: f64::NAN,
        fit_residual: f64::NAN,
        samples_used: 0,
        last_concentration: last.concentration,
        concentration_radius: traj.config.concentration_radius,
        stop,
    };
    if traj.stop == StopCause::TMaxReached {
        return not_detected(traj.stop);
    }
    let h_max = samples.iter().map(|s| s.h_gamma).fold(0.0, f64::max);
    let cut = (FIT_THRESHOLD_FACTOR * h0).max(h_max / 2f64.powf(FIT_LAST_OCTAVES));
    let post: Vec<&ObsSample> = samples.iter().filter(|s| s.h_gamma >= cut).collect();
    if post.len() < FIT_MIN_SAMPLES {
        return not_detected(traj.stop);
    }
    // non-monotone growth past the threshold classifies as no blowup
    for w in post.windows(2) {
        if w[1].h_gamma < w[0].h_gamma * (1.0 - FIT_DIP_TOLERANCE) {
            return not_detected(traj.stop);
        }
    }
    let times: Vec<f64> = post.iter().map(|s| s.t).collect();
    let values: Vec<f64> = post.iter().map(|s| s.h_gamma).collect();
    match crate::fit::fit_power_law(&times, &values) {
        Some(fit) if fit.t_star > traj.final_state.0 && fit.beta > 0.0 => BlowupReport {
            detected: true,
            t_star_estimate: fit.t_star,
            rate_exponent: fit.beta,
            fit_residual: fit.residual,
            samples_used: post.len(),
            last_concentration: last.concentration,
            concentration_radius: traj.config.concentration_radius,
            stop: traj.stop,
        },
        _ => not_detected(traj.stop),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub lambda: f64,
    pub t_compare: f64,
    /// Relative L² discrepancy between the rescaled evolution and the
    /// original at the paired times.
    pub discrepancy: f64,
    /// Terminal L² change when the original run is repeated at half step.
    pub richardson_estimate: f64,
}

/// Exercise the scale invariance `u_λ(t, x) = λ^{-d/2} u(λ^{-4} t, x/λ)`:
/// evolve `u0` on its grid to `t_max`, evolve the rescaled data on the
/// λ-scaled box to `λ⁴ t_max`, and compare the paired states.
pub fn scaling_test(
    u0: &PhysicalField,
    lambda: f64,
    config: &EvolveConfig,
) -> Result<ScalingReport> {
    if !(lambda == 1.0 || lambda == 2.0 || lambda == 0.5) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be one of {{1/2, 1, 2}}, got {lambda}"
        )));
    }
    let grid = u0.grid();
    let d = grid.d_sim();
    let base = strang_evolve(u0, config)?;
    if base.stop != StopCause::TMaxReached {
        return Err(Error::BlowupInWindow {
            t: base.final_state.0,
            cause: format!("{:?}", base.stop),
        });
    }

    // rescaled data on the λ-scaled box: same samples, scaled amplitudes
    let grid_l = GridSpec::new(d, grid.n(), lambda * grid.box_half_width())?;
    let amp = lambda.powf(-(d as f64) / 2.0);
    let v0 = PhysicalField::new(
        grid_l,
        u0.values().iter().map(|z| z * amp).collect(),
    )?;
    let s4 = lambda.powi(4);
    let mut cfg_l = config.clone();
    cfg_l.t_max = s4 * config.t_max;
    cfg_l.dt0 = s4 * config.dt0;
    cfg_l.c_dt = s4 * config.c_dt;
    cfg_l.sample_dt = s4 * config.sample_dt;
    cfg_l.snapshot_dt = s4 * config.snapshot_dt;
    cfg_l.concentration_radius = (lambda * config.concentration_radius).min(grid_l.box_half_width());
    cfg_l.n_cut = config.n_cut / lambda;
    let scaled = strang_evolve(&v0, &cfg_l)?;

    // compare λ^{d/2} v(λ⁴ T) against u(T), pointwise on matching samples
    let u_t = &base.final_state.1;
    let v_t = &scaled.final_state.1;
    let back = PhysicalField::new(
        grid,
        v_t.values().iter().map(|z| z / amp).collect(),
    )?;
    let discrepancy = back.sub(u_t)?.l2_norm() / u_t.l2_norm();

    // Richardson error gauge for the original run
    let mut cfg_half = config.clone();
    cfg_half.dt0 = config.dt0 / 2.0;
    cfg_half.c_dt = config.c_dt / 2.0;
    let half = strang_evolve(u0, &cfg_half)?;
    let richardson_estimate =
        half.final_state.1.sub(u_t)?.l2_norm() / u_t.l2_norm();

    Ok(ScalingReport {
        lambda,
        t_compare: config.t_max,
        discrepancy,
        richardson_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSampler;
    use crate::multiplier::Bracket;
    use crate::observables::{mass, sobolev_norm};

    fn small_grid() -> GridSpec {
        GridSpec::new(1, 128, 10.0).unwrap()
    }

    fn gaussian(grid: GridSpec, a: f64) -> PhysicalField {
        PhysicalField::from_fn(grid, |x| Complex64::new(a * (-x[0] * x[0]).exp(), 0.0))
    }

    #[test]
    fn substeps_are_identity_at_zero_tau() {
        let g = small_grid();
        let u = FieldSampler::new(31).localized(g);
        let params = NonlinearityParams::mass_critical(1);
        assert!(linear_step(&u, 0.0, &params).rel_l2_distance(&u).unwrap() < 1e-13);
        assert_eq!(nonlinear_step(&u, 0.0, &params).values(), u.values());
    }

    #[test]
    fn linear_step_phases_plane_wave() {
        let g = small_grid();
        let fund = g.xi_fundamental();
        let k = 4.0 * fund;
        let u = PhysicalField::from_fn(g, |x| Complex64::cis(k * x[0]));
        let params = NonlinearityParams::mass_critical(1);
        let tau = 0.37;
        let out = linear_step(&u, tau, &params);
        let phase = Complex64::cis(tau * k.powi(4));
        let err = out
            .values()
            .iter()
            .zip(u.values())
            .map(|(o, v)| (o - v * phase).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-11);
    }

    #[test]
    fn linear_step_is_unitary() {
        let g = small_grid();
        let u = FieldSampler::new(32).spectral(g);
        let params = NonlinearityParams::new(8.0, -1, 1).unwrap();
        let out = linear_step(&u, 0.83, &params);
        assert!((out.l2_norm() - u.l2_norm()).abs() < 1e-12 * u.l2_norm());
    }

    #[test]
    fn nonlinear_step_preserves_modulus_exactly() {
        let g = small_grid();
        let u = FieldSampler::new(33).localized(g);
        let params = NonlinearityParams::mass_critical(1);
        let out = nonlinear_step(&u, 0.5, &params);
        for (a, b) in out.values().iter().zip(u.values()) {
            // pure phase rotation: modulus preserved to a couple of ulps
            assert!((a.norm_sqr() - b.norm_sqr()).abs() <= 4.0 * f64::EPSILON * b.norm_sqr());
        }
        // constant field closed form
        let a = Complex64::new(0.5, 0.2);
        let c = PhysicalField::from_fn(g, |_| a);
        let tau = 0.3;
        let out = nonlinear_step(&c, tau, &params);
        let expect = a * Complex64::cis(-tau * a.norm().powf(8.0));
        assert!((out.values()[7] - expect).norm() < 1e-15);
    }

    #[test]
    fn evolve_conserves_mass_and_reverses() {
        let g = small_grid();
        let u0 = gaussian(g, 0.6);
        let params = NonlinearityParams::mass_critical(1);
        let mut cfg = EvolveConfig::with_defaults(g, params, 0.2);
        cfg.dt0 = 5e-3;
        cfg.c_dt = 5e-4;
        let traj = strang_evolve(&u0, &cfg).unwrap();
        assert_eq!(traj.stop, StopCause::TMaxReached);
        assert!(traj.mass_drift() < 1e-10, "mass drift {}", traj.mass_drift());

        // time reversal: negated, reversed schedule returns to u0
        let rev: Vec<f64> = traj.taus.iter().rev().map(|t| -t).collect();
        let back = evolve_schedule(&traj.final_state.1, &rev, &params);
        let err = back.rel_l2_distance(&u0).unwrap();
        assert!(err < 1e-9, "reversal error {err}");
    }

    #[test]
    fn linear_flow_preserves_multiplier_norms() {
        let g = small_grid();
        let u0 = FieldSampler::new(34).localized(g);
        let params = NonlinearityParams::mass_critical(1);
        let out = linear_step(&u0, 0.123, &params);
        for &s in &[0.5, 1.5, 2.0] {
            let a = sobolev_norm(&u0, s, Bracket::Inhomogeneous);
            let b = sobolev_norm(&out, s, Bracket::Inhomogeneous);
            assert!((a - b).abs() < 1e-11 * a, "H^{s} changed: {a} vs {b}");
        }
    }

    #[test]
    fn small_amplitude_stays_near_linear_flow() {
        let g = small_grid();
        let amp = 1e-2;
        let u0 = gaussian(g, amp);
        let params = NonlinearityParams::mass_critical(1);
        let mut cfg = EvolveConfig::with_defaults(g, params, 0.1);
        cfg.dt0 = 1e-3;
        cfg.c_dt = 1e-3;
        let traj = strang_evolve(&u0, &cfg).unwrap();
        let mut linear = u0.clone();
        for &tau in &traj.taus {
            linear = linear_step(&linear, tau, &params);
        }
        let dist = traj.final_state.1.sub(&linear).unwrap().l2_norm();
        // nonlinear phase accumulates like amplitude^(p+1) * T
        let bound = 100.0 * amp.powf(params.p + 1.0) * cfg.t_max * (2.0 * g.box_half_width()).sqrt();
        assert!(dist < bound.max(1e-12), "dist {dist} bound {bound}");
    }

    #[test]
    fn richardson_order_is_two() {
        let g = small_grid();
        // width-2 bump keeps the active band at tau |xi|^4 << 1, the clean
        // second-order regime for the splitting error
        let u0 = PhysicalField::from_fn(g, |x| {
            Complex64::new(0.8 * (-x[0] * x[0] / 4.0).exp(), 0.0)
        });
        let params = NonlinearityParams::mass_critical(1);
        let run = |dt: f64| {
            let mut cfg = EvolveConfig::with_defaults(g, params, 0.1);
            cfg.dt0 = dt;
            cfg.c_dt = f64::INFINITY; // fixed-step mode
            cfg.sample_dt = 0.05;
            cfg.snapshot_dt = 0.05;
            strang_evolve(&u0, &cfg).unwrap().final_state.1
        };
        let dt = 1e-3;
        let u1 = run(dt);
        let u2 = run(dt / 2.0);
        let u4 = run(dt / 4.0);
        let e1 = u1.sub(&u2).unwrap().l2_norm();
        let e2 = u2.sub(&u4).unwrap().l2_norm();
        let order = (e1 / e2).log2();
        assert!(
            (1.8..=2.2).contains(&order),
            "order {order} (e1 {e1}, e2 {e2})"
        );
    }

    #[test]
    fn synthetic_blowup_fit_recovers_parameters() {
        let times: Vec<f64> = (0..300).map(|i| 0.99 * i as f64 / 299.0).collect();
        let values: Vec<f64> = times.iter().map(|t| (1.0 - t).powf(-0.5)).collect();
        let fit = crate::fit::fit_power_law(&times, &values).unwrap();
        assert!((fit.t_star - 1.0).abs() <= 0.01);
        assert!((fit.beta - 0.5).abs() <= 0.02);
    }

    #[test]
    fn bounded_run_is_not_blowup() {
        let g = small_grid();
        let u0 = gaussian(g, 0.4);
        let params = NonlinearityParams::mass_critical(1);
        let mut cfg = EvolveConfig::with_defaults(g, params, 0.1);
        cfg.dt0 = 2e-3;
        let traj = strang_evolve(&u0, &cfg).unwrap();
        let report = detect_blowup_fit(&traj);
        assert!(!report.detected);
    }

    #[test]
    fn scaling_lambda_one_is_exact() {
        let g = small_grid();
        let u0 = gaussian(g, 0.5);
        let params = NonlinearityParams::mass_critical(1);
        let mut cfg = EvolveConfig::with_defaults(g, params, 0.05);
        cfg.dt0 = 1e-3;
        let report = scaling_test(&u0, 1.0, &cfg).unwrap();
        assert_eq!(report.discrepancy, 0.0);
    }

    #[test]
    fn rescaled_data_keeps_l2_norm() {
        let g = small_grid();
        let u0 = gaussian(g, 0.5);
        let lambda = 2.0f64;
        let grid_l = GridSpec::new(1, g.n(), lambda * g.box_half_width()).unwrap();
        let amp = lambda.powf(-0.5);
        let v0 = PhysicalField::new(grid_l, u0.values().iter().map(|z| z * amp).collect()).unwrap();
        assert!((mass(&v0) - mass(&u0)).abs() < 1e-14 * mass(&u0));
    }
}
