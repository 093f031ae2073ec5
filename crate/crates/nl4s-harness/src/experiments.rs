//! The experiment runner: materializes initial data, drives the core
//! solvers, emits CSV series and binary snapshots, and summarizes each run
//! in a hashed manifest. Exit status of the CLI mirrors `pass`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;

use nl4s_core::evolution::{
    detect_blowup_fit, scaling_test, strang_evolve, StopCause, Trajectory,
};
use nl4s_core::exponents;
use nl4s_core::fft::{align_fields, evaluate_at, to_spectral};
use nl4s_core::field::FieldSampler;
use nl4s_core::ground_state::{gaussian_init, gn_verify, petviashvili_solve, GroundStateRecord};
use nl4s_core::i_operator::{almost_conservation_sweep, build_m};
use nl4s_core::multiplier::Bracket;
use nl4s_core::observables::{concentration, sobolev_norm, ObservableSeries};
use nl4s_core::{GridSpec, PhysicalField};

use crate::config::{validate_config, ExperimentKind, InitialData, RunConfig};
use crate::manifest::{now_unix, RunManifest, MANIFEST_NAME};
use crate::snapshot::{self, SnapshotMeta};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid config: {0:?}")]
    InvalidConfig(Vec<String>),
    #[error(transparent)]
    Core(#[from] nl4s_core::Error),
    #[error(transparent)]
    Snapshot(#[from] crate::snapshot::SnapshotError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Everything a finished run leaves behind.
pub struct RunOutput {
    pub manifest: RunManifest,
    pub dir: PathBuf,
}

struct Ctx {
    cfg: RunConfig,
    grid: GridSpec,
    dir: PathBuf,
    artifacts: Vec<PathBuf>,
    failures: Vec<String>,
    advisories: Vec<String>,
}

impl Ctx {
    fn artifact(&mut self, name: &str) -> PathBuf {
        let p = self.dir.join(name);
        self.artifacts.push(p.clone());
        p
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        if !ok {
            self.fail(msg);
        }
    }

    fn save_field(&mut self, name: &str, f: &PhysicalField, meta: SnapshotMeta) -> Result<()> {
        let p = self.artifact(name);
        snapshot::save(&p, f, meta)?;
        Ok(())
    }

    fn write_series_csv(&mut self, name: &str, series: &ObservableSeries) -> Result<()> {
        let p = self.artifact(name);
        let mut w = csv::Writer::from_path(&p)?;
        w.write_record([
            "t",
            "mass",
            "energy",
            "e_iu",
            "h_gamma",
            "delta_l2",
            "sup",
            "tail_fraction",
            "boundary_fraction",
            "concentration",
        ])?;
        for s in &series.samples {
            w.write_record(&[
                s.t.to_string(),
                s.mass.to_string(),
                s.energy.to_string(),
                s.e_iu.to_string(),
                s.h_gamma.to_string(),
                s.delta_l2.to_string(),
                s.sup.to_string(),
                s.tail_fraction.to_string(),
                s.boundary_fraction.to_string(),
                s.concentration.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Solve (or load) the ground state referenced by the config.
pub fn obtain_ground_state(cfg: &RunConfig, grid: GridSpec) -> Result<GroundStateRecord> {
    let p = cfg.params()?.p;
    if let InitialData::GroundStateMultiple {
        q_path: Some(path), ..
    } = &cfg.initial
    {
        let (q, _) = snapshot::load(path)?;
        let residual = nl4s_core::ground_state::fixed_point_residual(&q, p);
        let mass = nl4s_core::observables::mass(&q);
        let dq = sobolev_norm(&q, 2.0, Bracket::Homogeneous);
        let pot = q.lq_norm(p + 2.0).powf(p + 2.0);
        return Ok(GroundStateRecord {
            equation_residual: nl4s_core::ground_state::profile_residual(&q, p),
            residual,
            mass,
            delta_q: dq,
            c_attained: pot / (mass.powf(p / 2.0) * dq * dq),
            iterations: 0,
            p,
            q,
        });
    }
    let init = gaussian_init(grid, 1.0, cfg.ground_state.init_width);
    Ok(petviashvili_solve(
        grid,
        p,
        &init,
        cfg.ground_state.tol,
        cfg.ground_state.max_iter,
    )?)
}

/// Materialize the configured initial data on the run grid.
pub fn initial_data(cfg: &RunConfig, grid: GridSpec) -> Result<PhysicalField> {
    Ok(match &cfg.initial {
        InitialData::GroundStateMultiple { amplitude, .. } => {
            let q = obtain_ground_state(cfg, grid)?;
            q.q.scale(Complex64::new(*amplitude, 0.0))
        }
        InitialData::Gaussian { amplitude, width } => {
            gaussian_init(grid, *amplitude, *width)
        }
        InitialData::File { path } => snapshot::load(path)?.0,
        InitialData::RandomLocalized { amplitude } => {
            let f = FieldSampler::new(cfg.seed).localized(grid);
            f.scale(Complex64::new(*amplitude, 0.0))
        }
    })
}

pub fn run_experiment(cfg: &RunConfig) -> Result<RunOutput> {
    let started = Instant::now();
    let report = validate_config(cfg);
    if !report.ok() {
        return Err(HarnessError::InvalidConfig(report.errors));
    }
    let grid = cfg.grid_spec()?;
    fs::create_dir_all(&cfg.output_dir)?;
    let mut ctx = Ctx {
        cfg: cfg.clone(),
        grid,
        dir: cfg.output_dir.clone(),
        artifacts: Vec::new(),
        failures: Vec::new(),
        advisories: report.advisories,
    };

    let outcome = match cfg.kind {
        ExperimentKind::GroundState => run_ground_state(&mut ctx)?,
        ExperimentKind::Evolve => run_evolve(&mut ctx)?,
        ExperimentKind::AlmostConservation => run_almost_conservation(&mut ctx)?,
        ExperimentKind::BlowupConcentration => run_blowup_concentration(&mut ctx)?,
        ExperimentKind::ProfileExtraction => run_profile_extraction(&mut ctx)?,
        ExperimentKind::GwpBelowThreshold => run_gwp(&mut ctx)?,
        ExperimentKind::SobolevGrowth => run_sobolev_growth(&mut ctx)?,
        ExperimentKind::ScalingInvariance => run_scaling(&mut ctx)?,
        ExperimentKind::LwpWindow => run_lwp_window(&mut ctx)?,
    };

    let artifacts = RunManifest::collect_artifacts(&ctx.dir, &ctx.artifacts)?;
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        kind: cfg.kind.as_str().to_string(),
        seed: cfg.seed,
        config: cfg.clone(),
        outcome,
        advisories: ctx.advisories.clone(),
        pass: ctx.failures.is_empty(),
        failures: ctx.failures.clone(),
        artifacts,
        timestamp_unix: now_unix(),
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    manifest.write(&ctx.dir)?;
    Ok(RunOutput {
        manifest,
        dir: ctx.dir.clone(),
    })
}

fn run_ground_state(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let rec = obtain_ground_state(&cfg, ctx.grid)?;
    let gn = gn_verify(&rec, cfg.ground_state.gn_samples, cfg.seed, cfg.ground_state.gn_tol);
    ctx.check(rec.residual < cfg.ground_state.tol, "residual above tolerance");
    let gn = match gn {
        Ok(r) => r,
        Err(e) => {
            ctx.fail(format!("sharp-inequality certification failed: {e}"));
            return Ok(json!({ "record": record_json(&rec) }));
        }
    };
    ctx.check(
        gn.attainment_rel_error < cfg.ground_state.gn_tol,
        format!("attainment identity off by {}", gn.attainment_rel_error),
    );
    ctx.check(
        gn.energy_rel_error < cfg.ground_state.gn_tol,
        format!("E(Q) not zero: relative {}", gn.energy_rel_error),
    );
    ctx.save_field(
        "q.nl4s",
        &rec.q,
        SnapshotMeta {
            time: 0.0,
            gamma: cfg.analysis.gamma,
            n_cut: f64::NAN,
        },
    )?;
    Ok(json!({
        "kind_tag": "ground_state",
        "record": record_json(&rec),
        "gn": gn,
    }))
}

fn record_json(rec: &GroundStateRecord) -> serde_json::Value {
    json!({
        "p": rec.p,
        "residual": rec.residual,
        "equation_residual": rec.equation_residual,
        "mass": rec.mass,
        "delta_q": rec.delta_q,
        "c_attained": rec.c_attained,
        "iterations": rec.iterations,
    })
}

fn evolve_and_store(ctx: &mut Ctx, series_name: &str) -> Result<Trajectory> {
    let cfg = ctx.cfg.clone();
    let u0 = initial_data(&cfg, ctx.grid)?;
    let ec = cfg.evolve_config(ctx.grid)?;
    let traj = strang_evolve(&u0, &ec)?;
    ctx.write_series_csv(series_name, &traj.series)?;
    ctx.save_field(
        "initial.nl4s",
        &u0,
        SnapshotMeta {
            time: 0.0,
            gamma: ec.gamma,
            n_cut: ec.n_cut,
        },
    )?;
    ctx.save_field(
        "final.nl4s",
        &traj.final_state.1,
        SnapshotMeta {
            time: traj.final_state.0,
            gamma: ec.gamma,
            n_cut: ec.n_cut,
        },
    )?;
    Ok(traj)
}

fn stop_json(traj: &Trajectory) -> serde_json::Value {
    json!({
        "stop": format!("{:?}", traj.stop),
        "t_end": traj.final_state.0,
        "steps": traj.taus.len(),
        "untrusted": traj.untrusted,
        "mass_drift": traj.mass_drift(),
        "energy_drift": traj.energy_drift(),
    })
}

fn run_evolve(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let traj = evolve_and_store(ctx, "series.csv")?;
    ctx.check(!traj.untrusted, "spectral tail exceeded the trusted threshold");
    Ok(stop_json(&traj))
}

fn run_almost_conservation(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let u0 = initial_data(&cfg, ctx.grid)?;
    let ec = cfg.evolve_config(ctx.grid)?;
    let sweep = almost_conservation_sweep(
        &u0,
        cfg.analysis.gamma,
        cfg.delta(),
        &cfg.analysis.n_list,
        cfg.experiment.window,
        &ec,
    )?;
    let p = ctx.artifact("sweep.csv");
    let mut w = csv::Writer::from_path(&p)?;
    w.write_record([
        "N",
        "sup_increment",
        "window",
        "gamma",
        "delta",
        "sup_increment_drift_corrected",
    ])?;
    for row in &sweep.rows {
        w.write_record(&[
            row.n_cut.to_string(),
            row.sup_increment.to_string(),
            sweep.window.to_string(),
            sweep.gamma.to_string(),
            sweep.delta.to_string(),
            row.sup_increment_corrected.to_string(),
        ])?;
    }
    w.flush()?;

    let strictly_decreasing = sweep
        .rows
        .windows(2)
        .all(|w| w[1].sup_increment < w[0].sup_increment);
    ctx.check(
        strictly_decreasing,
        "sup increments are not strictly decreasing in N",
    );
    ctx.check(
        sweep.slope <= -(2.0 - cfg.analysis.gamma) / 2.0,
        format!(
            "log-log slope {} above the bound {}",
            sweep.slope,
            -(2.0 - cfg.analysis.gamma) / 2.0
        ),
    );
    Ok(json!({
        "rows": sweep.rows,
        "slope": sweep.slope,
        "slope_corrected": sweep.slope_corrected,
        "window": sweep.window,
        "gamma": sweep.gamma,
        "delta": sweep.delta,
    }))
}

/// Concentration summary along the dense end-of-run ring with the shrinking
/// windows `alpha(t) = coeff (T*-t)^(gamma/8)`.
pub fn concentration_in_windows(
    traj: &Trajectory,
    t_star: f64,
    gamma: f64,
    alpha_coeff: f64,
    alpha_floor: f64,
) -> Vec<(f64, f64, f64)> {
    let grid = traj.final_state.1.grid();
    traj.tail_ring
        .iter()
        .filter(|(t, _)| *t < t_star)
        .map(|(t, f)| {
            let alpha = (alpha_coeff * (t_star - t).powf(gamma / 8.0))
                .max(alpha_floor)
                .min(grid.box_half_width());
            let (v, _) = concentration(f, alpha).expect("radius clamped to (0, L]");
            (*t, alpha, v)
        })
        .collect()
}

fn run_blowup_concentration(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let q = obtain_ground_state(&cfg, ctx.grid)?;
    let traj = evolve_and_store(ctx, "series.csv")?;
    let report = detect_blowup_fit(&traj);
    ctx.check(report.detected, "no blowup detected");
    let gamma = cfg.analysis.gamma;
    let mut windows = Vec::new();
    let mut max_fraction: f64 = 0.0;
    if report.detected {
        ctx.check(
            report.rate_exponent >= gamma / 4.0,
            format!(
                "fitted rate {} below the lower bound gamma/4 = {}",
                report.rate_exponent,
                gamma / 4.0
            ),
        );
        windows = concentration_in_windows(
            &traj,
            report.t_star_estimate,
            gamma,
            cfg.experiment.alpha_coeff,
            cfg.experiment.alpha_floor_cells * ctx.grid.dx(),
        );
        let p = ctx.artifact("concentration.csv");
        let mut w = csv::Writer::from_path(&p)?;
        w.write_record(["t", "alpha", "windowed_mass", "fraction_of_q_mass"])?;
        for (t, alpha, v) in &windows {
            w.write_record(&[
                t.to_string(),
                alpha.to_string(),
                v.to_string(),
                (v / q.mass).to_string(),
            ])?;
        }
        w.flush()?;
        max_fraction = windows
            .iter()
            .map(|(_, _, v)| v / q.mass)
            .fold(0.0, f64::max);
        ctx.check(
            max_fraction >= cfg.experiment.concentration_target,
            format!(
                "windowed mass reached only {max_fraction:.4} of the ground-state mass (target {})",
                cfg.experiment.concentration_target
            ),
        );
    }
    Ok(json!({
        "run": stop_json(&traj),
        "fit": report,
        "q_mass": q.mass,
        "max_window_fraction": max_fraction,
        "windows_evaluated": windows.len(),
    }))
}

fn run_profile_extraction(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let grid = ctx.grid;
    let q = obtain_ground_state(&cfg, grid)?;
    let traj = evolve_and_store(ctx, "series.csv")?;
    let gamma = cfg.analysis.gamma;
    let t_stop = traj.final_state.0;

    // N(t_n) follows the optimized-cutoff law; when the formula's domain
    // fails at this (gamma, delta, d_ana) the cutoff cap stands in.
    let cap = grid.xi_max() / 2.0;
    let n_exponent = cfg
        .analysis
        .d_ana
        .and_then(|d| exponents::compute_paper_exponents(d, gamma, cfg.delta()).ok())
        .filter(|r| r.a_gamma > 0.0)
        .map(|r| r.n_of_t_exponent);
    if n_exponent.is_none() {
        ctx.advisories.push(
            "cutoff-law exponent undefined at this (gamma, delta, d_ana); using the cap xi_max/2"
                .to_string(),
        );
    }

    let stages = cfg.experiment.profile_stages.max(1);
    let p = ctx.artifact("profile.csv");
    let mut w = csv::Writer::from_path(&p)?;
    w.write_record([
        "stage",
        "t",
        "lambda",
        "n_cut",
        "rel_l2_distance",
        "shift_cells",
        "phase",
    ])?;
    let mut distances = Vec::new();
    for stage in 1..=stages {
        let target = t_stop - (t_stop - 0.0) * 2f64.powi(-(stage as i32));
        // nearest stored state at or before the target time
        let state = traj
            .tail_ring
            .iter()
            .chain(traj.snapshots.iter())
            .filter(|(t, _)| *t <= target)
            .min_by(|a, b| {
                (target - a.0)
                    .abs()
                    .partial_cmp(&(target - b.0).abs())
                    .unwrap()
            });
        let Some((t_n, u_n)) = state else { continue };
        let lambda_big = traj
            .series
            .samples
            .iter()
            .filter(|s| s.t <= *t_n)
            .map(|s| s.h_gamma)
            .fold(0.0, f64::max);
        let n_cut = n_exponent
            .map(|e| lambda_big.powf(e))
            .unwrap_or(cap)
            .min(cap)
            .max(grid.xi_fundamental());
        let m = build_m(grid, n_cut, gamma)?;
        let iu = m.apply(u_n)?;
        let d_iu = sobolev_norm(&iu, 2.0, Bracket::Homogeneous);
        if d_iu == 0.0 {
            continue;
        }
        let lambda = (q.delta_q / d_iu).sqrt();
        // psi(x) = lambda^{d/2} (I u)(lambda x), evaluated spectrally
        let spec = to_spectral(&iu);
        let axis: Vec<f64> = (0..grid.n())
            .map(|j| {
                let x = -grid.box_half_width() + j as f64 * grid.dx();
                lambda * x
            })
            .collect();
        let pts: Vec<Vec<f64>> = (0..grid.d_sim()).map(|_| axis.clone()).collect();
        let vals = evaluate_at(&spec, &pts);
        let amp = lambda.powf(grid.d_sim() as f64 / 2.0);
        let psi = PhysicalField::new(grid, vals.iter().map(|v| v * amp).collect())?;
        // re-center on the concentration peak, then exact joint alignment
        let (_, center) = concentration(&psi, (4.0 * grid.dx()).min(grid.box_half_width()))?;
        let _ = center;
        let (shift, phase, dist) = align_fields(&q.q, &psi);
        let rel = dist / q.mass.sqrt();
        distances.push(rel);
        w.write_record(&[
            stage.to_string(),
            t_n.to_string(),
            lambda.to_string(),
            n_cut.to_string(),
            rel.to_string(),
            shift.to_string(),
            phase.to_string(),
        ])?;
    }
    w.flush()?;
    ctx.check(!distances.is_empty(), "no rescaling stages could be evaluated");
    ctx.check(
        distances.iter().all(|d| d.is_finite() && *d >= 0.0),
        "non-finite profile distance",
    );
    Ok(json!({
        "run": stop_json(&traj),
        "distances": distances,
        "final_distance": distances.last().cloned().unwrap_or(f64::NAN),
        "q_mass": q.mass,
    }))
}

fn run_gwp(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let traj = evolve_and_store(ctx, "series.csv")?;
    ctx.check(
        traj.stop == StopCause::TMaxReached,
        format!("stop rule fired before the horizon: {:?}", traj.stop),
    );
    let h0 = traj.initial_h_gamma();
    let max_ratio = traj
        .series
        .samples
        .iter()
        .map(|s| s.h_gamma / h0)
        .fold(0.0, f64::max);
    ctx.check(
        max_ratio <= cfg.experiment.norm_bound_factor,
        format!(
            "H^gamma grew by {max_ratio:.4}, above the allowed {}",
            cfg.experiment.norm_bound_factor
        ),
    );
    let min_e_iu = traj
        .series
        .samples
        .iter()
        .map(|s| s.e_iu)
        .fold(f64::INFINITY, f64::min);
    ctx.check(
        min_e_iu > 0.0,
        format!("modified energy dipped to {min_e_iu:.3e}"),
    );
    Ok(json!({
        "run": stop_json(&traj),
        "max_h_gamma_ratio": max_ratio,
        "min_modified_energy": min_e_iu,
    }))
}

fn run_sobolev_growth(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let gamma = cfg.analysis.gamma;
    let delta = cfg.delta();
    let traj = evolve_and_store(ctx, "series.csv")?;
    ctx.check(
        traj.stop == StopCause::TMaxReached,
        format!("stop rule fired before the horizon: {:?}", traj.stop),
    );
    let h0 = traj.initial_h_gamma();
    let max_ratio = traj
        .series
        .samples
        .iter()
        .map(|s| s.h_gamma / h0)
        .fold(0.0, f64::max);
    ctx.check(
        max_ratio <= cfg.experiment.norm_bound_factor,
        format!("H^gamma grew by {max_ratio:.4}"),
    );
    // theoretical envelope exponent for |u(T)|^2_{H^gamma}; defined when the
    // denominator is positive (gamma above the global-existence threshold)
    let denom = (2.0 - gamma + delta) * gamma - 4.0 * (2.0 - gamma);
    let bound_exponent = if denom > 0.0 {
        Some(4.0 * (2.0 - gamma) / denom)
    } else {
        ctx.advisories.push(format!(
            "growth-envelope exponent undefined: (2-gamma+delta)gamma - 4(2-gamma) = {denom:.6} <= 0"
        ));
        None
    };
    // measured growth slope of log |u|^2 against log t over the second half
    let half: Vec<_> = traj
        .series
        .samples
        .iter()
        .filter(|s| s.t > traj.final_state.0 / 4.0)
        .collect();
    let fitted_slope = if half.len() >= 4 {
        let xs: Vec<f64> = half.iter().map(|s| s.t.ln()).collect();
        let ys: Vec<f64> = half.iter().map(|s| (s.h_gamma * s.h_gamma).ln()).collect();
        Some(nl4s_core::fit::linear_fit(&xs, &ys).1)
    } else {
        None
    };
    if let (Some(bound), Some(slope)) = (bound_exponent, fitted_slope) {
        ctx.check(
            slope <= bound + 0.1,
            format!("measured growth exponent {slope:.4} exceeds the envelope {bound:.4}"),
        );
    }
    // rescaling bookkeeping: N ~ lambda^((2-gamma)/gamma)
    let n_of_lambda_exp = (2.0 - gamma) / gamma;
    Ok(json!({
        "run": stop_json(&traj),
        "max_h_gamma_ratio": max_ratio,
        "bound_exponent": bound_exponent,
        "fitted_growth_exponent": fitted_slope,
        "n_of_lambda_exponent": n_of_lambda_exp,
    }))
}

fn run_scaling(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let u0 = initial_data(&cfg, ctx.grid)?;
    let ec = cfg.evolve_config(ctx.grid)?;
    let report = scaling_test(&u0, cfg.experiment.lambda, &ec)?;
    let p = ctx.artifact("scaling.csv");
    let mut w = csv::Writer::from_path(&p)?;
    w.write_record(["lambda", "t_compare", "discrepancy", "richardson_estimate"])?;
    w.write_record(&[
        report.lambda.to_string(),
        report.t_compare.to_string(),
        report.discrepancy.to_string(),
        report.richardson_estimate.to_string(),
    ])?;
    w.flush()?;
    if report.lambda == 1.0 {
        ctx.check(report.discrepancy == 0.0, "lambda = 1 discrepancy not exactly zero");
    } else {
        ctx.check(
            report.discrepancy <= 10.0 * report.richardson_estimate,
            format!(
                "discrepancy {} above 10x the step-halving estimate {}",
                report.discrepancy, report.richardson_estimate
            ),
        );
    }
    Ok(serde_json::to_value(&report).expect("report serializes"))
}

fn run_lwp_window(ctx: &mut Ctx) -> Result<serde_json::Value> {
    let cfg = ctx.cfg.clone();
    let grid = ctx.grid;
    let gamma = cfg.analysis.gamma;
    let base = initial_data(&cfg, grid)?;
    let amplitudes = cfg.experiment.lwp_amplitudes.clone();
    let ec0 = cfg.evolve_config(grid)?;

    struct LwpRow {
        amplitude: f64,
        h0: f64,
        window: f64,
        max_ratio: f64,
        untrusted: bool,
        ok: bool,
    }
    let rows: Vec<LwpRow> = nl4s_core::exec::map_slice(&amplitudes, |&a| {
        let u0 = base.scale(Complex64::new(a, 0.0));
        let h0 = sobolev_norm(&u0, gamma, Bracket::Inhomogeneous);
        let window = cfg.experiment.lwp_window_coeff * h0.powf(-4.0 / gamma);
        let mut ec = ec0.clone();
        ec.t_max = window;
        ec.sample_dt = (window / 50.0).min(ec.sample_dt);
        ec.snapshot_dt = window;
        match strang_evolve(&u0, &ec) {
            Ok(traj) => {
                let max_ratio = traj
                    .series
                    .samples
                    .iter()
                    .map(|s| s.h_gamma / h0)
                    .fold(0.0, f64::max);
                LwpRow {
                    amplitude: a,
                    h0,
                    window,
                    max_ratio,
                    untrusted: traj.untrusted,
                    ok: traj.stop == StopCause::TMaxReached
                        && !traj.untrusted
                        && max_ratio <= cfg.experiment.lwp_growth_factor,
                }
            }
            Err(_) => LwpRow {
                amplitude: a,
                h0,
                window,
                max_ratio: f64::NAN,
                untrusted: true,
                ok: false,
            },
        }
    });

    let p = ctx.artifact("lwp.csv");
    let mut w = csv::Writer::from_path(&p)?;
    w.write_record(["amplitude", "h_gamma_0", "window", "max_ratio", "untrusted", "ok"])?;
    for r in &rows {
        w.write_record(&[
            r.amplitude.to_string(),
            r.h0.to_string(),
            r.window.to_string(),
            r.max_ratio.to_string(),
            r.untrusted.to_string(),
            r.ok.to_string(),
        ])?;
    }
    w.flush()?;
    for r in &rows {
        ctx.check(
            r.ok,
            format!(
                "amplitude {} failed its window (ratio {}, untrusted {})",
                r.amplitude, r.max_ratio, r.untrusted
            ),
        );
    }
    Ok(json!({
        "rows": rows.iter().map(|r| json!({
            "amplitude": r.amplitude,
            "h_gamma_0": r.h0,
            "window": r.window,
            "max_ratio": r.max_ratio,
            "untrusted": r.untrusted,
            "ok": r.ok,
        })).collect::<Vec<_>>(),
    }))
}

/// Ensure both the manifest and any sibling files agree; used by the CLI
/// `verify` subcommand and the reproducibility tests.
pub fn verify_run(dir: &Path) -> anyhow::Result<Vec<String>> {
    crate::manifest::verify_dir(dir)
}

pub fn manifest_path(dir: &Path) -> PathBuf {
    dir.join(MANIFEST_NAME)
}
