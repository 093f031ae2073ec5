//! Run configuration: a TOML document with explicit units, validated before
//! anything executes. Every field mirrors a CLI `--set key=value` override.
//!
//! Units: lengths in box units (the domain is `[-L, L)^d`), times in
//! simulation time, frequencies in radians per length unit.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use nl4s_core::evolution::{EvolveConfig, StopRules};
use nl4s_core::exponents;
use nl4s_core::nonlin::NonlinearityParams;
use nl4s_core::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    GroundState,
    Evolve,
    AlmostConservation,
    BlowupConcentration,
    ProfileExtraction,
    GwpBelowThreshold,
    SobolevGrowth,
    ScalingInvariance,
    LwpWindow,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::GroundState => "ground_state",
            ExperimentKind::Evolve => "evolve",
            ExperimentKind::AlmostConservation => "almost_conservation",
            ExperimentKind::BlowupConcentration => "blowup_concentration",
            ExperimentKind::ProfileExtraction => "profile_extraction",
            ExperimentKind::GwpBelowThreshold => "gwp_below_threshold",
            ExperimentKind::SobolevGrowth => "sobolev_growth",
            ExperimentKind::ScalingInvariance => "scaling_invariance",
            ExperimentKind::LwpWindow => "lwp_window",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let norm = s.replace('-', "_");
        Some(match norm.as_str() {
            "ground_state" => ExperimentKind::GroundState,
            "evolve" => ExperimentKind::Evolve,
            "almost_conservation" => ExperimentKind::AlmostConservation,
            "blowup_concentration" => ExperimentKind::BlowupConcentration,
            "profile_extraction" => ExperimentKind::ProfileExtraction,
            "gwp_below_threshold" => ExperimentKind::GwpBelowThreshold,
            "sobolev_growth" => ExperimentKind::SobolevGrowth,
            "scaling_invariance" => ExperimentKind::ScalingInvariance,
            "lwp_window" => ExperimentKind::LwpWindow,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridConfig {
    /// Spatial dimension of the simulation grid (1 or 2).
    pub d_sim: usize,
    /// Points per axis, a power of two >= 16.
    pub n: usize,
    /// Box half-width L; the domain is `[-L, L)^d`.
    pub box_half_width: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            d_sim: 1,
            n: 1024,
            box_half_width: 20.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NonlinearityConfig {
    /// Nonlinearity power p; omitted means the mass-critical 8/d_sim.
    pub power: Option<f64>,
    /// Sign of the nonlinear term (focusing equation: -1).
    pub mu: i8,
    /// Lower-order dispersion coefficient in {-1, 0, 1}.
    pub epsilon: i8,
}

impl Default for NonlinearityConfig {
    fn default() -> Self {
        NonlinearityConfig {
            power: None,
            mu: -1,
            epsilon: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Regularity gamma in (0, 2) for H^gamma norms and the smoothing
    /// multiplier.
    pub gamma: f64,
    /// Frequency-loss parameter delta >= 0; omitted means
    /// `min(gamma + 8/d_ana - 3, gamma - 1)/2` when admissible, else 0.05.
    pub delta: Option<f64>,
    /// Analysis dimension for the exponent calculus (the theory uses 5-7).
    pub d_ana: Option<u32>,
    /// Smoothing cutoff N for the modified-energy column; omitted means the
    /// dyadic value nearest xi_max/4.
    pub n_cut: Option<f64>,
    /// Dyadic cutoffs for the almost-conservation sweep.
    pub n_list: Vec<f64>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            gamma: 1.5,
            delta: None,
            d_ana: Some(5),
            n_cut: None,
            n_list: vec![8.0, 16.0, 32.0, 64.0],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "snake_case")]
pub enum InitialData {
    /// `amplitude * Q` with Q solved on the run grid (or loaded from
    /// `q_path` when given).
    GroundStateMultiple {
        amplitude: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q_path: Option<PathBuf>,
    },
    /// `amplitude * exp(-|x|^2 / width^2)`.
    Gaussian { amplitude: f64, width: f64 },
    /// Load from a snapshot file.
    File { path: PathBuf },
    /// Seeded random localized wavepackets scaled by `amplitude`.
    RandomLocalized { amplitude: f64 },
}

impl Default for InitialData {
    fn default() -> Self {
        InitialData::GroundStateMultiple {
            amplitude: 0.9,
            q_path: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EvolveSection {
    /// Upper bound on the time step.
    pub dt0: f64,
    /// CFL-like factor; omitted means 0.1 * dt0.
    pub c_dt: Option<f64>,
    /// Time horizon.
    pub t_max: f64,
    /// Observable sampling interval; omitted means min(t_max/200, 0.01).
    pub sample_dt: Option<f64>,
    /// Stored-snapshot interval; omitted means t_max/50.
    pub snapshot_dt: Option<f64>,
    pub sample_every_steps: usize,
    pub tail_ring: usize,
    /// Radius for the concentration column; omitted means L/8.
    pub concentration_radius: Option<f64>,
    pub stop: StopRules,
}

impl Default for EvolveSection {
    fn default() -> Self {
        EvolveSection {
            dt0: 0.01,
            c_dt: None,
            t_max: 1.0,
            sample_dt: None,
            snapshot_dt: None,
            sample_every_steps: 16,
            tail_ring: 64,
            concentration_radius: None,
            stop: StopRules::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GroundStateSection {
    /// Fixed-point residual tolerance.
    pub tol: f64,
    pub max_iter: usize,
    /// Gaussian init width.
    pub init_width: f64,
    /// Random fields drawn for the sharp-inequality certification.
    pub gn_samples: usize,
    /// Slack on the attained constant.
    pub gn_tol: f64,
}

impl Default for GroundStateSection {
    fn default() -> Self {
        GroundStateSection {
            tol: 1e-10,
            max_iter: 500,
            init_width: 1.0,
            gn_samples: 500,
            gn_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSection {
    /// Almost-conservation window length.
    pub window: f64,
    /// Scaling-invariance factor (1/2, 1, or 2).
    pub lambda: f64,
    /// Allowed growth `|u(t)|_{H^γ} <= factor * initial` for the global-run
    /// check.
    pub norm_bound_factor: f64,
    /// Concentration window constant: alpha(t) = coeff * (T*-t)^(gamma/8).
    pub alpha_coeff: f64,
    /// Floor on the window radius, in grid cells.
    pub alpha_floor_cells: f64,
    /// Fraction of the ground-state mass the windows must capture.
    pub concentration_target: f64,
    /// Number of rescaling stages t_n for profile extraction.
    pub profile_stages: usize,
    /// Amplitude ladder for the local-wellposedness window check.
    pub lwp_amplitudes: Vec<f64>,
    /// Window constant: T_A = coeff * |A u0|_{H^γ}^(-4/γ).
    pub lwp_window_coeff: f64,
    /// Norm-growth allowance inside the LWP windows.
    pub lwp_growth_factor: f64,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        ExperimentSection {
            window: 0.5,
            lambda: 2.0,
            norm_bound_factor: 3.0,
            alpha_coeff: 10.0,
            alpha_floor_cells: 4.0,
            concentration_target: 0.9,
            profile_stages: 6,
            lwp_amplitudes: vec![0.5, 1.0, 2.0],
            lwp_window_coeff: 0.1,
            lwp_growth_factor: 2.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub nonlinearity: NonlinearityConfig,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub initial: InitialData,
    #[serde(default)]
    pub evolve: EvolveSection,
    #[serde(default)]
    pub ground_state: GroundStateSection,
    #[serde(default)]
    pub experiment: ExperimentSection,
}

impl RunConfig {
    pub fn default_for(kind: ExperimentKind) -> Self {
        let mut cfg = RunConfig {
            kind,
            seed: 42,
            output_dir: PathBuf::from(format!("runs/{}", kind.as_str())),
            grid: GridConfig::default(),
            nonlinearity: NonlinearityConfig::default(),
            analysis: AnalysisConfig::default(),
            initial: InitialData::default(),
            evolve: EvolveSection::default(),
            ground_state: GroundStateSection::default(),
            experiment: ExperimentSection::default(),
        };
        match kind {
            ExperimentKind::AlmostConservation => {
                cfg.grid.n = 2048;
                cfg.evolve.t_max = cfg.experiment.window;
                cfg.evolve.c_dt = Some(2e-4);
                cfg.evolve.snapshot_dt = Some(0.005);
            }
            ExperimentKind::BlowupConcentration | ExperimentKind::ProfileExtraction => {
                cfg.grid.n = 2048;
                cfg.initial = InitialData::GroundStateMultiple {
                    amplitude: 1.2,
                    q_path: None,
                };
                cfg.evolve.t_max = 4.0;
                cfg.evolve.tail_ring = 128;
            }
            ExperimentKind::GwpBelowThreshold => {
                cfg.evolve.t_max = 5.0;
            }
            ExperimentKind::SobolevGrowth => {
                cfg.evolve.t_max = 10.0;
            }
            ExperimentKind::ScalingInvariance => {
                cfg.initial = InitialData::Gaussian {
                    amplitude: 0.5,
                    width: 1.5,
                };
                cfg.evolve.t_max = 0.1;
                cfg.evolve.c_dt = Some(5e-4);
            }
            ExperimentKind::LwpWindow => {
                cfg.initial = InitialData::Gaussian {
                    amplitude: 1.0,
                    width: 1.0,
                };
            }
            _ => {}
        }
        cfg
    }

    pub fn grid_spec(&self) -> nl4s_core::Result<GridSpec> {
        GridSpec::new(self.grid.d_sim, self.grid.n, self.grid.box_half_width)
    }

    pub fn params(&self) -> nl4s_core::Result<NonlinearityParams> {
        let p = self
            .nonlinearity
            .power
            .unwrap_or(8.0 / self.grid.d_sim as f64);
        NonlinearityParams::new(p, self.nonlinearity.mu, self.nonlinearity.epsilon)
    }

    pub fn delta(&self) -> f64 {
        self.analysis.delta.unwrap_or_else(|| {
            self.analysis
                .d_ana
                .and_then(|d| exponents::default_delta(d, self.analysis.gamma))
                .unwrap_or(0.05)
        })
    }

    pub fn n_cut(&self, grid: GridSpec) -> f64 {
        self.analysis
            .n_cut
            .unwrap_or_else(|| 2f64.powi((grid.xi_max() / 4.0).log2().floor() as i32))
    }

    /// Assemble the integrator configuration for the run grid.
    pub fn evolve_config(&self, grid: GridSpec) -> nl4s_core::Result<EvolveConfig> {
        let params = self.params()?;
        let t_max = self.evolve.t_max;
        Ok(EvolveConfig {
            params,
            dt0: self.evolve.dt0,
            c_dt: self.evolve.c_dt.unwrap_or(0.1 * self.evolve.dt0),
            t_max,
            sample_dt: self
                .evolve
                .sample_dt
                .unwrap_or_else(|| (t_max / 200.0).min(0.01)),
            snapshot_dt: self.evolve.snapshot_dt.unwrap_or(t_max / 50.0),
            sample_every_steps: self.evolve.sample_every_steps,
            gamma: self.analysis.gamma,
            n_cut: self.n_cut(grid),
            concentration_radius: self
                .evolve
                .concentration_radius
                .unwrap_or(grid.box_half_width() / 8.0),
            tail_ring: self.evolve.tail_ring,
            stop: self.evolve.stop,
        })
    }
}

/// Validation outcome: hard errors block the run; advisories are recorded in
/// the manifest and the run proceeds.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ConfigReport {
    pub errors: Vec<String>,
    pub advisories: Vec<String>,
}

impl ConfigReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

pub fn validate_config(cfg: &RunConfig) -> ConfigReport {
    let mut report = ConfigReport::default();
    let grid = match cfg.grid_spec() {
        Ok(g) => Some(g),
        Err(e) => {
            report.errors.push(e.to_string());
            None
        }
    };
    if let Err(e) = cfg.params() {
        report.errors.push(e.to_string());
    }
    let gamma = cfg.analysis.gamma;
    if !(gamma > 0.0 && gamma < 2.0) {
        report
            .errors
            .push(format!("analysis.gamma must lie in (0, 2), got {gamma}"));
    }
    if let Some(grid) = grid {
        if let Err(e) = cfg.evolve_config(grid).and_then(|ec| ec.validate(grid)) {
            report.errors.push(e.to_string());
        }
    }

    // local theory ceiling for the analysis dimension
    if let Some(d_ana) = cfg.analysis.d_ana {
        if d_ana == 0 {
            report.errors.push("analysis.d_ana must be >= 1".into());
        } else if !exponents::regularity_ceiling_ok(d_ana, gamma) {
            report.errors.push(format!(
                "regularity ceiling violated: ceil(gamma) = {} > 1 + 8/{d_ana} = {}",
                gamma.ceil(),
                1.0 + 8.0 / d_ana as f64
            ));
        } else {
            // theorem-range advisories
            let conc = exponents::gamma_lower_conc(d_ana);
            let gwp = 8.0 * d_ana as f64 / (3.0 * d_ana as f64 + 8.0);
            match cfg.kind {
                ExperimentKind::BlowupConcentration | ExperimentKind::ProfileExtraction => {
                    if gamma <= conc {
                        report.advisories.push(format!(
                            "gamma = {gamma} is at or below the concentration threshold {conc:.6} for d_ana = {d_ana}; the theory's range starts above it"
                        ));
                    }
                }
                ExperimentKind::GwpBelowThreshold | ExperimentKind::SobolevGrowth => {
                    if gamma <= gwp {
                        report.advisories.push(format!(
                            "gamma = {gamma} is at or below the global-existence threshold {gwp:.6} for d_ana = {d_ana}"
                        ));
                    }
                }
                _ => {}
            }
            let delta_ceiling = gamma + 8.0 / d_ana as f64 - 3.0;
            let delta = cfg.delta();
            if !(delta > 0.0 && delta < delta_ceiling) {
                report.advisories.push(format!(
                    "delta = {delta} outside the admissible interval (0, {delta_ceiling:.6}) for d_ana = {d_ana}, gamma = {gamma}"
                ));
            }
        }
    }

    match cfg.kind {
        ExperimentKind::AlmostConservation => {
            if let Some(grid) = grid {
                if cfg.analysis.n_list.is_empty() {
                    report.errors.push("analysis.n_list must be nonempty".into());
                }
                for &n in &cfg.analysis.n_list {
                    if n <= 0.0 || n.log2().fract() != 0.0 {
                        report
                            .errors
                            .push(format!("analysis.n_list entry {n} is not dyadic"));
                    } else if n >= grid.xi_max() / 2.0 {
                        report.errors.push(format!(
                            "analysis.n_list entry {n} is not below xi_max/2 = {}",
                            grid.xi_max() / 2.0
                        ));
                    }
                }
            }
        }
        ExperimentKind::ScalingInvariance => {
            let l = cfg.experiment.lambda;
            if !(l == 1.0 || l == 2.0 || l == 0.5) {
                report
                    .errors
                    .push(format!("experiment.lambda must be one of 1/2, 1, 2; got {l}"));
            }
        }
        ExperimentKind::LwpWindow => {
            if cfg.experiment.lwp_amplitudes.is_empty() {
                report
                    .errors
                    .push("experiment.lwp_amplitudes must be nonempty".into());
            }
        }
        _ => {}
    }

    match &cfg.initial {
        InitialData::GroundStateMultiple { amplitude, .. }
        | InitialData::RandomLocalized { amplitude } => {
            if !(*amplitude > 0.0) {
                report
                    .errors
                    .push(format!("initial amplitude must be > 0, got {amplitude}"));
            }
        }
        InitialData::Gaussian { amplitude, width } => {
            if !(*amplitude > 0.0 && *width > 0.0) {
                report.errors.push(format!(
                    "gaussian initial data needs positive amplitude and width, got {amplitude}, {width}"
                ));
            }
        }
        InitialData::File { .. } => {}
    }

    report
}

/// Apply a dotted-path override (`grid.n=2048`) onto the TOML tree.
pub fn apply_override(doc: &mut toml::Value, key: &str, raw: &str) -> Result<(), String> {
    // parse the scalar through a one-entry document; fall back to a string
    let parsed: toml::Value = match format!("v = {raw}").parse::<toml::Value>() {
        Ok(toml::Value::Table(mut t)) => t.remove("v").expect("inserted above"),
        _ => toml::Value::String(raw.to_string()),
    };
    let parts: Vec<&str> = key.split('.').collect();
    let mut node = doc;
    for (i, part) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            match node {
                toml::Value::Table(t) => {
                    t.insert(part.to_string(), parsed);
                    return Ok(());
                }
                _ => return Err(format!("cannot set {key}: parent is not a table")),
            }
        } else {
            let table = match node {
                toml::Value::Table(t) => t,
                _ => return Err(format!("cannot descend into {part}: not a table")),
            };
            node = table
                .entry(part.to_string())
                .or_insert(toml::Value::Table(Default::default()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        for kind in [
            ExperimentKind::GroundState,
            ExperimentKind::Evolve,
            ExperimentKind::AlmostConservation,
            ExperimentKind::BlowupConcentration,
            ExperimentKind::ProfileExtraction,
            ExperimentKind::GwpBelowThreshold,
            ExperimentKind::SobolevGrowth,
            ExperimentKind::ScalingInvariance,
            ExperimentKind::LwpWindow,
        ] {
            let cfg = RunConfig::default_for(kind);
            let report = validate_config(&cfg);
            assert!(
                report.ok(),
                "{}: {:?}",
                kind.as_str(),
                report.errors
            );
        }
    }

    #[test]
    fn ceiling_violation_is_hard_error() {
        let mut cfg = RunConfig::default_for(ExperimentKind::Evolve);
        cfg.analysis.gamma = 1.9;
        cfg.analysis.d_ana = Some(5);
        assert!(validate_config(&cfg).ok()); // ceil(1.9) = 2 <= 2.6

        cfg.analysis.gamma = 2.5;
        let report = validate_config(&cfg);
        assert!(!report.ok());
        assert!(report.errors.iter().any(|e| e.contains("ceiling")));
    }

    #[test]
    fn blowup_below_threshold_gets_advisory() {
        let mut cfg = RunConfig::default_for(ExperimentKind::BlowupConcentration);
        cfg.analysis.gamma = 1.8;
        cfg.analysis.d_ana = Some(5);
        let report = validate_config(&cfg);
        assert!(report.ok());
        assert!(report
            .advisories
            .iter()
            .any(|a| a.contains("concentration threshold")));
    }

    #[test]
    fn toml_roundtrip_and_override() {
        let cfg = RunConfig::default_for(ExperimentKind::GwpBelowThreshold);
        let text = toml::to_string_pretty(&cfg).unwrap();
        let mut doc: toml::Value = text.parse().unwrap();
        apply_override(&mut doc, "grid.n", "2048").unwrap();
        apply_override(&mut doc, "analysis.gamma", "1.6").unwrap();
        let back: RunConfig = doc.try_into().unwrap();
        assert_eq!(back.grid.n, 2048);
        assert_eq!(back.analysis.gamma, 1.6);
    }

    #[test]
    fn bad_n_list_rejected() {
        let mut cfg = RunConfig::default_for(ExperimentKind::AlmostConservation);
        cfg.analysis.n_list = vec![8.0, 24.0];
        let report = validate_config(&cfg);
        assert!(report.errors.iter().any(|e| e.contains("not dyadic")));
        cfg.analysis.n_list = vec![8.0, 512.0];
        let report = validate_config(&cfg);
        assert!(report.errors.iter().any(|e| e.contains("xi_max/2")));
    }
}
