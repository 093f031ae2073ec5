//! The frequency-smoothing multiplier `I_N`, its mapping properties in L²,
//! the modified energy `E(I_N u)`, commutator diagnostics, and the
//! almost-conservation sweep over dyadic cutoffs.
//!
//! The symbol is radial, non-increasing, C¹:
//! `m(ξ) = 1` for `|ξ| <= N`, `(|ξ|/N)^(γ-2)` for `|ξ| >= 2N`, and
//! `(|ξ|/N)^((γ-2) s(t))`, `t = log2(|ξ|/N)`, on the bridge `N < |ξ| < 2N`,
//! with `s` the cubic smoothstep. Both boundary values and one-sided slopes
//! match the two outer regimes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::fft::{to_physical, to_spectral};
use crate::field::{PhysicalField, SpectralField};
use crate::grid::GridSpec;
use crate::lp::bump;
use crate::multiplier::gradient;
use crate::nonlin::{f_eval, f_prime, NonlinearityParams};
use crate::observables::{energy, energy_spectral};

#[derive(Debug, Clone)]
pub struct IMultiplier {
    grid: GridSpec,
    n_cut: f64,
    gamma: f64,
    values: Vec<f64>,
    identity: bool,
}

/// Evaluate the smoothing symbol at radius `r` for cutoff `n_cut` and
/// regularity `gamma`.
pub fn i_symbol(n_cut: f64, gamma: f64, r: f64) -> f64 {
    if r <= n_cut {
        1.0
    } else if r >= 2.0 * n_cut {
        (r / n_cut).powf(gamma - 2.0)
    } else {
        let t = (r / n_cut).log2();
        let s = 3.0 * t * t - 2.0 * t * t * t;
        (r / n_cut).powf((gamma - 2.0) * s)
    }
}

pub fn build_m(grid: GridSpec, n_cut: f64, gamma: f64) -> Result<IMultiplier> {
    if !(n_cut > 0.0 && n_cut.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "cutoff N must be positive and finite, got {n_cut}"
        )));
    }
    if !(gamma > 0.0 && gamma < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in (0, 2), got {gamma}"
        )));
    }
    let values: Vec<f64> = (0..grid.len())
        .map(|i| i_symbol(n_cut, gamma, grid.xi_sq(i).sqrt()))
        .collect();
    let identity = values.iter().all(|&v| v == 1.0);
    Ok(IMultiplier {
        grid,
        n_cut,
        gamma,
        values,
        identity,
    })
}

impl IMultiplier {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn n_cut(&self) -> f64 {
        self.n_cut
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn symbol_at(&self, r: f64) -> f64 {
        i_symbol(self.n_cut, self.gamma, r)
    }

    pub fn lattice_values(&self) -> &[f64] {
        &self.values
    }

    /// True when the symbol is 1 on the whole lattice; `apply` is then the
    /// literal identity, bit for bit.
    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn apply_spectral(&self, f: &mut SpectralField) -> Result<()> {
        self.grid.check_len(f.coeffs().len())?;
        if self.identity {
            return Ok(());
        }
        for (c, m) in f.coeffs_mut().iter_mut().zip(&self.values) {
            *c *= *m;
        }
        Ok(())
    }

    pub fn apply(&self, f: &PhysicalField) -> Result<PhysicalField> {
        self.grid.check_len(f.values().len())?;
        if self.identity {
            return Ok(f.clone());
        }
        let mut s = to_spectral(f);
        self.apply_spectral(&mut s)?;
        Ok(to_physical(&s))
    }
}

pub fn apply_i(u: &PhysicalField, m: &IMultiplier) -> Result<PhysicalField> {
    m.apply(u)
}

/// `E(I_N u)`; exactly `E(u)` when the symbol is 1 on the lattice.
pub fn modified_energy(
    u: &PhysicalField,
    m: &IMultiplier,
    params: &NonlinearityParams,
) -> Result<f64> {
    if m.is_identity() {
        return Ok(energy(u, params));
    }
    let iu = m.apply(u)?;
    Ok(energy(&iu, params))
}

/// Variant reusing an existing spectrum of u.
pub fn modified_energy_with_spec(
    u: &PhysicalField,
    spec: &SpectralField,
    m: &IMultiplier,
    params: &NonlinearityParams,
) -> Result<f64> {
    if m.is_identity() {
        return Ok(energy_spectral(spec, u, params));
    }
    let mut s = spec.clone();
    m.apply_spectral(&mut s)?;
    let iu = to_physical(&s);
    Ok(energy_spectral(&s, &iu, params))
}

/// One mapping-property entry: the measured L² norm ratio, the sharp
/// constant the symbol bounds allow on this lattice, and their quotient
/// (which can exceed 1 only through a broken multiplier pipeline).
#[derive(Debug, Clone, Serialize)]
pub struct IPropertyEntry {
    pub label: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub sharp: f64,
    pub normalized: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IPropertyReport {
    pub sigma: f64,
    pub entries: Vec<IPropertyEntry>,
}

/// Measure the five L² mapping properties of the smoothing operator on `u`
/// for an auxiliary order `0 <= sigma <= gamma`:
///
/// 1. `|If|_2 <= |f|_2`
/// 2. `| |∇|^σ P_{>N} f |_2 <= N^(σ-2) |Δ I f|_2`
/// 3. `| <∇>^σ f |_2 <= | <Δ> I f |_2`
/// 4. `|f|_{H^γ} <= |I f|_{H²} <= N^(2-γ) |f|_{H^γ}` (both sides)
/// 5. `|I f|_{Ḣ²} <= N^(2-γ) |f|_{Ḣ^γ}`
///
/// With N >= 1 the first four normalizations admit sharp constant 1 on the
/// lattice; the upper sandwich bound and the homogeneous bound pick up the
/// bridge factor `max (|ξ|/N)^((2-γ)(1-s))`, which no C¹ interpolation
/// between the two regimes can avoid. Constants are computed on the actual
/// lattice, so `normalized <= 1` is exact mathematics, not a heuristic.
pub fn check_i_properties(
    u: &PhysicalField,
    m: &IMultiplier,
    sigma: f64,
) -> Result<IPropertyReport> {
    if !(0.0 <= sigma && sigma <= m.gamma()) {
        return Err(Error::InvalidParameter(format!(
            "sigma must lie in [0, gamma], got {sigma}"
        )));
    }
    let grid = u.grid();
    grid.check_len(m.lattice_values().len())?;
    let spec = to_spectral(u);
    let n_cut = m.n_cut();
    let gamma = m.gamma();

    // weighted L2 norms straight off the spectrum
    let norm_with = |w: &dyn Fn(f64, f64) -> f64| -> f64 {
        spec.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let r = grid.xi_sq(i).sqrt();
                let s = w(r, m.lattice_values()[i]);
                s * s * c.norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    };
    let sharp_of = |lhs_sym: &dyn Fn(f64, f64) -> f64, rhs_sym: &dyn Fn(f64, f64) -> f64| -> f64 {
        let mut sharp: f64 = 0.0;
        for i in 0..grid.len() {
            let r = grid.xi_sq(i).sqrt();
            let mv = m.lattice_values()[i];
            let den = rhs_sym(r, mv);
            let num = lhs_sym(r, mv);
            if den > 0.0 {
                sharp = sharp.max(num / den);
            }
        }
        sharp
    };

    let mut entries = Vec::new();
    let mut push = |label: &'static str,
                    lhs_sym: &dyn Fn(f64, f64) -> f64,
                    rhs_sym: &dyn Fn(f64, f64) -> f64|
     -> Result<()> {
        let lhs = norm_with(lhs_sym);
        let rhs = norm_with(rhs_sym);
        if rhs == 0.0 {
            return Err(Error::ZeroNorm { context: "I-property ratio" });
        }
        let sharp = sharp_of(lhs_sym, rhs_sym);
        entries.push(IPropertyEntry {
            label,
            lhs,
            rhs,
            ratio: lhs / rhs,
            sharp,
            normalized: lhs / rhs / sharp,
        });
        Ok(())
    };

    let jap = |r: f64| 1.0 + r * r; // quadratic bracket weight <xi>^2

    push("l2_bounded", &|_, mv| mv, &|_, _| 1.0)?;
    push(
        "high_freq_smoothing",
        &|r, _| r.powf(sigma) * (1.0 - bump(r / n_cut)),
        &|r, mv| n_cut.powf(sigma - 2.0) * r * r * mv,
    )?;
    push(
        "bracket_domination",
        &|r, _| jap(r).powf(sigma / 2.0),
        &|r, mv| jap(r) * mv,
    )?;
    push(
        "sandwich_lower",
        &|r, _| jap(r).powf(gamma / 2.0),
        &|r, mv| jap(r) * mv,
    )?;
    push(
        "sandwich_upper",
        &|r, mv| jap(r) * mv,
        &|r, _| n_cut.powf(2.0 - gamma) * jap(r).powf(gamma / 2.0),
    )?;
    push(
        "homogeneous_smoothing",
        &|r, mv| r * r * mv,
        &|r, _| n_cut.powf(2.0 - gamma) * r.powf(gamma),
    )?;

    Ok(IPropertyReport { sigma, entries })
}

/// `| ∇ I F(u) - (I ∇u) · F'(u) |_L2`, the commutator between smoothing and
/// the nonlinearity, measured in L² (spectrally exact on the box; the
/// Lebesgue-pair version differs only by fixed-norm constants).
pub fn commutator_norm(
    u: &PhysicalField,
    m: &IMultiplier,
    params: &NonlinearityParams,
) -> Result<f64> {
    let fu = f_eval(u, params);
    let ifu = m.apply(&fu)?;
    let grad_ifu = gradient(&ifu);
    let grad_u = gradient(u);
    let fp = f_prime(u, params);
    let mut total = 0.0;
    for (g_ifu, g_u) in grad_ifu.iter().zip(&grad_u) {
        let i_grad = m.apply(g_u)?;
        let rhs = fp.apply(&i_grad)?;
        let d = g_ifu.sub(&rhs)?.l2_norm();
        total += d * d;
    }
    Ok(total.sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n_cut: f64,
    /// `sup_t |E(I_N u(t)) - E(I_N u_0)|` as measured.
    pub sup_increment: f64,
    /// Same sup with the cutoff-independent solver energy drift
    /// `E(u(t)) - E(u_0)` subtracted sample-by-sample. The continuum flow
    /// conserves E(u) exactly, so in exact arithmetic the two columns
    /// coincide; the corrected one estimates the theoretical increment once
    /// the measured one floors at the integrator drift.
    pub sup_increment_corrected: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of log(sup increment) against log N.
    pub slope: f64,
    /// Slope of the drift-corrected column.
    pub slope_corrected: f64,
    pub intercept: f64,
    pub fit_rms: f64,
    pub window: f64,
    pub gamma: f64,
    pub delta: f64,
}

/// Evolve once over `[0, window]` and measure, for each dyadic cutoff,
/// `sup_t |E(I_N u(t)) - E(I_N u_0)|` along the stored snapshots, plus the
/// log-log slope across the cutoffs. The per-cutoff evaluation fans out in
/// parallel; each consumes the shared snapshot spectra read-only.
pub fn almost_conservation_sweep(
    u0: &PhysicalField,
    gamma: f64,
    delta: f64,
    n_list: &[f64],
    window: f64,
    config: &crate::evolution::EvolveConfig,
) -> Result<SweepResult> {
    let grid = u0.grid();
    if n_list.is_empty() {
        return Err(Error::InvalidParameter("empty N list".into()));
    }
    for &n in n_list {
        if n.log2().fract() != 0.0 {
            return Err(Error::InvalidParameter(format!("N = {n} is not dyadic")));
        }
        if n >= grid.xi_max() / 2.0 {
            return Err(Error::InvalidParameter(format!(
                "N = {n} is not below xi_max/2 = {}",
                grid.xi_max() / 2.0
            )));
        }
    }
    let mut cfg = config.clone();
    cfg.t_max = window;
    let traj = crate::evolution::strang_evolve(u0, &cfg)?;
    if traj.stop != crate::evolution::StopCause::TMaxReached {
        return Err(Error::BlowupInWindow {
            t: traj.final_state.0,
            cause: format!("{:?}", traj.stop),
        });
    }

    // spectra of u0 and the stored snapshots, computed once
    let spec0 = to_spectral(u0);
    let snaps: Vec<(&PhysicalField, SpectralField)> = traj
        .snapshots
        .iter()
        .map(|(_, f)| (f, to_spectral(f)))
        .collect();

    let params = cfg.params;
    let e_u0 = crate::observables::energy_spectral(&spec0, u0, &params);
    let rows: Vec<SweepRow> = exec::map_slice(n_list, |&n| {
        let m = build_m(grid, n, gamma).expect("validated above");
        let e0 = modified_energy_with_spec(u0, &spec0, &m, &params).expect("grid match");
        let mut sup = 0.0f64;
        let mut sup_corr = 0.0f64;
        for (f, s) in &snaps {
            let e = modified_energy_with_spec(f, s, &m, &params).expect("grid match");
            let e_u = crate::observables::energy_spectral(s, f, &params);
            sup = sup.max((e - e0).abs());
            sup_corr = sup_corr.max(((e - e0) - (e_u - e_u0)).abs());
        }
        SweepRow {
            n_cut: n,
            sup_increment: sup,
            sup_increment_corrected: sup_corr,
        }
    });

    let xs: Vec<f64> = rows.iter().map(|r| r.n_cut.ln()).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| r.sup_increment.max(f64::MIN_POSITIVE).ln())
        .collect();
    let (intercept, slope, fit_rms) = crate::fit::linear_fit(&xs, &ys);
    let ys_c: Vec<f64> = rows
        .iter()
        .map(|r| r.sup_increment_corrected.max(f64::MIN_POSITIVE).ln())
        .collect();
    let (_, slope_corrected, _) = crate::fit::linear_fit(&xs, &ys_c);

    Ok(SweepResult {
        rows,
        slope,
        slope_corrected,
        intercept,
        fit_rms,
        window,
        gamma,
        delta,
    })
}

/// Sequential twin of the sweep's per-cutoff evaluation, for benches.
pub fn sweep_energies_seq(
    snaps: &[(PhysicalField, SpectralField)],
    n_list: &[f64],
    gamma: f64,
    params: &NonlinearityParams,
) -> Vec<f64> {
    exec::map_slice_seq(n_list, |&n| {
        let m = build_m(snaps[0].0.grid(), n, gamma).expect("dyadic cutoff");
        snaps
            .iter()
            .map(|(f, s)| modified_energy_with_spec(f, s, &m, params).expect("grid"))
            .fold(0.0f64, |acc, e| acc.max(e.abs()))
    })
}

/// Parallel (feature-dependent) twin of `sweep_energies_seq`.
pub fn sweep_energies(
    snaps: &[(PhysicalField, SpectralField)],
    n_list: &[f64],
    gamma: f64,
    params: &NonlinearityParams,
) -> Vec<f64> {
    exec::map_slice(n_list, |&n| {
        let m = build_m(snaps[0].0.grid(), n, gamma).expect("dyadic cutoff");
        snaps
            .iter()
            .map(|(f, s)| modified_energy_with_spec(f, s, &m, params).expect("grid"))
            .fold(0.0f64, |acc, e| acc.max(e.abs()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSampler;
    use crate::multiplier::Multiplier;
    use num_complex::Complex64;

    #[test]
    fn symbol_boundary_values_exact() {
        let n_cut = 16.0;
        let gamma = 1.5;
        assert_eq!(i_symbol(n_cut, gamma, n_cut / 2.0), 1.0);
        assert_eq!(i_symbol(n_cut, gamma, n_cut), 1.0);
        assert_eq!(i_symbol(n_cut, gamma, 2.0 * n_cut), 2f64.powf(gamma - 2.0));
        // non-increasing along a fine radius scan
        let mut prev = f64::INFINITY;
        for i in 0..2000 {
            let r = 0.05 * i as f64;
            let v = i_symbol(n_cut, gamma, r);
            assert!(v <= prev + 1e-15, "increase at r = {r}");
            assert!(v > 0.0 && v <= 1.0);
            prev = v;
        }
    }

    #[test]
    fn symbol_is_c1_at_junctions() {
        let n_cut = 8.0;
        let gamma = 1.3;
        let h = 1e-6;
        for &r0 in &[n_cut, 2.0 * n_cut] {
            let num = (i_symbol(n_cut, gamma, r0 + h) - i_symbol(n_cut, gamma, r0 - h)) / (2.0 * h);
            let inner = (i_symbol(n_cut, gamma, r0 - 2.0 * h) - i_symbol(n_cut, gamma, r0 - 4.0 * h))
                / (2.0 * h);
            let outer = (i_symbol(n_cut, gamma, r0 + 4.0 * h) - i_symbol(n_cut, gamma, r0 + 2.0 * h))
                / (2.0 * h);
            assert!(
                (num - inner).abs() < 1e-3 && (num - outer).abs() < 1e-3,
                "kink at r = {r0}: {inner} {num} {outer}"
            );
        }
    }

    #[test]
    fn contraction_in_l2() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let m = build_m(g, 2.0, 1.5).unwrap();
        let mut s = FieldSampler::new(20);
        for _ in 0..20 {
            let f = s.spectral(g);
            let iu = m.apply(&f).unwrap();
            assert!(iu.l2_norm() <= f.l2_norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn identity_fast_path_is_bitwise() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let m = build_m(g, 2.0 * g.xi_max(), 1.5).unwrap();
        assert!(m.is_identity());
        let f = FieldSampler::new(21).localized(g);
        let iu = m.apply(&f).unwrap();
        assert_eq!(iu.values(), f.values());
        let params = NonlinearityParams::mass_critical(1);
        assert_eq!(
            modified_energy(&f, &m, &params).unwrap(),
            energy(&f, &params)
        );
    }

    #[test]
    fn commutes_with_other_multipliers() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let m = build_m(g, 4.0, 1.5).unwrap();
        let other = Multiplier::from_radial(g, |r| 1.0 / (1.0 + r * r)).unwrap();
        let f = FieldSampler::new(22).spectral(g);
        let a = other.apply(&m.apply(&f).unwrap()).unwrap();
        let b = m.apply(&other.apply(&f).unwrap()).unwrap();
        assert!(a.rel_l2_distance(&b).unwrap() < 1e-12);
    }

    #[test]
    fn property_ratios_within_sharp_constants() {
        let g = GridSpec::new(1, 256, 16.0).unwrap();
        let m = build_m(g, 4.0, 1.5).unwrap();
        let mut s = FieldSampler::new(23);
        for _ in 0..10 {
            let f = s.spectral(g);
            let report = check_i_properties(&f, &m, 1.0).unwrap();
            for e in &report.entries {
                assert!(
                    e.normalized <= 1.0 + 1e-9,
                    "{}: normalized ratio {} (sharp {})",
                    e.label,
                    e.normalized,
                    e.sharp
                );
            }
            // the four constant-1 normalizations really are 1 on this lattice
            for e in &report.entries {
                match e.label {
                    "l2_bounded" | "high_freq_smoothing" | "bracket_domination"
                    | "sandwich_lower" => {
                        assert!(e.sharp <= 1.0 + 1e-12, "{}: sharp {}", e.label, e.sharp)
                    }
                    _ => assert!(e.sharp >= 1.0),
                }
            }
        }
    }

    #[test]
    fn single_mode_high_freq_ratio_closed_form() {
        let g = GridSpec::new(1, 256, 16.0).unwrap();
        let n_cut = 4.0;
        let gamma = 1.5;
        let sigma = 1.0;
        let m = build_m(g, n_cut, gamma).unwrap();
        let fund = g.xi_fundamental();
        // |xi| = fund * k >= 2N: k = 64 gives |xi| = 4pi ~ 12.57 >= 8
        let k = 64i64;
        let xi = fund * k as f64;
        assert!(xi >= 2.0 * n_cut);
        let f = PhysicalField::from_fn(g, |x| Complex64::cis(xi * x[0]));
        let report = check_i_properties(&f, &m, sigma).unwrap();
        let entry = report
            .entries
            .iter()
            .find(|e| e.label == "high_freq_smoothing")
            .unwrap();
        let expect = (n_cut / xi).powf(gamma - sigma);
        assert!(
            (entry.ratio - expect).abs() < 1e-12,
            "ratio {} vs closed form {expect}",
            entry.ratio
        );
    }

    #[test]
    fn commutator_vanishes_on_single_mode() {
        let g = GridSpec::new(1, 128, 10.0).unwrap();
        let m = build_m(g, 2.0, 1.5).unwrap();
        let fund = g.xi_fundamental();
        let f = PhysicalField::from_fn(g, |x| Complex64::cis(fund * 5.0 * x[0]) * 0.8);
        let params = NonlinearityParams::mass_critical(1);
        let c = commutator_norm(&f, &m, &params).unwrap();
        assert!(c < 1e-10, "commutator {c}");
    }

    #[test]
    fn commutator_small_when_identity() {
        // With I = id the commutator reduces to the aliasing error of the
        // sampled nonlinearity, tiny for well-resolved data.
        let g = GridSpec::new(1, 512, 20.0).unwrap();
        let m = build_m(g, 2.0 * g.xi_max(), 1.5).unwrap();
        let f = PhysicalField::from_fn(g, |x| {
            Complex64::new(0.8 * (-x[0] * x[0] / 2.0).exp(), 0.0)
        });
        let params = NonlinearityParams::mass_critical(1);
        let c = commutator_norm(&f, &m, &params).unwrap();
        assert!(c < 1e-8, "aliasing floor {c}");
    }

    #[test]
    fn commutator_matches_redundant_pipeline() {
        // two-mode field; rebuild both terms through raw spectral steps
        let g = GridSpec::new(1, 512, 16.0).unwrap();
        let fund = g.xi_fundamental();
        let f = PhysicalField::from_fn(g, |x| {
            Complex64::cis(fund * 3.0 * x[0]) * 0.5 + Complex64::cis(-fund * 7.0 * x[0]) * 0.3
        });
        let n_cut = 2.0;
        let gamma = 1.4;
        let m = build_m(g, n_cut, gamma).unwrap();
        let params = NonlinearityParams::mass_critical(1);
        let direct = commutator_norm(&f, &m, &params).unwrap();

        // redundant path: assemble each factor independently
        let fu = f_eval(&f, &params);
        let spec_fu = to_spectral(&fu);
        let grid = g;
        let coeffs: Vec<Complex64> = spec_fu
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let r = grid.xi_sq(i).sqrt();
                let k = grid.k_axes(i)[0];
                c * i_symbol(n_cut, gamma, r) * Complex64::new(0.0, fund * k as f64)
            })
            .collect();
        let term1 = to_physical(&SpectralField::new(grid, coeffs).unwrap());

        let spec_u = to_spectral(&f);
        let coeffs2: Vec<Complex64> = spec_u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let r = grid.xi_sq(i).sqrt();
                let k = grid.k_axes(i)[0];
                c * i_symbol(n_cut, gamma, r) * Complex64::new(0.0, fund * k as f64)
            })
            .collect();
        let i_grad = to_physical(&SpectralField::new(grid, coeffs2).unwrap());
        let fp = f_prime(&f, &params);
        let term2 = fp.apply(&i_grad).unwrap();
        let redundant = term1.sub(&term2).unwrap().l2_norm();
        assert!(
            (direct - redundant).abs() <= 1e-12 * redundant.max(1.0),
            "direct {direct} vs redundant {redundant}"
        );
    }
}
