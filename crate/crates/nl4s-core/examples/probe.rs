use num_complex::Complex64;
use nl4s_core::evolution::{detect_blowup_fit, strang_evolve, EvolveConfig, StopCause};
use nl4s_core::fft::to_spectral;
use nl4s_core::field::PhysicalField;
use nl4s_core::ground_state::{gaussian_init, gn_verify, petviashvili_solve};
use nl4s_core::i_operator::almost_conservation_sweep;
use nl4s_core::nonlin::NonlinearityParams;
use nl4s_core::observables::{concentration, mass};
use nl4s_core::GridSpec;

fn main() {
    let t0 = std::time::Instant::now();
    // 1. ground state at the certification configuration
    let grid = GridSpec::new(1, 1024, 20.0).unwrap();
    let init = gaussian_init(grid, 1.0, 1.0);
    let rec = petviashvili_solve(grid, 8.0, &init, 1e-10, 500).unwrap();
    println!(
        "Q: iters={} fp_res={:.3e} eq_res={:.3e} mass={:.12} |dQ|={:.12} C={:.12} sup={:.6}",
        rec.iterations,
        rec.residual,
        rec.equation_residual,
        rec.mass,
        rec.delta_q,
        rec.c_attained,
        rec.q.sup_norm()
    );
    let spec = to_spectral(&rec.q);
    for target in [4.0, 8.0, 16.0, 32.0, 64.0, 80.0] {
        let mut best = (f64::INFINITY, 0usize);
        for i in 0..grid.len() {
            let r = grid.xi_sq(i).sqrt();
            if (r - target).abs() < best.0 {
                best = ((r - target).abs(), i);
            }
        }
        println!("  |Qhat| near xi={target}: {:.3e}", spec.coeffs()[best.1].norm());
    }
    let gn = gn_verify(&rec, 100, 7, 1e-6).unwrap();
    println!(
        "GN: attain_err={:.3e} energy_err={:.3e} max_ratio={:.6} [{:.1?}]",
        gn.attainment_rel_error, gn.energy_rel_error, gn.max_sample_ratio, t0.elapsed()
    );

    // 2. sub-threshold run to T=1
    let params = NonlinearityParams::mass_critical(1);
    let u0 = rec.q.scale(Complex64::new(0.9, 0.0));
    let mut cfg = EvolveConfig::with_defaults(grid, params, 1.0);
    cfg.gamma = 1.5;
    let t1 = std::time::Instant::now();
    let traj = strang_evolve(&u0, &cfg).unwrap();
    println!(
        "subthreshold: stop={:?} steps={} mass_drift={:.3e} energy_drift={:.3e} hg_ratio={:.4} tail={:.3e} [{:.1?}]",
        traj.stop,
        traj.taus.len(),
        traj.mass_drift(),
        traj.energy_drift(),
        traj.series.samples.last().unwrap().h_gamma / traj.initial_h_gamma(),
        traj.series.samples.last().unwrap().tail_fraction,
        t1.elapsed()
    );

    // 3. blowup run from 1.2 Q
    let v0 = rec.q.scale(Complex64::new(1.2, 0.0));
    let mut bcfg = EvolveConfig::with_defaults(grid, params, 4.0);
    bcfg.gamma = 1.5;
    let t2 = std::time::Instant::now();
    let btraj = strang_evolve(&v0, &bcfg).unwrap();
    let report = detect_blowup_fit(&btraj);
    println!(
        "blowup: stop={:?} untrusted={} t_end={:.6} steps={} samples={} hg_ratio={:.2}",
        btraj.stop,
        btraj.untrusted,
        btraj.final_state.0,
        btraj.taus.len(),
        btraj.series.samples.len(),
        btraj.series.samples.last().unwrap().h_gamma / btraj.initial_h_gamma()
    );
    println!(
        "fit: detected={} T*={:.6} beta={:.4} residual={:.3e} used={} [{:.1?}]",
        report.detected,
        report.t_star_estimate,
        report.rate_exponent,
        report.fit_residual,
        report.samples_used,
        t2.elapsed()
    );
    if report.detected {
        // concentration in shrinking windows near the end
        let q_mass = rec.mass;
        let ts = report.t_star_estimate;
        for (t, f) in btraj.tail_ring.iter().rev().take(8).rev() {
            let alpha = (10.0 * (ts - t).powf(1.5 / 8.0)).max(4.0 * grid.dx());
            let (v, c) = concentration(f, alpha.min(grid.box_half_width())).unwrap();
            println!(
                "  t={:.6} alpha={:.4} conc={:.6} ({:.3} of Q mass) center={:.3} mass={:.6}",
                t,
                alpha,
                v,
                v / q_mass,
                c[0],
                mass(f)
            );
        }
    }

    // 4. almost-conservation sweep at n = 2048
    let grid2 = GridSpec::new(1, 2048, 20.0).unwrap();
    let init2 = gaussian_init(grid2, 1.0, 1.0);
    let rec2 = petviashvili_solve(grid2, 8.0, &init2, 1e-10, 500).unwrap();
    let u02 = rec2.q.scale(Complex64::new(0.9, 0.0));
    let mut scfg = EvolveConfig::with_defaults(grid2, params, 0.5);
    scfg.dt0 = 0.01;
    scfg.c_dt = 2e-4; // fine tolerance
    scfg.gamma = 1.5;
    scfg.snapshot_dt = 0.005;
    let t3 = std::time::Instant::now();
    match almost_conservation_sweep(&u02, 1.5, 0.05, &[8.0, 16.0, 32.0, 64.0], 0.5, &scfg) {
        Ok(sweep) => {
            for row in &sweep.rows {
                println!("  N={:>4}: sup_increment={:.6e}", row.n_cut, row.sup_increment);
            }
            println!(
                "sweep slope={:.4} rms={:.3e} [{:.1?}]",
                sweep.slope, sweep.fit_rms, t3.elapsed()
            );
        }
        Err(e) => println!("sweep failed: {e}"),
    }
    println!("total {:.1?}", t0.elapsed());
}
