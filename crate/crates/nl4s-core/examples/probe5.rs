use num_complex::Complex64;
use nl4s_core::evolution::{scaling_test, strang_evolve, EvolveConfig};
use nl4s_core::field::PhysicalField;
use nl4s_core::ground_state::{gaussian_init, petviashvili_solve};
use nl4s_core::nonlin::NonlinearityParams;
use nl4s_core::GridSpec;

fn main() {
    let grid = GridSpec::new(1, 1024, 20.0).unwrap();
    let rec = petviashvili_solve(grid, 8.0, &gaussian_init(grid, 1.0, 1.0), 1e-10, 500).unwrap();
    let params = NonlinearityParams::mass_critical(1);
    let u0 = rec.q.scale(Complex64::new(0.9, 0.0));

    // criterion-3 style: adaptive drift at c_dt = 1e-4
    let mut cfg = EvolveConfig::with_defaults(grid, params, 1.0);
    cfg.c_dt = 1e-4;
    cfg.gamma = 1.5;
    let t0 = std::time::Instant::now();
    let traj = strang_evolve(&u0, &cfg).unwrap();
    println!(
        "adaptive c_dt=1e-4: steps={} mass_drift={:.3e} energy_drift={:.3e} [{:.1?}]",
        traj.taus.len(),
        traj.mass_drift(),
        traj.energy_drift(),
        t0.elapsed()
    );

    // fixed-step Richardson triplet
    let run = |dt: f64| {
        let mut c = EvolveConfig::with_defaults(grid, params, 1.0);
        c.dt0 = dt;
        c.c_dt = f64::INFINITY;
        c.gamma = 1.5;
        c.sample_dt = 0.25;
        c.snapshot_dt = 0.5;
        strang_evolve(&u0, &c).unwrap().final_state.1
    };
    for base in [2e-4, 1e-4, 5e-5] {
        let t1 = std::time::Instant::now();
        let u1 = run(base);
        let u2 = run(base / 2.0);
        let u4 = run(base / 4.0);
        let e1 = u1.sub(&u2).unwrap().l2_norm();
        let e2 = u2.sub(&u4).unwrap().l2_norm();
        println!(
            "richardson dt={base:.1e}: e1={e1:.3e} e2={e2:.3e} order={:.3} [{:.1?}]",
            (e1 / e2).log2(),
            t1.elapsed()
        );
    }

    // criterion-10 style scaling test
    let g2 = GridSpec::new(1, 1024, 20.0).unwrap();
    let v0 = PhysicalField::from_fn(g2, |x| {
        Complex64::new(0.5 * (-x[0] * x[0] / (1.5 * 1.5)).exp(), 0.0)
    });
    let mut sc = EvolveConfig::with_defaults(g2, params, 0.1);
    sc.c_dt = 5e-4;
    sc.gamma = 1.5;
    let t2 = std::time::Instant::now();
    for lambda in [1.0, 2.0, 0.5] {
        match scaling_test(&v0, lambda, &sc) {
            Ok(r) => println!(
                "scaling lambda={lambda}: discrepancy={:.3e} richardson={:.3e} ratio={:.2} [{:.1?}]",
                r.discrepancy,
                r.richardson_estimate,
                r.discrepancy / r.richardson_estimate.max(1e-300),
                t2.elapsed()
            ),
            Err(e) => println!("scaling lambda={lambda} failed: {e}"),
        }
    }
}
