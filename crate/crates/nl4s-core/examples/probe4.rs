use num_complex::Complex64;
use nl4s_core::evolution::{strang_evolve, EvolveConfig};
use nl4s_core::fit::fit_power_law;
use nl4s_core::ground_state::{gaussian_init, petviashvili_solve};
use nl4s_core::nonlin::NonlinearityParams;
use nl4s_core::GridSpec;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2048);
    let grid = GridSpec::new(1, n, 20.0).unwrap();
    let init = gaussian_init(grid, 1.0, 1.0);
    let rec = petviashvili_solve(grid, 8.0, &init, 1e-10, 500).unwrap();
    let params = NonlinearityParams::mass_critical(1);
    let v0 = rec.q.scale(Complex64::new(1.2, 0.0));
    let mut cfg = EvolveConfig::with_defaults(grid, params, 4.0);
    cfg.gamma = 1.5;
    let t0 = std::time::Instant::now();
    let traj = strang_evolve(&v0, &cfg).unwrap();
    let samples = &traj.series.samples;
    let h0 = samples[0].h_gamma;
    let h_last = samples.last().unwrap().h_gamma;
    println!(
        "n={n} stop={:?} t_end={:.6} steps={} h_ratio={:.1} tail={:.2e} [{:.1?}]",
        traj.stop,
        traj.final_state.0,
        traj.taus.len(),
        h_last / h0,
        samples.last().unwrap().tail_fraction,
        t0.elapsed()
    );
    for octaves in [1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 8.0] {
        let cut = h_last / 2f64.powf(octaves);
        let post: Vec<_> = samples
            .iter()
            .filter(|s| s.h_gamma >= cut.max(2.0 * h0))
            .collect();
        if post.len() < 8 {
            println!("  octaves={octaves}: only {} samples", post.len());
            continue;
        }
        let times: Vec<f64> = post.iter().map(|s| s.t).collect();
        let values: Vec<f64> = post.iter().map(|s| s.h_gamma).collect();
        if let Some(fit) = fit_power_law(&times, &values) {
            println!(
                "  octaves={octaves:>4}: samples={:4} T*={:.6} beta={:.4} residual={:.2e}",
                post.len(),
                fit.t_star,
                fit.beta,
                fit.residual
            );
        }
    }
}
