use num_complex::Complex64;
use nl4s_core::fft::{to_physical, to_spectral};
use nl4s_core::field::{PhysicalField, SpectralField};
use nl4s_core::ground_state::{gaussian_init, profile_residual};
use nl4s_core::nonlin::{f_eval, NonlinearityParams};
use nl4s_core::GridSpec;

fn main() {
    let grid = GridSpec::new(1, 1024, 20.0).unwrap();
    let p = 8.0;
    let params = NonlinearityParams::new(p, -1, 0).unwrap();
    let theta = (p + 1.0) / p;
    let init = gaussian_init(grid, 1.0, 1.0);
    let mut q = init.clone();

    let iters = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1500usize);
    for iter in 0..iters {
        let q_hat = to_spectral(&q);
        let f_hat = to_spectral(&f_eval(&q, &params));
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, (qc, fc)) in q_hat.coeffs().iter().zip(f_hat.coeffs()).enumerate() {
            let xi2 = grid.xi_sq(i);
            let w = 1.0 + xi2 * xi2;
            num += w * qc.norm_sqr();
            den += (fc * qc.conj()).re;
        }
        let s: f64 = num / den;
        let gain = s.powf(theta);
        let coeffs: Vec<Complex64> = f_hat
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, fc)| {
                let xi2 = grid.xi_sq(i);
                fc * (gain / (1.0 + xi2 * xi2))
            })
            .collect();
        let mut next = to_physical(&SpectralField::new(grid, coeffs).unwrap());
        for v in next.values_mut() {
            *v = Complex64::new(v.re, 0.0);
        }
        let peak = next.argmax_abs();
        // max asymmetry about the origin
        let o = grid.origin_index();
        let mut asym: f64 = 0.0;
        for j in 1..grid.n() / 2 {
            asym = asym.max((next.values()[o + j].re - next.values()[o - j].re).abs());
        }
        if peak != o {
            next = next.circular_shift_index(peak, o);
        }
        q = next;
        if iter % 10 == 0 || iter + 5 > iters {
            // preconditioned fixed-point residual
            let qh = to_spectral(&q);
            let fh = to_spectral(&f_eval(&q, &params));
            let mut diff = 0.0;
            for (i, (qc, fc)) in qh.coeffs().iter().zip(fh.coeffs()).enumerate() {
                let xi2 = grid.xi_sq(i);
                let g = fc / (1.0 + xi2 * xi2);
                diff += (qc - g).norm_sqr();
            }
            let fp_res = diff.sqrt() / qh.l2_norm();
            println!(
                "iter {iter:4} s-1={:+.3e} eq_res={:.3e} fp_res={:.3e} peak_off={} asym={:.3e}",
                s - 1.0,
                profile_residual(&q, p),
                fp_res,
                peak as i64 - o as i64,
                asym
            );
        }
    }
}
