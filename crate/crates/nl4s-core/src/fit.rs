//! Small fitting utilities: linear least squares, golden-section search, and
//! the power-law blowup fit with the singular time as a free parameter.

/// Least-squares line `y = a + b x`; returns (a, b, rms residual).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    debug_assert!(xs.len() == ys.len() && xs.len() >= 2);
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    let b = (n * sxy - sx * sy) / det;
    let a = (sy - b * sx) / n;
    let rms = (xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (a + b * x);
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    (a, b, rms)
}

/// Golden-section minimization of a unimodal function on [lo, hi].
pub fn golden_section(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, iters: usize) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct PowerLawFit {
    /// Fitted singular time.
    pub t_star: f64,
    /// Fitted exponent beta in `y ~ C (t_star - t)^(-beta)`.
    pub beta: f64,
    /// log-amplitude intercept.
    pub log_c: f64,
    /// RMS residual of log y against the fitted line.
    pub residual: f64,
}

/// Fit `y_i ~ C (T* - t_i)^(-beta)` by minimizing, over T* past the last
/// sample, the residual of the least-squares line of `log y` on
/// `log(T* - t)`. A coarse log-spaced scan brackets the optimum before
/// golden-section refinement.
pub fn fit_power_law(times: &[f64], values: &[f64]) -> Option<PowerLawFit> {
    if times.len() < 3 || times.len() != values.len() {
        return None;
    }
    if values.iter().any(|&v| v <= 0.0) {
        return None;
    }
    let t_last = *times.last().unwrap();
    let span = (t_last - times[0]).max(f64::MIN_POSITIVE);
    let log_y: Vec<f64> = values.iter().map(|v| v.ln()).collect();

    let residual_for = |t_star: f64| -> f64 {
        let xs: Vec<f64> = times.iter().map(|t| (t_star - t).ln()).collect();
        linear_fit(&xs, &log_y).2
    };

    // coarse scan of the gap T* - t_last over five decades
    let mut best_gap = span * 1e-4;
    let mut best_res = f64::INFINITY;
    for i in 0..=80 {
        let gap = span * 10f64.powf(-4.0 + 5.0 * i as f64 / 80.0);
        let r = residual_for(t_last + gap);
        if r < best_res {
            best_res = r;
            best_gap = gap;
        }
    }
    let lo = t_last + best_gap / 10.0;
    let hi = t_last + best_gap * 10.0;
    let t_star = golden_section(residual_for, lo, hi, 60);

    let xs: Vec<f64> = times.iter().map(|t| (t_star - t).ln()).collect();
    let (log_c, slope, residual) = linear_fit(&xs, &log_y);
    Some(PowerLawFit {
        t_star,
        beta: -slope,
        log_c,
        residual,
    })
}
