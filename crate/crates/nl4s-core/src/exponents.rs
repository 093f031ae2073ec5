//! Admissible-pair calculus and the closed-form exponents of the low
//! regularity theory, in exact rational arithmetic wherever the quantity is
//! rational in its inputs.
//!
//! For a pair (p, q) in an analysis dimension d the scaling index is
//! `gamma_pq = d/2 - d/q - 4/p` (with 1/∞ = 0). A pair is Schrödinger
//! admissible when p, q ∈ [2, ∞], (p, q, d) ≠ (2, ∞, 2) and
//! 2/p + d/q ≤ d/2; biharmonic admissible when additionally q < ∞ and
//! `gamma_pq = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A Lebesgue exponent in [1, ∞].
#[derive(Debug, Clone, PartialEq)]
pub enum Exponent {
    Finite(BigRational),
    Infinity,
}

impl Exponent {
    pub fn finite_int(n: i64) -> Self {
        Exponent::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exponent::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn reciprocal(&self) -> BigRational {
        match self {
            Exponent::Infinity => BigRational::zero(),
            Exponent::Finite(r) => r.recip(),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Exponent::Infinity => f64::INFINITY,
            Exponent::Finite(r) => rational_to_f64(r),
        }
    }

    pub fn is_at_least(&self, bound: i64) -> bool {
        match self {
            Exponent::Infinity => true,
            Exponent::Finite(r) => *r >= BigRational::from_integer(BigInt::from(bound)),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "inf"),
            Exponent::Finite(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Parses "inf", integers, and fractions like "16/5".
impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Exponent::Infinity);
        }
        let parse_int = |t: &str| -> Result<BigInt> {
            BigInt::from_str(t.trim())
                .map_err(|_| Error::InvalidParameter(format!("cannot parse exponent part {t:?}")))
        };
        let r = if let Some((a, b)) = s.split_once('/') {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter("zero denominator".into()));
            }
            BigRational::new(parse_int(a)?, den)
        } else {
            BigRational::from_integer(parse_int(s)?)
        };
        Ok(Exponent::Finite(r))
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The scaling index `gamma_pq = d/2 - d/q - 4/p`, exact.
pub fn gamma_pq(p: &Exponent, q: &Exponent, d: u32) -> Result<BigRational> {
    for (name, e) in [("p", p), ("q", q)] {
        if let Exponent::Finite(r) = e {
            if *r < BigRational::one() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in [1, inf], got {r}"
                )));
            }
        }
    }
    let d = big(d as i64);
    Ok(&d / big(2) - &d * q.reciprocal() - big(4) * p.reciprocal())
}

pub fn is_schrodinger_admissible(p: &Exponent, q: &Exponent, d: u32) -> bool {
    if !p.is_at_least(2) || !q.is_at_least(2) {
        return false;
    }
    if d == 2 && *p == Exponent::finite_int(2) && *q == Exponent::Infinity {
        return false;
    }
    // 2/p + d/q <= d/2
    let lhs = big(2) * p.reciprocal() + big(d as i64) * q.reciprocal();
    lhs <= big(d as i64) / big(2)
}

pub fn is_biharmonic_admissible(p: &Exponent, q: &Exponent, d: u32) -> bool {
    if *q == Exponent::Infinity {
        return false;
    }
    if !is_schrodinger_admissible(p, q, d) {
        return false;
    }
    match gamma_pq(p, q, d) {
        Ok(g) => g.is_zero(),
        Err(_) => false,
    }
}

/// Exact `8d/(3d+8)`, the low end of the global-existence range.
pub fn gamma_lower_gwp(d: u32) -> BigRational {
    big(8 * d as i64) / big(3 * d as i64 + 8)
}

/// `(56 - 3d + sqrt(137 d² + 1712 d + 3136)) / (2(2d + 32))`, the low end of
/// the concentration range, evaluated with a high-precision rational square
/// root (error below 1e-30) before rounding to f64.
pub fn gamma_lower_conc(d: u32) -> f64 {
    let radicand = big(137 * (d as i64) * (d as i64) + 1712 * d as i64 + 3136);
    let root = rational_sqrt(&radicand, 60);
    let val = (big(56 - 3 * d as i64) + root) / (big(2) * big(2 * d as i64 + 32));
    rational_to_f64(&val)
}

/// Newton iteration for sqrt on rationals; `iters` doublings of precision
/// from an f64 seed, far beyond f64 accuracy within a handful of steps.
pub fn rational_sqrt(x: &BigRational, iters: usize) -> BigRational {
    assert!(!x.is_negative(), "rational_sqrt of negative value");
    if x.is_zero() {
        return BigRational::zero();
    }
    let seed = rational_to_f64(x).sqrt();
    let mut y = BigRational::from_f64(seed).unwrap_or_else(|| big(1));
    if y.is_zero() {
        y = big(1);
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for _ in 0..iters {
        y = &half * (&y + x / &y);
        // keep the representation small: round to ~200 digits via f64 ladder
        if y.numer().bits() > 2048 {
            y = truncate_rational(&y, 512);
        }
    }
    y
}

fn truncate_rational(x: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::from(1u8) << bits;
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.to_integer(), scale)
}

/// Closed-form exponents of the theory for one (d, gamma, delta) triple.
/// `gamma` and `delta` are taken bit-exactly as rationals (every f64 is one).
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExponentReport {
    pub d_ana: u32,
    pub gamma: f64,
    pub delta: f64,
    /// `a(gamma) = 2(2 + 16/d + 4/gamma)(2-gamma) / [(2-gamma+delta) - (2-gamma)(16/d + 4/gamma)]`.
    pub a_gamma: f64,
    /// `a(d,gamma) = (4d gamma² + (2d+48) gamma + 16d) / (16d + (56-3d) gamma - 16 gamma²)`,
    /// reported verbatim.
    pub a_dgamma: f64,
    /// Concentration-range threshold for gamma.
    pub gamma_lower_conc: f64,
    /// Global-existence threshold 8d/(3d+8) for gamma.
    pub gamma_lower_gwp: f64,
    /// Exponent in `N(T) ~ Λ(T)^(a(gamma)/(2(2-gamma)))`.
    pub n_of_t_exponent: f64,
    /// Ceiling condition `⌈gamma⌉ <= 1 + 8/d` for the local theory.
    pub regularity_ok: bool,
    /// Both positivity conditions behind `0 < a(gamma) < 2` hold at the
    /// delta-supremum (independent of the supplied delta).
    pub positivity_ok: bool,
    /// The actual a(gamma) for the supplied delta lands in (0, 2).
    pub a_gamma_in_range: bool,
}

/// `a(d,gamma)` of the limiting-profile regularity, computed verbatim:
/// `(4d γ² + (2d+48) γ + 16d) / (16d + (56-3d) γ - 16 γ²)`. Reported as
/// printed; no attempt is made to repair its range.
pub fn a_dgamma(d_ana: u32, gamma: f64) -> Result<f64> {
    let d = big(d_ana as i64);
    let g = BigRational::from_f64(gamma)
        .ok_or_else(|| Error::InvalidParameter("gamma not finite".into()))?;
    let num = big(4) * &d * &g * &g + (big(2) * &d + big(48)) * &g + big(16) * &d;
    let den = big(16) * &d + (big(56) - big(3) * &d) * &g - big(16) * &g * &g;
    if den.is_zero() {
        return Err(Error::ExponentDomain {
            condition: "16d + (56 - 3d) gamma - 16 gamma^2 vanishes".into(),
        });
    }
    Ok(rational_to_f64(&(num / den)))
}

pub fn compute_paper_exponents(d_ana: u32, gamma: f64, delta: f64) -> Result<ExponentReport> {
    if d_ana == 0 {
        return Err(Error::InvalidParameter("d_ana must be >= 1".into()));
    }
    if !(gamma > 0.0 && gamma < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in (0, 2), got {gamma}"
        )));
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "delta must be >= 0, got {delta}"
        )));
    }
    let d = big(d_ana as i64);
    let g = BigRational::from_f64(gamma)
        .ok_or_else(|| Error::InvalidParameter("gamma not finite".into()))?;
    let dl = BigRational::from_f64(delta)
        .ok_or_else(|| Error::InvalidParameter("delta not finite".into()))?;
    let two = big(2);

    // a(gamma)
    let bracket = big(16) / &d + big(4) / &g;
    let two_minus_g = &two - &g;
    let denom = (&two_minus_g + &dl) - &two_minus_g * &bracket;
    if denom.is_zero() || denom.is_negative() {
        return Err(Error::ExponentDomain {
            condition: format!(
                "(2 - gamma + delta) - (2 - gamma)(16/d + 4/gamma) must be positive, got {}",
                rational_to_f64(&denom)
            ),
        });
    }
    let a_gamma = &two * (&two + &bracket) * &two_minus_g / &denom;

    // positivity window for 0 < a(gamma) < 2:
    //   8/d - 1 - (2-gamma)(16/d + 4/gamma) > 0
    //   (2 + 16/d + 4/gamma)(2-gamma) < 8/d - 1 - (2-gamma)(16/d + 4/gamma)
    let margin = big(8) / &d - big(1) - &two_minus_g * &bracket;
    let positivity_ok = margin.is_positive()
        && (&two + &bracket) * &two_minus_g < margin;
    let a_gamma_in_range = a_gamma.is_positive() && a_gamma < two;

    let a_dg = a_dgamma(d_ana, gamma)?;

    let n_exp = &a_gamma / (&two * &two_minus_g);

    let ceil_g = gamma.ceil();
    let regularity_ok = ceil_g <= 1.0 + 8.0 / d_ana as f64;

    Ok(ExponentReport {
        d_ana,
        gamma,
        delta,
        a_gamma: rational_to_f64(&a_gamma),
        a_dgamma: a_dg,
        gamma_lower_conc: gamma_lower_conc(d_ana),
        gamma_lower_gwp: rational_to_f64(&gamma_lower_gwp(d_ana)),
        n_of_t_exponent: rational_to_f64(&n_exp),
        regularity_ok,
        positivity_ok,
        a_gamma_in_range,
    })
}

/// The local theory's ceiling condition `⌈gamma⌉ <= 1 + 8/d`, usable for any
/// positive gamma (unlike the full report, which requires gamma < 2).
pub fn regularity_ceiling_ok(d_ana: u32, gamma: f64) -> bool {
    gamma.ceil() <= 1.0 + 8.0 / d_ana as f64
}

/// Default delta: `min(gamma + 8/d - 3, gamma - 1)/2` when that lands in the
/// admissible open interval `(0, gamma + 8/d - 3)`, else None (caller picks).
pub fn default_delta(d_ana: u32, gamma: f64) -> Option<f64> {
    let ceiling = gamma + 8.0 / d_ana as f64 - 3.0;
    let candidate = ceiling.min(gamma - 1.0) / 2.0;
    if candidate > 0.0 && candidate < ceiling {
        Some(candidate)
    } else {
        None
    }
}

/// The biharmonic-admissible families named by the theory, instantiated for
/// one analysis dimension. Used as exactness fixtures.
pub fn named_admissible_pairs(d: u32, gammas: &[(i64, i64)]) -> Vec<(Exponent, Exponent)> {
    let d_i = d as i64;
    let mut out = vec![
        (Exponent::ratio(16, d_i), Exponent::finite_int(4)),
        (
            Exponent::ratio(32, 11),
            Exponent::ratio(8 * d_i, 4 * d_i - 11),
        ),
        (
            Exponent::ratio(16 * (8 - d_i), d_i),
            Exponent::ratio(4 * (8 - d_i), 15 - 2 * d_i),
        ),
        (
            Exponent::finite_int(4 * (d_i - 3)),
            Exponent::ratio(2 * d_i * (d_i - 3), d_i * d_i - 3 * d_i - 2),
        ),
    ];
    for &(gn, gd) in gammas {
        // (2(d+8)/(d-4γ), 2d(d+8)/(d²+4d+16γ)) for rational γ = gn/gd in (0, d/4)
        let p_num = 2 * (d_i + 8) * gd;
        let p_den = d_i * gd - 4 * gn;
        let q_num = 2 * d_i * (d_i + 8) * gd;
        let q_den = (d_i * d_i + 4 * d_i) * gd + 16 * gn;
        if p_den > 0 {
            out.push((Exponent::ratio(p_num, p_den), Exponent::ratio(q_num, q_den)));
        }
    }
    out
}

/// Default finite catalogue standing in for the sup over all admissible
/// pairs: `{(∞,2), (2, 2d/(d-4)) when defined, (16/d, 4), (4, 2d/(d-2))}`
/// filtered to the biharmonic-admissible ones.
pub fn default_zi_catalogue(d: u32) -> Vec<(Exponent, Exponent, u32)> {
    let d_i = d as i64;
    let mut raw = vec![(Exponent::Infinity, Exponent::finite_int(2))];
    if d_i > 4 {
        raw.push((Exponent::finite_int(2), Exponent::ratio(2 * d_i, d_i - 4)));
    }
    raw.push((Exponent::ratio(16, d_i), Exponent::finite_int(4)));
    if d_i > 2 {
        raw.push((Exponent::finite_int(4), Exponent::ratio(2 * d_i, d_i - 2)));
    }
    raw.into_iter()
        .filter(|(p, q)| is_biharmonic_admissible(p, q, d))
        .map(|(p, q)| (p, q, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_pq_fixture_values() {
        // (16/5, 4) in d = 5 scales to zero and is biharmonic admissible
        let p = Exponent::ratio(16, 5);
        let q = Exponent::finite_int(4);
        assert!(gamma_pq(&p, &q, 5).unwrap().is_zero());
        assert!(is_biharmonic_admissible(&p, &q, 5));

        // (inf, 2) has gamma 0 in every dimension
        for d in 1..=9 {
            let g = gamma_pq(&Exponent::Infinity, &Exponent::finite_int(2), d).unwrap();
            assert!(g.is_zero());
            assert!(is_biharmonic_admissible(
                &Exponent::Infinity,
                &Exponent::finite_int(2),
                d
            ));
        }

        // (32/11, 8d/(4d-11)) for d = 6
        let p = Exponent::ratio(32, 11);
        let q = Exponent::ratio(48, 13);
        assert!(is_biharmonic_admissible(&p, &q, 6));
    }

    #[test]
    fn named_families_scale_to_zero_exactly() {
        for d in 5..=7u32 {
            let gammas: Vec<(i64, i64)> = vec![(1, 2), (1, 1), (9, 8)];
            for (p, q) in named_admissible_pairs(d, &gammas) {
                let g = gamma_pq(&p, &q, d).unwrap();
                assert!(g.is_zero(), "pair ({p}, {q}) in d={d} has gamma {g}");
                assert!(is_biharmonic_admissible(&p, &q, d), "pair ({p}, {q}) d={d}");
            }
        }
    }

    #[test]
    fn gwp_thresholds_exact() {
        assert_eq!(gamma_lower_gwp(5), BigRational::new(40.into(), 23.into()));
        assert_eq!(gamma_lower_gwp(6), BigRational::new(24.into(), 13.into()));
        assert_eq!(gamma_lower_gwp(7), BigRational::new(56.into(), 29.into()));
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("16/5".parse::<Exponent>().unwrap(), Exponent::ratio(16, 5));
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("4".parse::<Exponent>().unwrap(), Exponent::finite_int(4));
        assert!("4/0".parse::<Exponent>().is_err());
    }

    #[test]
    fn report_fixture_values() {
        // gamma above the d=5 concentration threshold with delta inside the
        // admissible interval keeps every denominator positive
        let r = compute_paper_exponents(5, 1.96, 0.5).unwrap();
        assert!(r.regularity_ok); // ceil(1.96) = 2 <= 1 + 8/5
        assert!(r.positivity_ok);
        assert!(r.a_gamma_in_range, "a(gamma) = {}", r.a_gamma);
        assert!((r.gamma_lower_gwp - 40.0 / 23.0).abs() < 1e-15);
        // the verbatim limiting-profile exponent at the value noted as
        // exceeding 2 by direct arithmetic
        assert!((a_dgamma(5, 1.97).unwrap() - 2.755).abs() < 0.01);

        let bad = compute_paper_exponents(5, 2.5, 0.0);
        assert!(bad.is_err()); // outside (0, 2)
    }

    #[test]
    fn regularity_ceiling() {
        assert!(regularity_ceiling_ok(5, 1.9)); // 2 <= 2.6
        assert!(!regularity_ceiling_ok(5, 2.5)); // 3 > 2.6
        assert!(!regularity_ceiling_ok(9, 1.9)); // 2 > 1 + 8/9
        assert!(compute_paper_exponents(5, 1.96, 0.5).unwrap().regularity_ok);
    }

    #[test]
    fn domain_error_names_condition() {
        // gamma small makes the a(gamma) denominator negative
        let e = compute_paper_exponents(5, 0.5, 0.0).unwrap_err();
        match e {
            Error::ExponentDomain { condition } => {
                assert!(condition.contains("(2 - gamma + delta)"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn sqrt_oracle_agrees_with_f64() {
        for &v in &[2.0f64, 15121.0, 18340.0, 21833.0] {
            let r = rational_sqrt(&BigRational::from_f64(v).unwrap(), 8);
            let err = (rational_to_f64(&r) - v.sqrt()).abs();
            assert!(err <= 4.0 * f64::EPSILON * v.sqrt());
        }
    }
}
