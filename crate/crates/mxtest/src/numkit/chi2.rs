//! Chi-square CDF/quantile and the noncentral chi-square survival function.

use super::normal::normal_quantile;
use super::special::{ln_gamma, reg_gamma_lower, reg_gamma_upper};
use super::NumError;

/// CDF of the chi-square distribution with `d` degrees of freedom.
pub fn chi2_cdf(d: usize, x: f64) -> Result<f64, NumError> {
    if d == 0 {
        return Err(NumError::Domain("chi2_cdf requires d >= 1".into()));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    reg_gamma_lower(d as f64 / 2.0, x / 2.0)
}

/// Survival function P[chi^2_d > x].
pub fn chi2_sf(d: usize, x: f64) -> Result<f64, NumError> {
    if d == 0 {
        return Err(NumError::Domain("chi2_sf requires d >= 1".into()));
    }
    if x <= 0.0 {
        return Ok(1.0);
    }
    reg_gamma_upper(d as f64 / 2.0, x / 2.0)
}

/// Quantile of the chi-square distribution: returns c with CDF(c) = p.
///
/// Newton iteration on the regularized incomplete gamma with a
/// Wilson-Hilferty starting point and a bisection safeguard.
pub fn chi2_quantile(d: usize, p: f64) -> Result<f64, NumError> {
    if d == 0 {
        return Err(NumError::Domain("chi2_quantile requires d >= 1".into()));
    }
    if !(0.0 < p && p < 1.0) {
        return Err(NumError::Domain(format!(
            "chi2_quantile requires p in (0,1), got {p}"
        )));
    }
    let df = d as f64;

    // Wilson-Hilferty start, clipped to a positive value.
    let z = normal_quantile(p)?;
    let a = 2.0 / (9.0 * df);
    let wh = df * (1.0 - a + z * a.sqrt()).powi(3);
    let mut x = if wh.is_finite() && wh > 0.0 { wh } else { df };

    // Bracket the root so Newton can be safeguarded.
    let mut lo = 0.0;
    let mut hi = x.max(df);
    while chi2_cdf(d, hi)? < p {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(NumError::NoConvergence(
                "chi2_quantile could not bracket the root".into(),
            ));
        }
    }
    if x <= lo || x >= hi {
        x = 0.5 * (lo + hi);
    }

    let ln_norm = -ln_gamma(df / 2.0) - (df / 2.0) * 2f64.ln();
    for _ in 0..200 {
        let f = chi2_cdf(d, x)? - p;
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        // chi-square pdf at x
        let pdf = (ln_norm + (df / 2.0 - 1.0) * x.ln() - x / 2.0).exp();
        let mut next = if pdf > 0.0 { x - f / pdf } else { 0.5 * (lo + hi) };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-13 * x.max(1e-280) {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Survival function of the noncentral chi-square: P[chi^2_d(lambda) > t].
///
/// Poisson mixture of central chi-square survival functions, summed outward
/// from the Poisson mode so that large noncentralities do not underflow.
/// Terms are dropped once they fall below 1e-16 of the running total.
pub fn noncentral_chi2_sf(d: usize, lambda: f64, t: f64) -> Result<f64, NumError> {
    if d == 0 {
        return Err(NumError::Domain("noncentral_chi2_sf requires d >= 1".into()));
    }
    if lambda < 0.0 || t < 0.0 {
        return Err(NumError::Domain(format!(
            "noncentral_chi2_sf requires lambda >= 0 and t >= 0 (got lambda={lambda}, t={t})"
        )));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    if lambda == 0.0 {
        return chi2_sf(d, t);
    }

    const TERM_TOL: f64 = 1e-16;
    let half_l = lambda / 2.0;
    let half_t = t / 2.0;
    let half_d = d as f64 / 2.0;
    let k0 = half_l.floor() as i64;

    // log Poisson weight at the mode
    let ln_w0 = k0 as f64 * half_l.ln() - half_l - ln_gamma(k0 as f64 + 1.0);
    let w0 = ln_w0.exp();
    let s0 = reg_gamma_upper(half_d + k0 as f64, half_t)?;

    // ln of x^a e^{-x} / Gamma(a+1) evaluated at a = half_d + k, x = half_t;
    // this is the increment in Q(a, x) when a increases by one.
    let ln_inc = |k: i64| -> f64 {
        let a = half_d + k as f64;
        a * half_t.ln() - half_t - ln_gamma(a + 1.0)
    };

    let mut total = w0 * s0;

    // upward from the mode
    let mut w = w0;
    let mut s = s0;
    let mut k = k0;
    loop {
        // survival gains one term when the order steps up
        s += ln_inc(k).exp();
        w *= half_l / (k + 1) as f64;
        k += 1;
        let term = w * s.min(1.0);
        total += term;
        if term < TERM_TOL * total.max(1e-300) || k > k0 + 100_000_000 {
            break;
        }
    }

    // downward from the mode
    w = w0;
    s = s0;
    k = k0;
    while k > 0 {
        s -= ln_inc(k - 1).exp();
        w *= k as f64 / half_l;
        k -= 1;
        let term = w * s.clamp(0.0, 1.0);
        total += term;
        if term < TERM_TOL * total.max(1e-300) {
            break;
        }
    }

    Ok(total.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_matches_closed_form_d2() {
        // chi^2_2 is exponential with mean 2: quantile(p) = -2 ln(1-p)
        let q = chi2_quantile(2, 0.95).unwrap();
        assert!((q - (-2.0 * 0.05f64.ln())).abs() < 1e-9, "q={q}");
        for &p in &[0.01, 0.25, 0.5, 0.75, 0.99] {
            let q = chi2_quantile(2, p).unwrap();
            assert!((q - (-2.0 * (1.0 - p).ln())).abs() < 1e-10 * q.max(1.0));
        }
    }

    #[test]
    fn quantile_d1_reference() {
        let q = chi2_quantile(1, 0.95).unwrap();
        assert!((q - 3.84146).abs() < 1e-5, "q={q}");
    }

    #[test]
    fn quantile_lower_endpoint() {
        // p -> 0+ drives the quantile to 0
        let mut prev = f64::INFINITY;
        for &p in &[1e-2, 1e-4, 1e-6, 1e-8, 1e-10] {
            let q = chi2_quantile(1, p).unwrap();
            assert!(q < prev);
            prev = q;
        }
        assert!(prev < 1e-18);
    }

    #[test]
    fn quantile_cdf_inverse() {
        for d in [1usize, 2, 3, 5, 10, 16] {
            for i in 1..100 {
                let p = i as f64 / 100.0;
                let q = chi2_quantile(d, p).unwrap();
                let back = chi2_cdf(d, q).unwrap();
                assert!(
                    (back - p).abs() < 1e-9,
                    "d={d} p={p}: roundtrip {back}"
                );
            }
        }
    }

    #[test]
    fn quantile_domain_errors() {
        assert!(chi2_quantile(1, 0.0).is_err());
        assert!(chi2_quantile(1, 1.0).is_err());
        assert!(chi2_quantile(1, -0.2).is_err());
        assert!(chi2_quantile(0, 0.5).is_err());
    }

    #[test]
    fn noncentral_reduces_to_central_at_zero_lambda() {
        for d in [1usize, 3, 7] {
            for &t in &[0.5, 2.0, 10.0] {
                let nc = noncentral_chi2_sf(d, 0.0, t).unwrap();
                let c = chi2_sf(d, t).unwrap();
                assert!((nc - c).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn noncentral_survival_at_zero_is_one() {
        assert_eq!(noncentral_chi2_sf(3, 4.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn noncentral_domain_errors() {
        assert!(noncentral_chi2_sf(1, -1.0, 1.0).is_err());
        assert!(noncentral_chi2_sf(1, 1.0, -1.0).is_err());
    }

    #[test]
    fn noncentral_monotone_in_t_and_lambda() {
        // nonincreasing in t
        for d in [1usize, 4] {
            for &lambda in &[0.0, 1.0, 9.0, 100.0] {
                let mut prev = 1.0;
                for i in 0..40 {
                    let t = i as f64 * 0.8;
                    let s = noncentral_chi2_sf(d, lambda, t).unwrap();
                    assert!(s <= prev + 1e-12, "d={d} lambda={lambda} t={t}");
                    prev = s;
                }
            }
        }
        // nondecreasing in lambda
        for d in [1usize, 4] {
            for &t in &[0.5, 3.84, 12.0] {
                let mut prev = 0.0;
                for i in 0..40 {
                    let lambda = i as f64 * 0.7;
                    let s = noncentral_chi2_sf(d, lambda, t).unwrap();
                    assert!(s >= prev - 1e-12, "d={d} t={t} lambda={lambda}");
                    prev = s;
                }
            }
        }
    }

    #[test]
    fn noncentral_huge_lambda_saturates() {
        let s = noncentral_chi2_sf(1, 1e6, 3.84146).unwrap();
        assert!(s > 1.0 - 1e-9, "s={s}");
    }
}
