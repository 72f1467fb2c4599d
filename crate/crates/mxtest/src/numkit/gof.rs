//! Goodness-of-fit statistics against a fully specified distribution.

/// Kolmogorov-Smirnov statistic of `samples` against the CDF `f`.
pub fn ks_statistic(samples: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    assert!(!samples.is_empty());
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let u = f(x);
        d = d.max(u - i as f64 / n).max((i + 1) as f64 / n - u);
    }
    d
}

/// Asymptotic Kolmogorov-Smirnov critical value at level `alpha` for sample
/// size `n`: c(alpha)/sqrt(n) with K(c) = 1 - alpha, solved by bisection on
/// the Kolmogorov series K(x) = 1 - 2 sum (-1)^{k-1} exp(-2 k^2 x^2).
pub fn kolmogorov_critical(n: usize, alpha: f64) -> f64 {
    assert!(n >= 1 && alpha > 0.0 && alpha < 1.0);
    let k_cdf = |x: f64| -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let mut s = 0.0;
        for k in 1..200 {
            let term = (-2.0 * (k * k) as f64 * x * x).exp();
            s += if k % 2 == 1 { term } else { -term };
            if term < 1e-18 {
                break;
            }
        }
        1.0 - 2.0 * s
    };
    let target = 1.0 - alpha;
    let (mut lo, mut hi) = (1e-6, 5.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if k_cdf(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) / (n as f64).sqrt()
}

/// Anderson-Darling statistic of `samples` against the CDF `f`
/// (all parameters specified).
pub fn ad_statistic(samples: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    assert!(!samples.is_empty());
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    let u: Vec<f64> = xs.iter().map(|&x| f(x).clamp(1e-300, 1.0 - 1e-16)).collect();
    let nf = n as f64;
    let mut s = 0.0;
    for i in 0..n {
        s += (2.0 * i as f64 + 1.0) * (u[i].ln() + (1.0 - u[n - 1 - i]).ln());
    }
    -nf - s / nf
}

/// Asymptotic 1% critical value of the Anderson-Darling statistic for a
/// fully specified continuous distribution (Stephens' case 0).
pub const AD_CRIT_1PCT: f64 = 3.857;
