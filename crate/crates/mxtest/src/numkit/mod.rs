//! Self-contained numerical primitives.
//!
//! Distribution functions and quantiles (chi-square, noncentral chi-square,
//! standard normal), Gauss-Hermite quadrature, small dense symmetric linear
//! algebra, goodness-of-fit statistics, and a seedable stream-splittable RNG.
//! Everything here is hand-rolled so that accuracy is testable against
//! independent Monte Carlo oracles without pulling in numerical dependencies.

mod chi2;
mod gof;
mod matrix;
mod normal;
mod quad;
mod rng;
mod special;
mod symmatrix;

pub use chi2::{chi2_cdf, chi2_quantile, chi2_sf, noncentral_chi2_sf};
pub use gof::{ad_statistic, kolmogorov_critical, ks_statistic, AD_CRIT_1PCT};
pub use matrix::{dot, Matrix};
pub use normal::{normal_cdf, normal_pdf, normal_quantile, normal_sf};
pub use quad::{gh_expect, QuadratureRule};
pub use rng::RngStream;
pub use special::{ln_gamma, reg_gamma_lower, reg_gamma_upper};
pub use symmatrix::SymMatrix;

use thiserror::Error;

/// Errors from the numerical primitives.
#[derive(Debug, Error)]
pub enum NumError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is numerically singular (offending eigenvalue {eigenvalue:e})")]
    Singular { eigenvalue: f64 },
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),
}

/// Soft threshold `(|x| - theta)_+ * sign(x)`, the scalar lasso shrinkage.
pub fn soft_threshold(x: f64, theta: f64) -> f64 {
    debug_assert!(theta >= 0.0);
    if x > theta {
        x - theta
    } else if x < -theta {
        x + theta
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soft_threshold_definition() {
        assert_eq!(soft_threshold(2.0, 1.0), 1.0);
        assert_eq!(soft_threshold(-2.0, 1.0), -1.0);
        assert_eq!(soft_threshold(0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(-0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(3.0, 0.0), 3.0);
    }
}
