//! Jointly Gaussian (X, Z) designs.
//!
//! The orthogonal case (X, Z) ~ N(0, I_{d+p}) has mu(z) = 0 and
//! Sigma(z) = I_d identically. A general covariance over the stacked vector
//! (X, Z) is supported for small dimensions; conditional moments follow the
//! Schur complement and are precomputed at construction.

use super::{CovariateModel, ModelError, MomentOracle};
use crate::numkit::{Matrix, RngStream, SymMatrix};

/// Covariance specification over the stacked vector (X, Z).
#[derive(Debug, Clone)]
pub enum CovarianceSpec {
    /// Identity covariance: all coordinates independent standard normal.
    Identity,
    /// Full (d+p) x (d+p) covariance; must be positive definite.
    Full(SymMatrix),
}

/// Gaussian covariate model.
pub struct GaussianDesign {
    d: usize,
    p: usize,
    general: Option<GeneralParts>,
}

/// Precomputed pieces for the general-covariance case.
struct GeneralParts {
    /// Cholesky factor of the full (d+p) covariance, for joint draws.
    chol_full: Matrix,
    /// W = S_xz S_zz^{-1} (d x p), so mu(z) = W z.
    cond_mean_map: Matrix,
    /// Sigma(z) = S_xx - W S_zx, constant in z for Gaussians.
    cond_var: SymMatrix,
    /// Cholesky factor of the conditional variance, for resampling.
    chol_cond: Matrix,
}

impl GaussianDesign {
    pub fn new(d: usize, p: usize, cov: CovarianceSpec) -> Result<Self, ModelError> {
        if d == 0 || p == 0 {
            return Err(ModelError::InvalidParameter(
                "GaussianDesign requires d >= 1 and p >= 1".into(),
            ));
        }
        match cov {
            CovarianceSpec::Identity => Ok(GaussianDesign {
                d,
                p,
                general: None,
            }),
            CovarianceSpec::Full(s) => {
                if s.dim() != d + p {
                    return Err(ModelError::DimensionMismatch(format!(
                        "covariance is {}x{} but d+p = {}",
                        s.dim(),
                        s.dim(),
                        d + p
                    )));
                }
                let chol_full = s
                    .cholesky()
                    .map_err(|e| ModelError::InvalidParameter(format!("covariance not PD: {e}")))?;
                // Schur complement pieces
                let s_zz = SymMatrix::from_fn(p, |i, j| s.get(d + i, d + j));
                let s_zz_inv = s_zz.inverse().map_err(|e| {
                    ModelError::InvalidParameter(format!("Z block not invertible: {e}"))
                })?;
                // W = S_xz S_zz^{-1}
                let cond_mean_map = Matrix::from_fn(d, p, |i, j| {
                    (0..p).map(|k| s.get(i, d + k) * s_zz_inv.get(k, j)).sum()
                });
                let cond_var = SymMatrix::from_fn(d, |i, j| {
                    s.get(i, j)
                        - (0..p)
                            .map(|k| cond_mean_map.get(i, k) * s.get(j, d + k))
                            .sum::<f64>()
                });
                let chol_cond = cond_var.cholesky().map_err(|e| {
                    ModelError::InvalidParameter(format!("conditional variance not PD: {e}"))
                })?;
                Ok(GaussianDesign {
                    d,
                    p,
                    general: Some(GeneralParts {
                        chol_full,
                        cond_mean_map,
                        cond_var,
                        chol_cond,
                    }),
                })
            }
        }
    }

    /// Orthogonal design (identity covariance).
    pub fn orthogonal(d: usize, p: usize) -> Result<Self, ModelError> {
        GaussianDesign::new(d, p, CovarianceSpec::Identity)
    }
}

fn lower_tri_apply(l: &Matrix, v: &[f64]) -> Vec<f64> {
    (0..l.rows())
        .map(|i| (0..=i).map(|j| l.get(i, j) * v[j]).sum())
        .collect()
}

impl MomentOracle for GaussianDesign {
    fn dim_x(&self) -> usize {
        self.d
    }

    fn mean(&self, z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.p);
        match &self.general {
            None => vec![0.0; self.d],
            Some(g) => g.cond_mean_map.matvec(z),
        }
    }

    fn var(&self, z: &[f64]) -> SymMatrix {
        assert_eq!(z.len(), self.p);
        match &self.general {
            None => SymMatrix::identity(self.d),
            Some(g) => g.cond_var.clone(),
        }
    }
}

impl CovariateModel for GaussianDesign {
    fn dim_z(&self) -> usize {
        self.p
    }

    fn sample_joint(&self, rng: &mut RngStream) -> (Vec<f64>, Vec<f64>) {
        let total = self.d + self.p;
        let raw: Vec<f64> = (0..total).map(|_| rng.standard_normal()).collect();
        let joint = match &self.general {
            None => raw,
            Some(g) => lower_tri_apply(&g.chol_full, &raw),
        };
        (joint[..self.d].to_vec(), joint[self.d..].to_vec())
    }

    fn resample_x(&self, z: &[f64], rng: &mut RngStream) -> Vec<f64> {
        let raw: Vec<f64> = (0..self.d).map(|_| rng.standard_normal()).collect();
        match &self.general {
            None => raw,
            Some(g) => {
                let mut x = g.cond_mean_map.matvec(z);
                let noise = lower_tri_apply(&g.chol_cond, &raw);
                for (xi, ni) in x.iter_mut().zip(noise) {
                    *xi += ni;
                }
                x
            }
        }
    }
}
