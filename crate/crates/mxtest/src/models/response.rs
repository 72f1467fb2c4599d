//! Response laws: the random-effects null and the semiparametric alternative.

use super::{CovariateModel, Dataset, ModelError, MomentOracle};
use crate::numkit::{dot, Matrix, RngStream};

/// Null response Y = Z' gamma + eps with gamma ~ N(0, sigma_gamma^2 I_p)
/// drawn once per dataset and eps ~ N(0, sigma_eps^2) per row.
#[derive(Debug, Clone)]
pub struct RandomEffectsResponse {
    pub sigma_gamma2: f64,
    pub sigma_eps2: f64,
    pub snr: f64,
}

impl RandomEffectsResponse {
    /// Calibrates sigma_gamma^2 so that SNR = E||Z||^2 sigma_gamma^2 / sigma_eps^2
    /// holds exactly, using the exact E||Z||^2 of the chain.
    pub fn calibrated(
        model: &super::MarkovChainModel,
        snr: f64,
        sigma_eps2: f64,
    ) -> Result<Self, ModelError> {
        if snr < 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "snr must be >= 0, got {snr}"
            )));
        }
        if sigma_eps2 <= 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "sigma_eps2 must be > 0, got {sigma_eps2}"
            )));
        }
        let ez2 = model.expected_z_norm2();
        if ez2 <= 0.0 {
            return Err(ModelError::Degenerate(
                "E||Z||^2 = 0; SNR calibration impossible".into(),
            ));
        }
        Ok(RandomEffectsResponse {
            sigma_gamma2: snr * sigma_eps2 / ez2,
            sigma_eps2,
            snr,
        })
    }

    /// Direct construction (tests and degenerate cases).
    pub fn with_variances(sigma_gamma2: f64, sigma_eps2: f64, snr: f64) -> Self {
        RandomEffectsResponse {
            sigma_gamma2,
            sigma_eps2,
            snr,
        }
    }

    /// The per-dataset coefficient draw.
    pub fn draw_coefficients(&self, p: usize, rng: &mut RngStream) -> Vec<f64> {
        let sd = self.sigma_gamma2.sqrt();
        (0..p).map(|_| sd * rng.standard_normal()).collect()
    }

    /// One response draw given z and the dataset coefficients.
    pub fn sample_y(&self, z: &[f64], gamma: &[f64], rng: &mut RngStream) -> f64 {
        debug_assert_eq!(z.len(), gamma.len());
        dot(z, gamma) + self.sigma_eps2.sqrt() * rng.standard_normal()
    }

    /// A full dataset draw from the covariate model under this null.
    pub fn draw_dataset(
        &self,
        model: &dyn CovariateModel,
        n: usize,
        rng: &mut RngStream,
    ) -> Dataset {
        let gamma = self.draw_coefficients(model.dim_z(), rng);
        let d = model.dim_x();
        let p = model.dim_z();
        let mut x = Matrix::zeros(n, d);
        let mut z = Matrix::zeros(n, p);
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let (xi, zi) = model.sample_joint(rng);
            x.row_mut(i).copy_from_slice(&xi);
            z.row_mut(i).copy_from_slice(&zi);
            y.push(self.sample_y(&zi, &gamma, rng));
        }
        Dataset { x, y, z }
    }
}

/// Semiparametric alternative Y = (X - mu(Z))' beta + g(Z) + eps.
pub struct SemiparamResponse {
    pub beta: Vec<f64>,
    pub g: Box<dyn Fn(&[f64]) -> f64 + Sync + Send>,
    pub sigma2: f64,
}

impl SemiparamResponse {
    pub fn new(
        beta: Vec<f64>,
        g: Box<dyn Fn(&[f64]) -> f64 + Sync + Send>,
        sigma2: f64,
    ) -> Result<Self, ModelError> {
        if sigma2 <= 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "sigma2 must be > 0, got {sigma2}"
            )));
        }
        Ok(SemiparamResponse { beta, g, sigma2 })
    }

    /// One response draw; the centered predictor uses the oracle's mu(z).
    pub fn sample_y(
        &self,
        x: &[f64],
        z: &[f64],
        moments: &dyn MomentOracle,
        rng: &mut RngStream,
    ) -> Result<f64, ModelError> {
        if x.len() != self.beta.len() {
            return Err(ModelError::DimensionMismatch(format!(
                "x has dim {}, beta has dim {}",
                x.len(),
                self.beta.len()
            )));
        }
        let mu = moments.mean(z);
        if mu.len() != x.len() {
            return Err(ModelError::DimensionMismatch(
                "moment oracle disagrees with x dimension".into(),
            ));
        }
        let centered: f64 = x
            .iter()
            .zip(&mu)
            .zip(&self.beta)
            .map(|((xi, mi), bi)| (xi - mi) * bi)
            .sum();
        Ok(centered + (self.g)(z) + self.sigma2.sqrt() * rng.standard_normal())
    }

    /// Noiseless systematic part, used by tests.
    pub fn mean_response(
        &self,
        x: &[f64],
        z: &[f64],
        moments: &dyn MomentOracle,
    ) -> Result<f64, ModelError> {
        if x.len() != self.beta.len() {
            return Err(ModelError::DimensionMismatch(
                "x/beta dimension mismatch".into(),
            ));
        }
        let mu = moments.mean(z);
        let centered: f64 = x
            .iter()
            .zip(&mu)
            .zip(&self.beta)
            .map(|((xi, mi), bi)| (xi - mi) * bi)
            .sum();
        Ok(centered + (self.g)(z))
    }

    /// A full dataset draw from the covariate model under this alternative.
    pub fn draw_dataset(
        &self,
        model: &dyn CovariateModel,
        n: usize,
        rng: &mut RngStream,
    ) -> Result<Dataset, ModelError> {
        let d = model.dim_x();
        let p = model.dim_z();
        let mut x = Matrix::zeros(n, d);
        let mut z = Matrix::zeros(n, p);
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let (xi, zi) = model.sample_joint(rng);
            y.push(self.sample_y(&xi, &zi, model, rng)?);
            x.row_mut(i).copy_from_slice(&xi);
            z.row_mut(i).copy_from_slice(&zi);
        }
        Dataset { x, y, z }
    }
}
