//! Covariate-and-response generative models.
//!
//! Covariate models sample (X, Z) jointly, resample X | Z, and expose the
//! known conditional moments mu(z) and Sigma(z). Response models cover the
//! random-effects null (Y depends on Z only) and the semiparametric
//! alternative Y = (X - mu(Z))' beta + g(Z) + eps.

mod gaussian;
mod markov;
mod response;

pub use gaussian::{CovarianceSpec, GaussianDesign};
pub use markov::MarkovChainModel;
pub use response::{RandomEffectsResponse, SemiparamResponse};

use crate::numkit::{Matrix, RngStream, SymMatrix};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate model: {0}")]
    Degenerate(String),
}

/// Known first two conditional moments of X | Z = z.
pub trait MomentOracle: Sync {
    fn dim_x(&self) -> usize;
    /// mu(z) = E[X | Z = z]
    fn mean(&self, z: &[f64]) -> Vec<f64>;
    /// Sigma(z) = Var[X | Z = z]
    fn var(&self, z: &[f64]) -> SymMatrix;
}

/// A fully known conditional law of X | Z: joint sampling plus resampling.
pub trait CovariateModel: MomentOracle {
    fn dim_z(&self) -> usize;
    /// One joint draw of (x, z).
    fn sample_joint(&self, rng: &mut RngStream) -> (Vec<f64>, Vec<f64>);
    /// A fresh draw of X | Z = z.
    fn resample_x(&self, z: &[f64], rng: &mut RngStream) -> Vec<f64>;
}

/// Moment oracle built from closures; used for synthetic-ghat studies and
/// tests where the moments are chosen directly.
pub struct FnOracle<M, S>
where
    M: Fn(&[f64]) -> Vec<f64> + Sync,
    S: Fn(&[f64]) -> SymMatrix + Sync,
{
    dim_x: usize,
    mean: M,
    var: S,
}

impl<M, S> FnOracle<M, S>
where
    M: Fn(&[f64]) -> Vec<f64> + Sync,
    S: Fn(&[f64]) -> SymMatrix + Sync,
{
    pub fn new(dim_x: usize, mean: M, var: S) -> Self {
        FnOracle { dim_x, mean, var }
    }
}

impl<M, S> MomentOracle for FnOracle<M, S>
where
    M: Fn(&[f64]) -> Vec<f64> + Sync,
    S: Fn(&[f64]) -> SymMatrix + Sync,
{
    fn dim_x(&self) -> usize {
        self.dim_x
    }

    fn mean(&self, z: &[f64]) -> Vec<f64> {
        (self.mean)(z)
    }

    fn var(&self, z: &[f64]) -> SymMatrix {
        (self.var)(z)
    }
}

/// n rows of (X in R^d, Y in R, Z in R^p).
#[derive(Debug, Clone)]
pub struct Dataset {
    pub x: Matrix,
    pub y: Vec<f64>,
    pub z: Matrix,
}

impl Dataset {
    pub fn new(x: Matrix, y: Vec<f64>, z: Matrix) -> Result<Self, ModelError> {
        if x.rows() != y.len() || z.rows() != y.len() {
            return Err(ModelError::DimensionMismatch(format!(
                "X has {} rows, Y has {}, Z has {}",
                x.rows(),
                y.len(),
                z.rows()
            )));
        }
        Ok(Dataset { x, y, z })
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn dim_x(&self) -> usize {
        self.x.cols()
    }

    pub fn dim_z(&self) -> usize {
        self.z.cols()
    }

    /// Same (Y, Z) with a replacement X matrix.
    pub fn with_x(&self, x: Matrix) -> Dataset {
        assert_eq!(x.rows(), self.n());
        Dataset {
            x,
            y: self.y.clone(),
            z: self.z.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dataset_rejects_ragged_dims() {
        let x = Matrix::zeros(3, 1);
        let z = Matrix::zeros(4, 2);
        assert!(Dataset::new(x, vec![0.0; 3], z).is_err());
    }
}
