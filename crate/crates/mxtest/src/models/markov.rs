//! Binary Markov chain over (X, Z_1, ..., Z_p).
//!
//! X ~ Ber(pi_init) starts the chain and each subsequent bit flips with
//! probability pi_flip. The Markov property makes the conditional law of
//! X | Z depend on Z only through Z_1, which gives exact conditional
//! moments for the MX(2) tests.

use super::{CovariateModel, ModelError, MomentOracle};
use crate::numkit::{RngStream, SymMatrix};

/// Markov chain covariate model with dim(X) = 1.
#[derive(Debug, Clone)]
pub struct MarkovChainModel {
    pi_init: f64,
    pi_flip: f64,
    p: usize,
}

impl MarkovChainModel {
    pub fn new(pi_init: f64, pi_flip: f64, p: usize) -> Result<Self, ModelError> {
        for (name, v) in [("pi_init", pi_init), ("pi_flip", pi_flip)] {
            if !(0.0 < v && v < 1.0) {
                return Err(ModelError::InvalidParameter(format!(
                    "{name} must lie strictly inside (0,1), got {v}"
                )));
            }
        }
        if p == 0 {
            return Err(ModelError::InvalidParameter(
                "covariate dimension p must be >= 1".into(),
            ));
        }
        Ok(MarkovChainModel {
            pi_init,
            pi_flip,
            p,
        })
    }

    pub fn pi_init(&self) -> f64 {
        self.pi_init
    }

    pub fn pi_flip(&self) -> f64 {
        self.pi_flip
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// P[X = 1 | Z = z]; depends on z only through z_1.
    pub fn conditional_prob(&self, z: &[f64]) -> f64 {
        assert!(!z.is_empty(), "conditional_prob needs a nonempty z");
        let z1 = z[0];
        let w = |x: f64| -> f64 {
            if (z1 - x).abs() > 0.5 {
                self.pi_flip
            } else {
                1.0 - self.pi_flip
            }
        };
        let a = self.pi_init * w(1.0);
        let b = (1.0 - self.pi_init) * w(0.0);
        a / (a + b)
    }

    /// Exact conditional mean and variance of the Bernoulli X | Z = z.
    pub fn conditional_moments(&self, z: &[f64]) -> (f64, f64) {
        let mu = self.conditional_prob(z);
        (mu, mu * (1.0 - mu))
    }

    /// E||Z||^2 via the marginal recursion m_0 = pi_init,
    /// m_j = m_{j-1}(1 - pi_flip) + (1 - m_{j-1}) pi_flip; binary entries
    /// make E[Z_j^2] = m_j.
    pub fn expected_z_norm2(&self) -> f64 {
        self.marginal_means().iter().sum()
    }

    /// Marginal P[Z_j = 1] for j = 1..p.
    pub fn marginal_means(&self) -> Vec<f64> {
        let mut m = self.pi_init;
        (0..self.p)
            .map(|_| {
                m = m * (1.0 - self.pi_flip) + (1.0 - m) * self.pi_flip;
                m
            })
            .collect()
    }
}

impl MomentOracle for MarkovChainModel {
    fn dim_x(&self) -> usize {
        1
    }

    fn mean(&self, z: &[f64]) -> Vec<f64> {
        vec![self.conditional_prob(z)]
    }

    fn var(&self, z: &[f64]) -> SymMatrix {
        let (_, s2) = self.conditional_moments(z);
        SymMatrix::scalar(s2)
    }
}

impl CovariateModel for MarkovChainModel {
    fn dim_z(&self) -> usize {
        self.p
    }

    fn sample_joint(&self, rng: &mut RngStream) -> (Vec<f64>, Vec<f64>) {
        let x = if rng.bernoulli(self.pi_init) { 1.0 } else { 0.0 };
        let mut z = Vec::with_capacity(self.p);
        let mut prev = x;
        for _ in 0..self.p {
            let next = if rng.bernoulli(self.pi_flip) {
                1.0 - prev
            } else {
                prev
            };
            z.push(next);
            prev = next;
        }
        (vec![x], z)
    }

    fn resample_x(&self, z: &[f64], rng: &mut RngStream) -> Vec<f64> {
        let p1 = self.conditional_prob(z);
        vec![if rng.bernoulli(p1) { 1.0 } else { 0.0 }]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(pi_init: f64, pi_flip: f64, p: usize) -> MarkovChainModel {
        MarkovChainModel::new(pi_init, pi_flip, p).unwrap()
    }

    #[test]
    fn rejects_boundary_probabilities() {
        assert!(MarkovChainModel::new(0.0, 0.1, 3).is_err());
        assert!(MarkovChainModel::new(0.1, 1.0, 3).is_err());
        assert!(MarkovChainModel::new(0.1, 0.1, 0).is_err());
    }

    #[test]
    fn conditional_prob_equal_weights_case() {
        // pi_init = pi_flip = 0.1, z1 = 1: 0.1*0.9 vs 0.9*0.1 balance to 1/2
        let m = model(0.1, 0.1, 4);
        assert!((m.conditional_prob(&[1.0, 0.0, 1.0, 0.0]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn conditional_prob_bayes_case() {
        // z1 = 0: 0.1*0.1 / (0.1*0.1 + 0.9*0.9) = 0.01/0.82
        let m = model(0.1, 0.1, 2);
        let got = m.conditional_prob(&[0.0, 1.0]);
        assert!((got - 0.01 / 0.82).abs() < 1e-15, "got {got}");
        assert!((got - 0.0121951).abs() < 1e-7);
    }

    #[test]
    fn flip_half_erases_dependence() {
        let m = model(0.3, 0.5, 3);
        for z1 in [0.0, 1.0] {
            assert!((m.conditional_prob(&[z1, 1.0, 0.0]) - 0.3).abs() < 1e-15);
        }
    }

    #[test]
    fn conditional_depends_only_on_z1() {
        let m = model(0.2, 0.15, 5);
        let a = m.conditional_prob(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        let b = m.conditional_prob(&[1.0, 1.0, 1.0, 0.0, 1.0]);
        assert_eq!(a, b);
    }

    #[test]
    fn moments_are_bernoulli() {
        let m = model(0.1, 0.1, 2);
        let (mu, s2) = m.conditional_moments(&[1.0, 0.0]);
        assert!((mu - 0.5).abs() < 1e-15);
        assert!((s2 - 0.25).abs() < 1e-15);

        // flip prob 1/2: moments are those of Ber(pi_init)
        let m = model(0.3, 0.5, 2);
        let (mu, s2) = m.conditional_moments(&[0.0, 0.0]);
        assert!((mu - 0.3).abs() < 1e-15);
        assert!((s2 - 0.21).abs() < 1e-15);
    }

    #[test]
    fn degenerate_probe_kills_variance() {
        // pi_init tiny with an agreeing z1 drives mu -> 0 and sigma2 -> 0
        for &eps in &[1e-4, 1e-6, 1e-8] {
            let m = model(eps, 0.1, 1);
            let (mu, s2) = m.conditional_moments(&[0.0]);
            assert!(mu < 2.0 * eps);
            assert!(s2 < 2.0 * eps);
        }
    }

    #[test]
    fn marginal_recursion_hand_values() {
        // pi_init = pi_flip = 0.1, p = 3: m = (0.18, 0.244, 0.2952)
        let m = model(0.1, 0.1, 3);
        let means = m.marginal_means();
        assert!((means[0] - 0.18).abs() < 1e-12);
        assert!((means[1] - 0.244).abs() < 1e-12);
        assert!((means[2] - 0.2952).abs() < 1e-12);
        assert!((m.expected_z_norm2() - 0.7192).abs() < 1e-12);
    }

    #[test]
    fn marginal_recursion_fixed_point() {
        let m = model(0.5, 0.5, 8);
        for v in m.marginal_means() {
            assert!((v - 0.5).abs() < 1e-15);
        }
        assert!((m.expected_z_norm2() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn sample_joint_marginals() {
        let m = model(0.1, 0.1, 4);
        let mut rng = RngStream::root(99);
        let n = 100_000;
        let mut x_sum = 0.0;
        let mut z1_neq_x = 0.0;
        for _ in 0..n {
            let (x, z) = m.sample_joint(&mut rng);
            x_sum += x[0];
            if (z[0] - x[0]).abs() > 0.5 {
                z1_neq_x += 1.0;
            }
        }
        let nf = n as f64;
        let se_init = (0.1f64 * 0.9 / nf).sqrt();
        assert!((x_sum / nf - 0.1).abs() < 3.0 * se_init);
        let se_flip = (0.1f64 * 0.9 / nf).sqrt();
        assert!((z1_neq_x / nf - 0.1).abs() < 3.0 * se_flip);
    }
}
