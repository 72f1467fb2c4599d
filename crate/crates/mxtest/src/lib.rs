//! Model-X conditional independence testing.
//!
//! The crate provides the conditional randomization test (CRT), the
//! resampling-free MX(2) F-test and t-test, knockoff one-bit p-values with
//! the Selective SeqStep filter, theoretical power calculators (noncentral
//! chi-square local power and the AMP fixed point for lasso-based tests),
//! and a seeded Monte Carlo experiment harness that reproduces the
//! calibration, equivalence, power, and FDR studies at desk scale.

pub mod crt;
pub mod experiments;
pub mod knockoffs;
pub mod models;
pub mod mx2;
pub mod numkit;
pub mod power;
pub mod regression;
