//! Dominant eigenpair of `Wᵀ` and the centrality weights derived from it.
//!
//! The left eigenvector `c` (`Wᵀ c = λ c`) scores individuals by how much they
//! influence others. For a nonnegative `W` with a positive eigenvector, `λ` is
//! the Perron root, so only the real dominant pair is ever needed.
//!
//! Power iteration runs on `Wᵀ + σI` with `σ = max(‖W‖₁, ‖W‖∞)`. The shift
//! leaves the eigenvectors alone, and it keeps periodic graphs (bipartite
//! cycles and the like) from oscillating between two vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{SocialNetwork, POSITIVE_EIGVEC_TOL};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub lambda: f64,
    /// Left eigenvector, normalized to sum to one.
    pub c: Vec<f64>,
    /// `c / Σc`; equal to `c` under the chosen normalization.
    pub c_hat: Vec<f64>,
    /// `Σc`, kept because the cost scales with `cᵀ1`.
    pub c_sum: f64,
    pub iterations: usize,
    pub residual: f64,
}

pub fn dominant_eigenpair(net: &SocialNetwork, tol: f64, max_iter: usize) -> Result<SpectralData> {
    let n = net.n();
    if n == 0 {
        return Err(Error::InvalidNetwork("empty network".into()));
    }
    dominant_eigenpair_from(net, &vec![1.0; n], tol, max_iter)
}

/// Same as [`dominant_eigenpair`] from a caller-chosen positive start vector.
pub fn dominant_eigenpair_from(net: &SocialNetwork, start: &[f64], tol: f64, max_iter: usize) -> Result<SpectralData> {
    let n = net.n();
    if n == 0 {
        return Err(Error::InvalidNetwork("empty network".into()));
    }
    if start.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: start.len(),
        });
    }
    let total: f64 = start.iter().sum();
    if !(start.iter().all(|v| v.is_finite() && *v > 0.0) && total.is_finite()) {
        return Err(Error::Precondition("start vector must be strictly positive".into()));
    }
    let shift = net.norm_1().max(net.norm_inf());
    let mut c: Vec<f64> = start.iter().map(|v| v / total).collect();

    if shift == 0.0 {
        // W = 0: every vector is an eigenvector for λ = 0
        return Ok(finish(0.0, c, 0, 0.0));
    }

    let mut residual = f64::INFINITY;
    for iter in 1..=max_iter {
        let wt_c = net.apply_transpose(&c);
        // c ≥ 0 with Σc = 1, so 1ᵀWᵀc is the Rayleigh-type estimate of λ
        let lambda: f64 = wt_c.iter().sum();
        residual = wt_c.iter().zip(&c).map(|(a, b)| (a - lambda * b).abs()).sum();
        if residual <= tol * lambda.max(1.0) {
            check_positive(&c)?;
            return Ok(finish(lambda, c, iter, residual));
        }
        let next: Vec<f64> = wt_c.iter().zip(&c).map(|(a, b)| a + shift * b).collect();
        let total: f64 = next.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::Numerical(format!("power iteration collapsed (sum {total})")));
        }
        c = next.into_iter().map(|v| v / total).collect();
    }
    Err(Error::IterationLimit {
        iterations: max_iter,
        residual,
    })
}

fn check_positive(c: &[f64]) -> Result<()> {
    match c.iter().enumerate().find(|(_, &v)| v <= POSITIVE_EIGVEC_TOL) {
        Some((i, v)) => Err(Error::AssumptionViolation(format!(
            "dominant eigenvector is not strictly positive (c[{i}] = {v:e})"
        ))),
        None => Ok(()),
    }
}

fn finish(lambda: f64, c: Vec<f64>, iterations: usize, residual: f64) -> SpectralData {
    let c_sum: f64 = c.iter().sum();
    let c_hat = c.iter().map(|v| v / c_sum).collect();
    SpectralData {
        lambda,
        c,
        c_hat,
        c_sum,
        iterations,
        residual,
    }
}

/// `Σ ĉᵢ valuesᵢ`
pub fn centrality_average(c_hat: &[f64], values: &[f64]) -> Result<f64> {
    if c_hat.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: c_hat.len(),
            got: values.len(),
        });
    }
    Ok(crate::linalg::dot(c_hat, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(w: Vec<Vec<f64>>) -> SocialNetwork {
        SocialNetwork::from_dense(w).unwrap()
    }

    #[test]
    fn symmetric_two_cycle() {
        let sd = dominant_eigenpair(
            &net(vec![vec![0.0, 0.3], vec![0.3, 0.0]]),
            DEFAULT_TOL,
            DEFAULT_MAX_ITER,
        )
        .unwrap();
        assert!((sd.lambda - 0.3).abs() < 1e-14);
        assert!((sd.c[0] - 0.5).abs() < 1e-14 && (sd.c[1] - 0.5).abs() < 1e-14);
        assert_eq!(sd.c_sum, 1.0);
    }

    #[test]
    fn directed_three_cycle_is_periodic_but_converges() {
        let w = vec![vec![0.0, 0.2, 0.0], vec![0.0, 0.0, 0.2], vec![0.2, 0.0, 0.0]];
        let sd = dominant_eigenpair(&net(w), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!((sd.lambda - 0.2).abs() < 1e-12);
    }

    #[test]
    fn nonpositive_eigenvector_rejected() {
        // node 2 influences nobody, so its centrality is zero
        let w = vec![vec![0.0, 0.3, 0.0], vec![0.3, 0.0, 0.0], vec![0.1, 0.0, 0.0]];
        let err = dominant_eigenpair(&net(w), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap_err();
        assert!(matches!(err, Error::AssumptionViolation(_)), "{err}");
    }

    #[test]
    fn iteration_limit_carries_residual() {
        let w = vec![vec![0.0, 0.3, 0.1], vec![0.2, 0.0, 0.1], vec![0.1, 0.1, 0.0]];
        match dominant_eigenpair(&net(w), 1e-15, 2) {
            Err(Error::IterationLimit {
                iterations: 2,
                residual,
            }) => assert!(residual > 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn centrality_average_basics() {
        let uniform = vec![0.25; 4];
        let s = [0.1, 0.2, 0.3, 0.4];
        assert!((centrality_average(&uniform, &s).unwrap() - 0.25).abs() < 1e-15);
        assert!((centrality_average(&uniform, &[1.0; 4]).unwrap() - 1.0).abs() < 1e-15);
        assert!(centrality_average(&uniform, &[1.0; 3]).is_err());
    }
}
