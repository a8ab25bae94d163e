//! Opinion dynamics with two stubborn information sources and confirmation
//! bias.
//!
//! Individual `i` updates as a convex combination of her innate opinion, her
//! neighbours' opinions and the two source opinions `h` (Hank, high) and `g`
//! (Georgia, low). Source weights shrink with opinion distance:
//! `β − γ|xᵢ − h|` and `β − γ|xᵢ − g|`. The resistance `αᵢ` absorbs whatever
//! weight is left so each row sums to one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::network::{check_assumption1, SocialNetwork};

pub const DEFAULT_SIM_TOL: f64 = 1e-12;
pub const DEFAULT_SIM_MAX_ITER: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasParams {
    pub beta: f64,
    pub gamma: f64,
}

impl BiasParams {
    pub fn new(beta: f64, gamma: f64) -> Self {
        Self { beta, gamma }
    }

    /// Both coefficients finite and nonnegative. `β ≥ γ` is part of the
    /// assumption report, not of basic validity.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("beta", self.beta), ("gamma", self.gamma)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "{name} must be a nonnegative number, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub net: SocialNetwork,
    pub s: Vec<f64>,
    pub bias: BiasParams,
}

impl Scenario {
    pub fn new(net: SocialNetwork, s: Vec<f64>, bias: BiasParams) -> Result<Self> {
        if s.len() != net.n() {
            return Err(Error::InvalidScenario(format!(
                "innate opinions have length {}, network has {} nodes",
                s.len(),
                net.n()
            )));
        }
        if let Some((i, v)) = s.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidScenario(format!("s[{i}] = {v} is outside [0, 1]")));
        }
        bias.validate()?;
        Ok(Self { net, s, bias })
    }

    pub fn s_min(&self) -> f64 {
        self.s.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn s_max(&self) -> f64 {
        self.s.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn with_bias(&self, bias: BiasParams) -> Result<Self> {
        Self::new(self.net.clone(), self.s.clone(), bias)
    }
}

/// Opinions of the two sources: Georgia (`g`, low) and Hank (`h`, high).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourcePair {
    pub g: f64,
    pub h: f64,
}

impl SourcePair {
    pub fn new(g: f64, h: f64) -> Self {
        Self { g, h }
    }

    /// Enforce `1 ≥ h ≥ s_max ≥ s_min ≥ g ≥ 0`.
    pub fn validate_for(&self, scn: &Scenario) -> Result<()> {
        let (s_min, s_max) = (scn.s_min(), scn.s_max());
        let checks = [
            (self.h <= 1.0, format!("h = {} exceeds 1", self.h)),
            (self.h >= s_max, format!("h = {} is below s_max = {s_max}", self.h)),
            (self.g <= s_min, format!("g = {} is above s_min = {s_min}", self.g)),
            (self.g >= 0.0, format!("g = {} is negative", self.g)),
        ];
        match checks.into_iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(Error::InvalidScenario(format!("source bounds violated: {msg}"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpinionState {
    pub x: Vec<f64>,
    pub k: usize,
}

impl OpinionState {
    pub fn new(x: Vec<f64>) -> Self {
        Self { x, k: 0 }
    }
}

/// Weights `(w̄, w̲)` individual `i` gives Hank and Georgia at opinion `x_i`.
pub fn influence_weights(x_i: f64, pair: SourcePair, bias: BiasParams) -> (f64, f64) {
    let w_bar = bias.beta - bias.gamma * (x_i - pair.h).abs();
    let w_under = bias.beta - bias.gamma * (x_i - pair.g).abs();
    (w_bar, w_under)
}

pub fn resistance(x_i: f64, row_sum_i: f64, pair: SourcePair, bias: BiasParams) -> f64 {
    let (w_bar, w_under) = influence_weights(x_i, pair, bias);
    1.0 - row_sum_i - w_bar - w_under
}

pub fn step(state: &OpinionState, scn: &Scenario, pair: SourcePair) -> OpinionState {
    step_with(state, scn, pair, &scn.net.row_sums())
}

fn step_with(state: &OpinionState, scn: &Scenario, pair: SourcePair, row_sums: &[f64]) -> OpinionState {
    let social = scn.net.apply(&state.x);
    let x = state
        .x
        .iter()
        .zip(&scn.s)
        .zip(social.iter().zip(row_sums))
        .map(|((&xi, &si), (&wx, &rs))| {
            let (w_bar, w_under) = influence_weights(xi, pair, scn.bias);
            let alpha = 1.0 - rs - w_bar - w_under;
            alpha * si + wx + w_bar * pair.h + w_under * pair.g
        })
        .collect();
    OpinionState { x, k: state.k + 1 }
}

/// Iterate until `‖x(k+1) − x(k)‖₁ ≤ tol`. Refuses to run when the standing
/// assumptions fail, since convergence is then not guaranteed.
pub fn simulate(scn: &Scenario, pair: SourcePair, x0: OpinionState, tol: f64, max_iter: usize) -> Result<OpinionState> {
    simulate_with(scn, pair, x0, tol, max_iter, |_| {})
}

/// [`simulate`] with a callback invoked on every state, starting with `x0`.
pub fn simulate_with<F: FnMut(&OpinionState)>(
    scn: &Scenario,
    pair: SourcePair,
    x0: OpinionState,
    tol: f64,
    max_iter: usize,
    mut observe: F,
) -> Result<OpinionState> {
    let report = check_assumption1(&scn.net, &scn.bias);
    if !report.overall_ok {
        return Err(Error::AssumptionViolation(report.violations().join("; ")));
    }
    if x0.x.len() != scn.net.n() {
        return Err(Error::LengthMismatch {
            expected: scn.net.n(),
            got: x0.x.len(),
        });
    }
    let row_sums = scn.net.row_sums();
    let mut state = x0;
    observe(&state);
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let next = step_with(&state, scn, pair, &row_sums);
        residual = next.x.iter().zip(&state.x).map(|(a, b)| (a - b).abs()).sum();
        observe(&next);
        state = next;
        if residual <= tol {
            return Ok(state);
        }
    }
    Err(Error::IterationLimit {
        iterations: max_iter,
        residual,
    })
}

/// Solve `E x = (I − D − 2βI + (h−g)γI) s + ((h+g)β + (g²−h²)γ) 1` with
/// `E = I − W + (g−h)γI` and `D = diag(row sums)`.
pub fn steady_state_closed_form(scn: &Scenario, pair: SourcePair) -> Result<Vec<f64>> {
    let n = scn.net.n();
    let (beta, gamma) = (scn.bias.beta, scn.bias.gamma);
    let (g, h) = (pair.g, pair.h);
    let diag_shift = 1.0 + (g - h) * gamma;
    let e: Vec<Vec<f64>> = scn
        .net
        .weights()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &w)| if i == j { diag_shift - w } else { -w })
                .collect()
        })
        .collect();
    let constant = (h + g) * beta + (g * g - h * h) * gamma;
    let rhs: Vec<f64> = scn
        .net
        .row_sums()
        .iter()
        .zip(&scn.s)
        .map(|(&d, &s)| (1.0 - d - 2.0 * beta + (h - g) * gamma) * s + constant)
        .collect();
    debug_assert_eq!(rhs.len(), n);
    linalg::lu_solve(&e, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lone(s: f64, bias: BiasParams) -> Scenario {
        Scenario::new(SocialNetwork::from_dense(vec![vec![0.0]]).unwrap(), vec![s], bias).unwrap()
    }

    #[test]
    fn weights_at_source() {
        let b = BiasParams::new(0.06, 0.06);
        let pair = SourcePair::new(0.0, 1.0);
        assert_eq!(influence_weights(1.0, pair, b).0, 0.06);
        let (wb, wu) = influence_weights(0.2, pair, b);
        assert!((wb - 0.012).abs() < 1e-15 && (wu - 0.048).abs() < 1e-15);
        for x in [0.0, 0.3, 0.9] {
            assert_eq!(influence_weights(x, pair, BiasParams::new(0.07, 0.0)), (0.07, 0.07));
        }
    }

    #[test]
    fn resistance_examples() {
        let pair = SourcePair::new(0.0, 1.0);
        assert_eq!(resistance(0.5, 0.0, pair, BiasParams::new(0.0, 0.0)), 1.0);
        for x in [0.0, 0.4, 1.0] {
            assert!((resistance(x, 0.2, pair, BiasParams::new(0.06, 0.0)) - 0.68).abs() < 1e-15);
        }
    }

    #[test]
    fn pure_innate_pull() {
        let scn = lone(0.4, BiasParams::new(0.0, 0.0));
        let pair = SourcePair::new(0.0, 1.0);
        for x0 in [0.0, 0.7, 1.0] {
            let next = step(&OpinionState::new(vec![x0]), &scn, pair);
            assert!((next.x[0] - 0.4).abs() < 1e-15);
            assert_eq!(next.k, 1);
        }
    }

    #[test]
    fn symmetric_source_pull_cancels() {
        let scn = lone(0.5, BiasParams::new(0.1, 0.0));
        let pair = SourcePair::new(0.0, 1.0);
        let next = step(&OpinionState::new(vec![0.5]), &scn, pair);
        assert!((next.x[0] - 0.5).abs() < 1e-15);
        let x = steady_state_closed_form(&scn, pair).unwrap();
        assert!((x[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn decoupled_sources_converge_to_innate() {
        let net = SocialNetwork::from_dense(vec![vec![0.0; 3]; 3]).unwrap();
        let s = vec![0.2, 0.5, 0.9];
        let scn = Scenario::new(net, s.clone(), BiasParams::new(0.0, 0.0)).unwrap();
        let pair = SourcePair::new(0.1, 0.95);
        let out = simulate(&scn, pair, OpinionState::new(vec![0.3; 3]), 1e-12, 10).unwrap();
        assert_eq!(out.x, s);
        assert!(out.k <= 2);
        assert_eq!(steady_state_closed_form(&scn, pair).unwrap(), s);
    }

    #[test]
    fn simulate_refuses_bad_assumptions() {
        let scn = lone(0.5, BiasParams::new(0.1, 0.2));
        let err = simulate(
            &scn,
            SourcePair::new(0.0, 1.0),
            OpinionState::new(vec![0.5]),
            1e-12,
            100,
        )
        .unwrap_err();
        assert!(matches!(err, Error::AssumptionViolation(_)));
    }

    #[test]
    fn simulate_iteration_limit() {
        let net = SocialNetwork::from_dense(vec![vec![0.0, 0.3], vec![0.3, 0.0]]).unwrap();
        let scn = Scenario::new(net, vec![0.3, 0.6], BiasParams::new(0.05, 0.02)).unwrap();
        let err = simulate(
            &scn,
            SourcePair::new(0.1, 0.9),
            OpinionState::new(vec![0.3, 0.6]),
            1e-14,
            3,
        )
        .unwrap_err();
        assert!(matches!(err, Error::IterationLimit { iterations: 3, .. }));
    }

    #[test]
    fn source_bounds() {
        let net = SocialNetwork::from_dense(vec![vec![0.0, 0.1], vec![0.1, 0.0]]).unwrap();
        let scn = Scenario::new(net, vec![0.2, 0.75], BiasParams::new(0.06, 0.06)).unwrap();
        assert!(SourcePair::new(0.0, 0.75).validate_for(&scn).is_ok());
        let msg = SourcePair::new(0.0, 0.7).validate_for(&scn).unwrap_err().to_string();
        assert!(msg.contains("s_max"), "{msg}");
        let msg = SourcePair::new(0.3, 1.0).validate_for(&scn).unwrap_err().to_string();
        assert!(msg.contains("s_min"), "{msg}");
        assert!(SourcePair::new(-0.1, 1.0).validate_for(&scn).is_err());
        assert!(SourcePair::new(0.0, 1.1).validate_for(&scn).is_err());
    }

    #[test]
    fn scenario_validation() {
        let net = SocialNetwork::from_dense(vec![vec![0.0, 0.1], vec![0.1, 0.0]]).unwrap();
        assert!(Scenario::new(net.clone(), vec![0.2], BiasParams::new(0.1, 0.0)).is_err());
        assert!(Scenario::new(net.clone(), vec![0.2, 1.2], BiasParams::new(0.1, 0.0)).is_err());
        assert!(Scenario::new(net, vec![0.2, 0.4], BiasParams::new(-0.1, 0.0)).is_err());
    }
}
