//! Krackhardt's 21-manager advice network and five reference scenarios on it.
//!
//! Present edges are weighted `1 / (25 + in-degree)`. Nodes are labelled
//! `v1`..`v21`; index `i` is `v{i+1}`.

use serde::{Deserialize, Serialize};

use crate::dynamics::{BiasParams, Scenario};
use crate::error::Result;
use crate::game::{self, Branch};
use crate::network::SocialNetwork;
use crate::spectral;

pub const EDGE_LIST: &str = include_str!("../data/krackhardt_advice.edges");
pub const N: usize = 21;
pub const EXPECTED_LAMBDA: f64 = 0.2369;
/// Agreement required with the published four-decimal figures.
pub const TOL: f64 = 5e-4;

/// The bundled network with weights applied.
pub fn network() -> Result<SocialNetwork> {
    from_edge_list(EDGE_LIST)
}

pub fn from_edge_list(text: &str) -> Result<SocialNetwork> {
    let net = SocialNetwork::load_edge_list(text)?.krackhardt_weights();
    let labels = (1..=net.n()).map(|i| format!("v{i}")).collect();
    net.with_labels(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub s_hat: Option<f64>,
    pub chi: Option<f64>,
    pub r0: Option<f64>,
    pub w1: Option<f64>,
    pub g_star: f64,
    pub h_star: f64,
    /// Whether `(g*, h*)` must match exactly rather than within [`TOL`].
    pub exact: bool,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub id: &'static str,
    pub title: &'static str,
    pub s: Vec<f64>,
    pub bias: BiasParams,
    pub expected: Expected,
}

impl Case {
    pub fn scenario(&self, net: &SocialNetwork) -> Result<Scenario> {
        Scenario::new(net.clone(), self.s.clone(), self.bias)
    }
}

fn profile(high: &[usize], low: f64, high_value: f64) -> Vec<f64> {
    (0..N)
        .map(|i| if high.contains(&i) { high_value } else { low })
        .collect()
}

pub fn cases() -> Vec<Case> {
    let d_profile = profile(&[0, 1], 0.75, 0.2);
    let none = Expected {
        s_hat: None,
        chi: None,
        r0: None,
        w1: None,
        g_star: 0.0,
        h_star: 1.0,
        exact: true,
        branch: Branch::NoCB,
    };
    vec![
        Case {
            id: "A",
            title: "no confirmation bias",
            s: d_profile.clone(),
            bias: BiasParams::new(0.06, 0.0),
            expected: none,
        },
        Case {
            id: "B",
            title: "Hank stays at the top of the innate range",
            s: profile(&[20], 0.2, 0.75),
            bias: BiasParams::new(0.06, 0.06),
            expected: Expected {
                s_hat: Some(0.2283),
                chi: Some(0.0580),
                h_star: 0.75,
                branch: Branch::M01NonNeg_QatSbarNonPos,
                ..none
            },
        },
        Case {
            id: "C",
            title: "Hank moves to an interior opinion",
            s: profile(&[17, 18, 19, 20], 0.2, 0.75),
            bias: BiasParams::new(0.06, 0.06),
            expected: Expected {
                s_hat: Some(0.3637),
                chi: Some(0.0945),
                r0: Some(0.8586),
                h_star: 0.8586,
                exact: false,
                branch: Branch::M01NonNeg_Interior_r0,
                ..none
            },
        },
        Case {
            id: "D",
            title: "Georgia moves to the bottom of the innate range",
            s: d_profile.clone(),
            bias: BiasParams::new(0.06, 0.06),
            expected: Expected {
                s_hat: Some(0.7265),
                chi: Some(0.1693),
                g_star: 0.2,
                branch: Branch::MsLow1NonPos,
                ..none
            },
        },
        Case {
            id: "E",
            title: "Georgia moves to an interior opinion",
            s: d_profile,
            bias: BiasParams::new(0.06, 0.048),
            expected: Expected {
                w1: Some(0.0993),
                g_star: 0.0993,
                exact: false,
                branch: Branch::Interior_w1,
                ..none
            },
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            expected,
            actual,
            tol,
            pass: (actual - expected).abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub title: String,
    pub s_hat: f64,
    pub chi: f64,
    pub g_star: f64,
    pub h_star: f64,
    pub branch: Branch,
    pub expected_branch: Branch,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reproduction {
    pub lambda: Check,
    pub cases: Vec<CaseReport>,
    pub pass: bool,
}

pub fn run_case(case: &Case, net: &SocialNetwork, spec: &spectral::SpectralData) -> Result<CaseReport> {
    let scn = case.scenario(net)?;
    let gs = game::game_scalars(&scn, spec)?;
    let eq = game::nash_equilibrium(&gs, case.bias)?;
    let ex = case.expected;
    let mut checks = Vec::new();
    if let Some(v) = ex.s_hat {
        checks.push(Check::new("s_hat", v, gs.s_hat, TOL));
    }
    if let Some(v) = ex.chi {
        checks.push(Check::new("chi", v, gs.chi, TOL));
    }
    if let Some(v) = ex.r0 {
        checks.push(Check::new("r(0)", v, game::r_fn(&gs, case.bias, 0.0)?, TOL));
    }
    if let Some(v) = ex.w1 {
        checks.push(Check::new("w(1)", v, game::w_fn(&gs, case.bias, 1.0)?, TOL));
    }
    let tol = if ex.exact { 0.0 } else { TOL };
    checks.push(Check::new("g*", ex.g_star, eq.g_star, tol));
    checks.push(Check::new("h*", ex.h_star, eq.h_star, tol));
    let pass = eq.branch == ex.branch && checks.iter().all(|c| c.pass);
    Ok(CaseReport {
        id: case.id.into(),
        title: case.title.into(),
        s_hat: gs.s_hat,
        chi: gs.chi,
        g_star: eq.g_star,
        h_star: eq.h_star,
        branch: eq.branch,
        expected_branch: ex.branch,
        checks,
        pass,
    })
}

/// Run all five cases on `net` against the published figures.
pub fn reproduce(net: &SocialNetwork) -> Result<Reproduction> {
    let spec = spectral::dominant_eigenpair(net, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITER)?;
    let lambda = Check::new("lambda", EXPECTED_LAMBDA, spec.lambda, TOL);
    let cases = cases()
        .iter()
        .map(|c| run_case(c, net, &spec))
        .collect::<Result<Vec<_>>>()?;
    let pass = lambda.pass && cases.iter().all(|c| c.pass);
    Ok(Reproduction { lambda, cases, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape() {
        let net = network().unwrap();
        assert_eq!(net.n(), N);
        let present: usize = net.weights().iter().flatten().filter(|&&w| w > 0.0).count();
        assert_eq!(present, 191);
        assert_eq!(net.labels().unwrap()[20], "v21");
        for (i, row) in net.weights().iter().enumerate() {
            let d = row.iter().filter(|&&w| w > 0.0).count() as f64;
            for &w in row.iter().filter(|&&w| w > 0.0) {
                assert_eq!(w, 1.0 / (25.0 + d), "row {i}");
            }
        }
    }

    #[test]
    fn case_profiles() {
        let cs = cases();
        assert_eq!(cs.len(), 5);
        for c in &cs {
            assert_eq!(c.s.len(), N);
            let lo = c.s.iter().copied().fold(1.0, f64::min);
            let hi = c.s.iter().copied().fold(0.0, f64::max);
            assert_eq!((lo, hi), (0.2, 0.75), "case {}", c.id);
        }
        assert_eq!(cs[2].s.iter().filter(|&&v| v == 0.75).count(), 4);
    }
}
