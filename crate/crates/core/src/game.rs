//! The zero-sum game between Georgia (minimizer, opinion `g`) and Hank
//! (maximizer, opinion `h`) over the centrality-weighted steady state
//! `f(g, h) = cᵀx*(g, h)`.
//!
//! Everything here works from a handful of scalars (`λ`, `ŝ`, `χ`, `cᵀ1`) and
//! the two sign functions `q` and `m`, which share their signs with `∂f/∂h`
//! and `∂f/∂g`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{steady_state_closed_form, BiasParams, Scenario, SourcePair};
use crate::error::{Error, Result};
use crate::network::check_assumption1;
use crate::spectral::{self, SpectralData};

/// Branch predicates within this distance of zero count as satisfying the
/// non-strict inequality they are tested against.
pub const TIE_TOL: f64 = 1e-12;
/// Interval width at which interior roots stop being refined.
pub const ROOT_TOL: f64 = 1e-12;
/// Relative gap between the two cost evaluations that triggers a warning.
pub const COST_CONSISTENCY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameScalars {
    pub lambda: f64,
    pub s_hat: f64,
    pub chi: f64,
    pub c_sum: f64,
    pub s_min: f64,
    pub s_max: f64,
}

pub fn game_scalars(scn: &Scenario, spec: &SpectralData) -> Result<GameScalars> {
    let s_hat = spectral::centrality_average(&spec.c_hat, &scn.s)?;
    let weighted: Vec<f64> = scn.s.iter().zip(scn.net.row_sums()).map(|(s, r)| s * r).collect();
    let chi = spectral::centrality_average(&spec.c_hat, &weighted)?;
    Ok(GameScalars {
        lambda: spec.lambda,
        s_hat,
        chi,
        c_sum: spec.c_sum,
        s_min: scn.s_min(),
        s_max: scn.s_max(),
    })
}

fn denominator(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> Result<f64> {
    let d = 1.0 - gs.lambda + (g - h) * bias.gamma;
    if d > 0.0 {
        Ok(d)
    } else {
        Err(Error::AssumptionViolation(format!(
            "cost denominator 1 - lambda + (g - h) gamma = {d} is not positive"
        )))
    }
}

pub fn cost(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> Result<f64> {
    let (beta, gamma) = (bias.beta, bias.gamma);
    let num = (1.0 - 2.0 * beta + (h - g) * gamma) * gs.s_hat - gs.chi + (h + g) * beta + (g * g - h * h) * gamma;
    Ok(num / denominator(gs, bias, g, h)? * gs.c_sum)
}

/// `(a₁, b₁, a₂, b₂)` at `(g, h)`.
pub fn aux_terms(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> (f64, f64, f64, f64) {
    let (beta, gamma, s) = (bias.beta, bias.gamma, gs.s_hat);
    let a1 = 1.0 - gs.lambda + gamma * g;
    let b1 = (1.0 - 2.0 * beta - g * gamma) * s - gs.chi + g * beta + g * g * gamma;
    let a2 = 1.0 - gs.lambda - h * gamma;
    let b2 = (1.0 - 2.0 * beta + h * gamma) * s + h * beta - h * h * gamma - gs.chi;
    (a1, b1, a2, b2)
}

/// Same sign as `∂f/∂h`.
pub fn q_fn(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> f64 {
    let (beta, gamma) = (bias.beta, bias.gamma);
    let (a1, b1, _, _) = aux_terms(gs, bias, g, h);
    (beta + gamma * gs.s_hat - 2.0 * gamma * h) * a1 + b1 * gamma + gamma * gamma * h * h
}

/// Same sign as `∂f/∂g`.
pub fn m_fn(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> f64 {
    let (beta, gamma) = (bias.beta, bias.gamma);
    let (_, _, a2, b2) = aux_terms(gs, bias, g, h);
    (beta - gamma * gs.s_hat + 2.0 * gamma * g) * a2 + g * g * gamma * gamma - b2 * gamma
}

pub fn partial_f_h(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> Result<f64> {
    let d = denominator(gs, bias, g, h)?;
    Ok(q_fn(gs, bias, g, h) * gs.c_sum / (d * d))
}

pub fn partial_f_g(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> Result<f64> {
    let d = denominator(gs, bias, g, h)?;
    Ok(m_fn(gs, bias, g, h) * gs.c_sum / (d * d))
}

fn checked_sqrt(func: &'static str, radicand: f64) -> Result<f64> {
    if radicand < 0.0 || radicand.is_nan() {
        return Err(Error::Domain { func, radicand });
    }
    Ok(radicand.sqrt())
}

fn nonzero_gamma(func: &'static str, bias: BiasParams) -> Result<f64> {
    if bias.gamma == 0.0 {
        return Err(Error::ZeroGamma(func));
    }
    Ok(bias.gamma)
}

/// Smaller root of `q(g, ·)`: Hank's interior best response to `g`.
pub fn r_fn(gs: &GameScalars, bias: BiasParams, g: f64) -> Result<f64> {
    let gamma = nonzero_gamma("r", bias)?;
    let (beta, l, s, chi) = (bias.beta, gs.lambda, gs.s_hat, gs.chi);
    let rad =
        (1.0 - l) * (1.0 - l - beta + 2.0 * g * gamma) - (2.0 - l - 2.0 * beta) * gamma * s - 2.0 * g * beta * gamma
            + gamma * chi;
    Ok(-checked_sqrt("r", rad)? / gamma + (1.0 - l) / gamma + g)
}

/// Larger root of `m(·, h)`: Georgia's interior best response to `h`.
pub fn w_fn(gs: &GameScalars, bias: BiasParams, h: f64) -> Result<f64> {
    let gamma = nonzero_gamma("w", bias)?;
    let (beta, l, s, chi) = (bias.beta, gs.lambda, gs.s_hat, gs.chi);
    let rad =
        (1.0 - l) * (1.0 - l - 2.0 * h * gamma - beta) + (2.0 - l - 2.0 * beta) * gamma * s + 2.0 * h * beta * gamma
            - chi * gamma;
    Ok(checked_sqrt("w", rad)? / gamma - (1.0 - l) / gamma + h)
}

/// Smaller root of `m(g, ·)`: the `h` at which Georgia's incentive flips.
pub fn delta_fn(gs: &GameScalars, bias: BiasParams, g: f64) -> Result<f64> {
    let gamma = nonzero_gamma("delta", bias)?;
    let (beta, l, s, chi) = (bias.beta, gs.lambda, gs.s_hat, gs.chi);
    let rad = (beta + 2.0 * gamma * g) * (beta + l - 1.0) - (l + 2.0 * beta - 2.0) * s * gamma - chi * gamma;
    Ok((beta + gamma * g - checked_sqrt("delta", rad)?) / gamma)
}

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    NoCB,
    M01NonNeg_Q01NonNeg,
    M01NonNeg_QatSbarNonPos,
    M01NonNeg_Interior_r0,
    MsLow1NonPos,
    Interior_w1,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResult {
    pub g_star: f64,
    pub h_star: f64,
    pub branch: Branch,
    pub f_value: f64,
    pub cb_moved_georgia: bool,
    pub cb_moved_hank: bool,
    pub m01: f64,
    pub q01: f64,
    /// A deciding predicate was within [`TIE_TOL`] of zero.
    pub boundary_tie: bool,
    /// Closed-form value of the interior root, before refinement.
    pub raw_root: Option<f64>,
    /// The closed-form root fell outside the feasible interval.
    pub clamped: bool,
    /// `cᵀx*` from the steady-state solve, when a network was available.
    pub f_steady_state: Option<f64>,
    pub numerical_warning: Option<String>,
}

/// Root of `f` on `[lo, hi]` by bisection, assuming a sign change. Without one,
/// the endpoint with the smaller residual is returned.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return lo;
    }
    if f_hi == 0.0 {
        return hi;
    }
    if f_lo.signum() == f_hi.signum() {
        return if f_lo.abs() <= f_hi.abs() { lo } else { hi };
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

struct Root {
    value: f64,
    raw: Option<f64>,
    clamped: bool,
    warning: Option<String>,
}

fn refine_root<F: Fn(f64) -> f64>(raw: Result<f64>, f: F, lo: f64, hi: f64) -> Root {
    let value = bisect(&f, lo, hi, ROOT_TOL);
    match raw {
        Ok(r) => {
            let clamped = !(lo..=hi).contains(&r);
            let warning = (!clamped && (r - value).abs() > 1e-8)
                .then(|| format!("closed-form root {r} differs from refined root {value}"));
            Root {
                value,
                raw: Some(r),
                clamped,
                warning,
            }
        }
        Err(e) => Root {
            value,
            raw: None,
            clamped: false,
            warning: Some(format!("closed form unavailable: {e}")),
        },
    }
}

fn check_preconditions(gs: &GameScalars, bias: BiasParams) -> Result<()> {
    bias.validate()?;
    if bias.beta < bias.gamma {
        return Err(Error::AssumptionViolation(format!(
            "beta = {} is below gamma = {}",
            bias.beta, bias.gamma
        )));
    }
    if !(0.0 <= gs.s_min && gs.s_min <= gs.s_max && gs.s_max <= 1.0) {
        return Err(Error::InvalidScenario(format!(
            "innate opinion range [{}, {}] is not inside [0, 1]",
            gs.s_min, gs.s_max
        )));
    }
    denominator(gs, bias, 0.0, 1.0).map(|_| ())
}

/// The unique pure Nash equilibrium, from the closed-form characterization.
pub fn nash_equilibrium(gs: &GameScalars, bias: BiasParams) -> Result<EquilibriumResult> {
    check_preconditions(gs, bias)?;
    let m01 = m_fn(gs, bias, 0.0, 1.0);
    let q01 = q_fn(gs, bias, 0.0, 1.0);
    let tie = |v: f64| v.abs() <= TIE_TOL;

    let mut boundary_tie = false;
    let mut root = None;
    let (g, h, branch) = if bias.gamma == 0.0 {
        (0.0, 1.0, Branch::NoCB)
    } else if m01 >= -TIE_TOL {
        boundary_tie |= tie(m01);
        let q_smax = q_fn(gs, bias, 0.0, gs.s_max);
        if q01 >= -TIE_TOL {
            boundary_tie |= tie(q01);
            (0.0, 1.0, Branch::M01NonNeg_Q01NonNeg)
        } else if q_smax <= TIE_TOL {
            boundary_tie |= tie(q_smax);
            (0.0, gs.s_max, Branch::M01NonNeg_QatSbarNonPos)
        } else {
            let r = refine_root(r_fn(gs, bias, 0.0), |h| q_fn(gs, bias, 0.0, h), gs.s_max, 1.0);
            let h = r.value;
            root = Some(r);
            (0.0, h, Branch::M01NonNeg_Interior_r0)
        }
    } else {
        let m_low = m_fn(gs, bias, gs.s_min, 1.0);
        if m_low <= TIE_TOL {
            boundary_tie |= tie(m_low);
            (gs.s_min, 1.0, Branch::MsLow1NonPos)
        } else {
            let r = refine_root(w_fn(gs, bias, 1.0), |g| m_fn(gs, bias, g, 1.0), 0.0, gs.s_min);
            let g = r.value;
            root = Some(r);
            (g, 1.0, Branch::Interior_w1)
        }
    };

    let (cb_moved_georgia, cb_moved_hank) = cb_influence(gs, bias);
    let (raw_root, clamped, numerical_warning) = match root {
        Some(r) => (r.raw, r.clamped, r.warning),
        None => (None, false, None),
    };
    Ok(EquilibriumResult {
        g_star: g,
        h_star: h,
        branch,
        f_value: cost(gs, bias, g, h)?,
        cb_moved_georgia,
        cb_moved_hank,
        m01,
        q01,
        boundary_tie,
        raw_root,
        clamped,
        f_steady_state: None,
        numerical_warning,
    })
}

/// Whether confirmation bias pulls Georgia off `g = 0` and Hank off `h = 1`.
///
/// Uses the same tie tolerance as [`nash_equilibrium`], so `georgia_moved`
/// is exactly `g* != 0` and `hank_moved` is exactly `h* != 1` whenever
/// `s_max < 1`.
pub fn cb_influence(gs: &GameScalars, bias: BiasParams) -> (bool, bool) {
    if bias.gamma == 0.0 {
        return (false, false);
    }
    let georgia = m_fn(gs, bias, 0.0, 1.0) < -TIE_TOL;
    let hank = !georgia && q_fn(gs, bias, 0.0, 1.0) < -TIE_TOL;
    (georgia, hank)
}

/// Parameter-space condition for Georgia to move off zero:
/// `0 < (1−λ−2γ+2ŝγ)/(2ŝ−λŝ−γ−χ) < γ/β ≤ 1`.
pub fn georgia_shift_condition(gs: &GameScalars, bias: BiasParams) -> bool {
    let (beta, gamma, l, s, chi) = (bias.beta, bias.gamma, gs.lambda, gs.s_hat, gs.chi);
    if beta == 0.0 {
        return false;
    }
    let ratio = (1.0 - l - 2.0 * gamma + 2.0 * s * gamma) / (2.0 * s - l * s - gamma - chi);
    0.0 < ratio && ratio < gamma / beta && gamma / beta <= 1.0
}

/// Parameter-space condition for Hank to move off one:
/// `0 < (1−λ)/(2−2λ−2ŝ+ŝλ+2βŝ+χ−γ) < γ/β ≤ 1`.
pub fn hank_shift_condition(gs: &GameScalars, bias: BiasParams) -> bool {
    let (beta, gamma, l, s, chi) = (bias.beta, bias.gamma, gs.lambda, gs.s_hat, gs.chi);
    if beta == 0.0 {
        return false;
    }
    let ratio = (1.0 - l) / (2.0 - 2.0 * l - 2.0 * s + s * l + 2.0 * beta * s + chi - gamma);
    0.0 < ratio && ratio < gamma / beta && gamma / beta <= 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialProfile {
    Neutral,
    AllZero,
    AllOne,
}

impl SpecialProfile {
    pub fn detect(gs: &GameScalars) -> Option<Self> {
        if gs.s_min != gs.s_max {
            return None;
        }
        match gs.s_min {
            0.5 => Some(Self::Neutral),
            0.0 => Some(Self::AllZero),
            1.0 => Some(Self::AllOne),
            _ => None,
        }
    }
}

/// Equilibrium from the dedicated formulas for uniform profiles `½`, `0` and
/// `1`. Independent of the general branch logic, so it serves as a check on it.
pub fn corollary_specials(gs: &GameScalars, bias: BiasParams) -> Result<EquilibriumResult> {
    check_preconditions(gs, bias)?;
    let profile = SpecialProfile::detect(gs).ok_or_else(|| {
        Error::Precondition(format!(
            "innate profile is not uniformly 1/2, 0 or 1 (range [{}, {}])",
            gs.s_min, gs.s_max
        ))
    })?;
    let (beta, gamma, l, chi) = (bias.beta, bias.gamma, gs.lambda, gs.chi);
    let mut raw_root = None;
    let (g, h, branch) = match profile {
        _ if gamma == 0.0 => (0.0, 1.0, Branch::NoCB),
        SpecialProfile::Neutral => (0.0, 1.0, Branch::M01NonNeg_Q01NonNeg),
        SpecialProfile::AllZero => {
            let q00 = beta - beta * l - chi * gamma;
            let q01 = (gamma - chi) * gamma + (beta - 2.0 * gamma) * (1.0 - l);
            if q01 >= -TIE_TOL {
                (0.0, 1.0, Branch::M01NonNeg_Q01NonNeg)
            } else if q00 <= TIE_TOL {
                (0.0, 0.0, Branch::M01NonNeg_QatSbarNonPos)
            } else {
                let rad = (1.0 - l) * (1.0 - l - beta) + chi * gamma;
                let r = (1.0 - l - checked_sqrt("r~", rad)?) / gamma;
                raw_root = Some(r);
                (0.0, r, Branch::M01NonNeg_Interior_r0)
            }
        }
        SpecialProfile::AllOne => {
            let m11 = chi * gamma + beta - beta * l - l * gamma;
            let m01 = beta - l * beta + (l + gamma + chi - 2.0) * gamma;
            if m01 >= -TIE_TOL {
                (0.0, 1.0, Branch::M01NonNeg_Q01NonNeg)
            } else if m11 <= TIE_TOL {
                (1.0, 1.0, Branch::MsLow1NonPos)
            } else {
                let rad = 1.0 - beta + (l + gamma + beta - 2.0) * l - chi * gamma;
                let w = (l + gamma - 1.0 + checked_sqrt("w^", rad)?) / gamma;
                raw_root = Some(w);
                (w, 1.0, Branch::Interior_w1)
            }
        }
    };
    let (cb_moved_georgia, cb_moved_hank) = cb_influence(gs, bias);
    Ok(EquilibriumResult {
        g_star: g,
        h_star: h,
        branch,
        f_value: cost(gs, bias, g, h)?,
        cb_moved_georgia,
        cb_moved_hank,
        m01: m_fn(gs, bias, 0.0, 1.0),
        q01: q_fn(gs, bias, 0.0, 1.0),
        boundary_tie: false,
        raw_root,
        clamped: false,
        f_steady_state: None,
        numerical_warning: None,
    })
}

/// `cᵀx*(g, h)` with `x*` from the linear steady-state solve.
pub fn cost_steady_state(scn: &Scenario, spec: &SpectralData, pair: SourcePair) -> Result<f64> {
    let x = steady_state_closed_form(scn, pair)?;
    Ok(crate::linalg::dot(&spec.c, &x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub spectral: SpectralData,
    pub scalars: GameScalars,
    pub equilibrium: EquilibriumResult,
}

/// Full pipeline for a scenario: assumption check, eigenpair, scalars,
/// equilibrium, and a cross-check of the cost against the steady state.
pub fn analyze(scn: &Scenario) -> Result<Analysis> {
    let report = check_assumption1(&scn.net, &scn.bias);
    if !report.overall_ok {
        return Err(Error::AssumptionViolation(report.violations().join("; ")));
    }
    let spec = spectral::dominant_eigenpair(&scn.net, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITER)?;
    let gs = game_scalars(scn, &spec)?;
    let mut eq = nash_equilibrium(&gs, scn.bias)?;
    let f_ss = cost_steady_state(scn, &spec, SourcePair::new(eq.g_star, eq.h_star))?;
    let gap = (f_ss - eq.f_value).abs() / eq.f_value.abs().max(f64::MIN_POSITIVE);
    if gap > COST_CONSISTENCY_TOL {
        let msg = format!(
            "cost {} disagrees with steady-state cost {f_ss} (relative gap {gap:e})",
            eq.f_value
        );
        eq.numerical_warning = Some(match eq.numerical_warning.take() {
            Some(prev) => format!("{prev}; {msg}"),
            None => msg,
        });
    }
    eq.f_steady_state = Some(f_ss);
    Ok(Analysis {
        spectral: spec,
        scalars: gs,
        equilibrium: eq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalars(lambda: f64, s_hat: f64, chi: f64, s_min: f64, s_max: f64) -> GameScalars {
        GameScalars {
            lambda,
            s_hat,
            chi,
            c_sum: 1.0,
            s_min,
            s_max,
        }
    }

    #[test]
    fn neutral_symmetry_without_bias() {
        let gs = scalars(0.3, 0.5, 0.15, 0.5, 0.5);
        let f = cost(&gs, BiasParams::new(0.1, 0.0), 0.0, 1.0).unwrap();
        assert!((f - 0.5).abs() < 1e-15);
    }

    #[test]
    fn disconnected_sources_cost_is_constant() {
        let gs = scalars(0.25, 0.4, 0.08, 0.2, 0.7);
        let b = BiasParams::new(0.0, 0.0);
        let expected = (0.4 - 0.08) / 0.75;
        for (g, h) in [(0.0, 1.0), (0.1, 0.8), (0.2, 0.7)] {
            assert!((cost(&gs, b, g, h).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn unbiased_predicates() {
        let gs = scalars(0.25, 0.4, 0.08, 0.2, 0.7);
        let b = BiasParams::new(0.07, 0.0);
        assert!((q_fn(&gs, b, 0.0, 1.0) - 0.07 * 0.75).abs() < 1e-15);
        assert!((m_fn(&gs, b, 0.0, 1.0) - 0.07 * 0.75).abs() < 1e-15);
        let d = partial_f_g(&gs, b, 0.1, 0.9).unwrap();
        assert!((d - 0.07 / 0.75).abs() < 1e-15);
    }

    #[test]
    fn neutral_predicates_coincide() {
        let (l, beta, gamma) = (0.3, 0.08, 0.05);
        let gs = scalars(l, 0.5, l / 2.0, 0.5, 0.5);
        let b = BiasParams::new(beta, gamma);
        let expected = (beta - gamma) * (1.0 - l - gamma);
        assert!((m_fn(&gs, b, 0.0, 1.0) - expected).abs() < 1e-15);
        assert!((q_fn(&gs, b, 0.0, 1.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn roots_are_roots() {
        let gs = scalars(0.24, 0.36, 0.095, 0.2, 0.75);
        let b = BiasParams::new(0.06, 0.06);
        let r = r_fn(&gs, b, 0.0).unwrap();
        assert!(q_fn(&gs, b, 0.0, r).abs() < 1e-12);
        let w = w_fn(&gs, b, 1.0).unwrap();
        assert!(m_fn(&gs, b, w, 1.0).abs() < 1e-12);
        // m(0, ·) changes sign only when Georgia is pulled off zero
        let gs = scalars(0.24, 0.727, 0.172, 0.2, 0.75);
        let b = BiasParams::new(0.06, 0.048);
        assert!(m_fn(&gs, b, 0.0, 1.0) < 0.0);
        let d = delta_fn(&gs, b, 0.0).unwrap();
        assert!(m_fn(&gs, b, 0.0, d).abs() < 1e-12);
    }

    #[test]
    fn zero_gamma_guards() {
        let gs = scalars(0.24, 0.36, 0.095, 0.2, 0.75);
        let b = BiasParams::new(0.06, 0.0);
        assert!(matches!(r_fn(&gs, b, 0.0), Err(Error::ZeroGamma("r"))));
        assert!(matches!(w_fn(&gs, b, 1.0), Err(Error::ZeroGamma("w"))));
        assert!(matches!(delta_fn(&gs, b, 0.0), Err(Error::ZeroGamma("delta"))));
    }

    #[test]
    fn negative_radicand_is_domain_error() {
        // huge chi drives the r radicand negative
        let gs = scalars(0.2, 0.9, -50.0, 0.2, 0.75);
        assert!(matches!(
            r_fn(&gs, BiasParams::new(0.1, 0.1), 0.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn no_bias_gives_extreme_corner() {
        let gs = scalars(0.24, 0.6, 0.14, 0.2, 0.75);
        let eq = nash_equilibrium(&gs, BiasParams::new(0.06, 0.0)).unwrap();
        assert_eq!((eq.g_star, eq.h_star, eq.branch), (0.0, 1.0, Branch::NoCB));
        assert!(!eq.cb_moved_georgia && !eq.cb_moved_hank);
    }

    #[test]
    fn refuses_beta_below_gamma() {
        let gs = scalars(0.24, 0.6, 0.14, 0.2, 0.75);
        assert!(nash_equilibrium(&gs, BiasParams::new(0.05, 0.06)).is_err());
    }

    #[test]
    fn cost_denominator_guard() {
        let gs = scalars(1.0, 0.5, 0.5, 0.5, 0.5);
        assert!(matches!(
            cost(&gs, BiasParams::new(0.1, 0.0), 0.0, 1.0),
            Err(Error::AssumptionViolation(_))
        ));
    }

    #[test]
    fn bisect_edge_cases() {
        assert_eq!(bisect(|x| x - 0.25, 0.0, 1.0, 1e-14).to_bits(), 0.25f64.to_bits());
        assert_eq!(bisect(|x| x + 1.0, 0.0, 1.0, 1e-12), 0.0);
        assert_eq!(bisect(|x| x, 0.0, 1.0, 1e-12), 0.0);
    }

    #[test]
    fn special_profile_detection() {
        assert_eq!(
            SpecialProfile::detect(&scalars(0.2, 0.5, 0.1, 0.5, 0.5)),
            Some(SpecialProfile::Neutral)
        );
        assert_eq!(
            SpecialProfile::detect(&scalars(0.2, 0.0, 0.0, 0.0, 0.0)),
            Some(SpecialProfile::AllZero)
        );
        assert_eq!(
            SpecialProfile::detect(&scalars(0.2, 1.0, 0.2, 1.0, 1.0)),
            Some(SpecialProfile::AllOne)
        );
        assert_eq!(SpecialProfile::detect(&scalars(0.2, 0.3, 0.1, 0.3, 0.3)), None);
        let err = corollary_specials(&scalars(0.2, 0.4, 0.1, 0.2, 0.6), BiasParams::new(0.1, 0.05)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
