//! Brute-force checks for the closed-form equilibrium solver.
//!
//! None of these use `q`, `m` or the branch logic. They only evaluate the cost
//! surface and search it, so a bug in the characterization shows up as a
//! disagreement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{self, BiasParams, OpinionState, Scenario, SourcePair};
use crate::error::{Error, Result};
use crate::game::{self, EquilibriumResult, GameScalars};
use crate::network::SocialNetwork;
use crate::spectral::SpectralData;

/// Slack allowed when checking that no unilateral deviation pays.
pub const DEVIATION_SLACK: f64 = 1e-10;
pub const FD_STEP: f64 = 1e-6;
pub const DEFAULT_FD_SEED: u64 = 0x5eed;
pub const BR_MAX_ROUNDS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub g_points: usize,
    pub h_points: usize,
}

impl GridSpec {
    pub fn square(points: usize) -> Self {
        Self {
            g_points: points,
            h_points: points,
        }
    }

    /// Points actually used over `[0, s_min]` and `[s_max, 1]`. A degenerate
    /// interval gets a single point.
    pub fn resolve(&self, gs: &GameScalars) -> Result<(usize, usize)> {
        let pick = |points: usize, width: f64, axis: &str| {
            if width == 0.0 {
                Ok(1)
            } else if points < 2 {
                Err(Error::Precondition(format!(
                    "{axis} grid needs at least 2 points, got {points}"
                )))
            } else {
                Ok(points)
            }
        };
        Ok((
            pick(self.g_points, gs.s_min, "g")?,
            pick(self.h_points, 1.0 - gs.s_max, "h")?,
        ))
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddlePoint {
    pub g: f64,
    pub h: f64,
    pub f: f64,
    /// `max_h min_g f` over the grid.
    pub max_min: f64,
    /// `min_g max_h f` over the grid.
    pub min_max: f64,
    /// Largest spacing of the two axes.
    pub step: f64,
}

/// Exhaustive max-min / min-max search over a grid of the feasible box.
pub fn grid_saddle(scn: &Scenario, spec: &SpectralData, grid: GridSpec) -> Result<SaddlePoint> {
    let gs = game::game_scalars(scn, spec)?;
    grid_saddle_scalars(&gs, scn.bias, grid)
}

pub fn grid_saddle_scalars(gs: &GameScalars, bias: BiasParams, grid: GridSpec) -> Result<SaddlePoint> {
    let (ng, nh) = grid.resolve(gs)?;
    let gv = linspace(0.0, gs.s_min, ng);
    let hv = linspace(gs.s_max, 1.0, nh);
    let f: Vec<Vec<f64>> = gv
        .par_iter()
        .map(|&g| {
            hv.iter()
                .map(|&h| game::cost(gs, bias, g, h))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // Georgia commits first: for each g, Hank's best reply
    let (gi, min_max) = (0..ng)
        .map(|i| (i, f[i].iter().copied().fold(f64::NEG_INFINITY, f64::max)))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    // Hank commits first: for each h, Georgia's best reply
    let (hj, max_min) = (0..nh)
        .map(|j| (j, f.iter().map(|row| row[j]).fold(f64::INFINITY, f64::min)))
        .fold(
            (0, f64::NEG_INFINITY),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );

    let g_step = if ng > 1 { gs.s_min / (ng - 1) as f64 } else { 0.0 };
    let h_step = if nh > 1 {
        (1.0 - gs.s_max) / (nh - 1) as f64
    } else {
        0.0
    };
    let step = g_step.max(h_step);
    let lipschitz = grid_lipschitz(&f, g_step, h_step);
    let gap = min_max - max_min;
    if gap > 2.0 * lipschitz * step + 1e-14 {
        return Err(Error::Inconsistent(format!(
            "grid min-max {min_max} exceeds max-min {max_min} by {gap:e} (bound {:e})",
            2.0 * lipschitz * step
        )));
    }
    Ok(SaddlePoint {
        g: gv[gi],
        h: hv[hj],
        f: f[gi][hj],
        max_min,
        min_max,
        step,
    })
}

/// Largest slope between neighbouring grid cells.
fn grid_lipschitz(f: &[Vec<f64>], g_step: f64, h_step: f64) -> f64 {
    let mut l: f64 = 0.0;
    for (i, row) in f.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if j + 1 < row.len() && h_step > 0.0 {
                l = l.max((row[j + 1] - v).abs() / h_step);
            }
            if i + 1 < f.len() && g_step > 0.0 {
                l = l.max((f[i + 1][j] - v).abs() / g_step);
            }
        }
    }
    l
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizer of `f` on `[lo, hi]` for unimodal `f`. Endpoints are compared at
/// the end so monotone functions land exactly on the boundary.
fn golden_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    if hi <= lo {
        return lo;
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(lo, f(lo)), (hi, f(hi)), (mid, f(mid))]
        .into_iter()
        .fold(
            (mid, f64::INFINITY),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        )
        .0
}

/// Alternating exact best responses until neither source moves more than `tol`.
pub fn best_response_iteration(scn: &Scenario, spec: &SpectralData, tol: f64) -> Result<(f64, f64)> {
    let gs = game::game_scalars(scn, spec)?;
    best_response_scalars(&gs, scn.bias, tol)
}

pub fn best_response_scalars(gs: &GameScalars, bias: BiasParams, tol: f64) -> Result<(f64, f64)> {
    let f = |g: f64, h: f64| game::cost(gs, bias, g, h).unwrap_or(f64::NAN);
    // probe the cost once so a bad denominator surfaces as an error
    game::cost(gs, bias, 0.0, 1.0)?;
    let inner = tol * 1e-2;
    let (mut g, mut h) = (0.5 * gs.s_min, 0.5 * (gs.s_max + 1.0));
    let mut moved = f64::INFINITY;
    for _ in 0..BR_MAX_ROUNDS {
        let g_new = golden_min(|x| f(x, h), 0.0, gs.s_min, inner);
        let h_new = golden_min(|y| -f(g_new, y), gs.s_max, 1.0, inner);
        moved = (g_new - g).abs().max((h_new - h).abs());
        g = g_new;
        h = h_new;
        if moved < tol {
            return Ok((g, h));
        }
    }
    Err(Error::IterationLimit {
        iterations: BR_MAX_ROUNDS,
        residual: moved,
    })
}

/// Largest gains available to Georgia and Hank by deviating alone from
/// `(g, h)`, over `probes` evenly spaced points per axis. Positive means the
/// deviation pays.
pub fn deviation_gains(gs: &GameScalars, bias: BiasParams, g: f64, h: f64, probes: usize) -> Result<(f64, f64)> {
    let base = game::cost(gs, bias, g, h)?;
    let n = probes.max(2);
    let mut georgia: f64 = f64::NEG_INFINITY;
    for gp in linspace(0.0, gs.s_min, if gs.s_min == 0.0 { 1 } else { n }) {
        georgia = georgia.max(base - game::cost(gs, bias, gp, h)?);
    }
    let mut hank: f64 = f64::NEG_INFINITY;
    for hp in linspace(gs.s_max, 1.0, if gs.s_max == 1.0 { 1 } else { n }) {
        hank = hank.max(game::cost(gs, bias, g, hp)? - base);
    }
    Ok((georgia, hank))
}

/// Direct check of the equilibrium definition on a probe grid.
pub fn no_profitable_deviation(scn: &Scenario, spec: &SpectralData, g: f64, h: f64, probes: usize) -> Result<bool> {
    let gs = game::game_scalars(scn, spec)?;
    let (georgia, hank) = deviation_gains(&gs, scn.bias, g, h, probes)?;
    Ok(georgia <= DEVIATION_SLACK && hank <= DEVIATION_SLACK)
}

fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, step: f64) -> f64 {
    if x - step < 0.0 {
        (-3.0 * f(x) + 4.0 * f(x + step) - f(x + 2.0 * step)) / (2.0 * step)
    } else if x + step > 1.0 {
        (3.0 * f(x) - 4.0 * f(x - step) + f(x - 2.0 * step)) / (2.0 * step)
    } else {
        (f(x + step) - f(x - step)) / (2.0 * step)
    }
}

fn relative_error(numeric: f64, analytic: f64, c_sum: f64) -> f64 {
    (numeric - analytic).abs() / analytic.abs().max(1e-3 * c_sum)
}

/// Worst relative error between the analytic partials and finite differences
/// of the cost at `(g, h)`.
pub fn finite_diff_at(gs: &GameScalars, bias: BiasParams, g: f64, h: f64) -> Result<f64> {
    let f = |g: f64, h: f64| game::cost(gs, bias, g, h).unwrap_or(f64::NAN);
    let fd_g = derivative(|x| f(x, h), g, FD_STEP);
    let fd_h = derivative(|y| f(g, y), h, FD_STEP);
    let e_g = relative_error(fd_g, game::partial_f_g(gs, bias, g, h)?, gs.c_sum);
    let e_h = relative_error(fd_h, game::partial_f_h(gs, bias, g, h)?, gs.c_sum);
    let worst = e_g.max(e_h);
    if worst.is_nan() {
        return Err(Error::Numerical(format!("finite difference undefined at ({g}, {h})")));
    }
    Ok(worst)
}

pub fn finite_diff_check(scn: &Scenario, spec: &SpectralData, samples: usize) -> Result<f64> {
    finite_diff_check_seeded(scn, spec, samples, DEFAULT_FD_SEED)
}

/// Samples uniformly from the feasible box.
pub fn finite_diff_check_seeded(scn: &Scenario, spec: &SpectralData, samples: usize, seed: u64) -> Result<f64> {
    let gs = game::game_scalars(scn, spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let g = rng.gen::<f64>() * gs.s_min;
        let h = gs.s_max + rng.gen::<f64>() * (1.0 - gs.s_max);
        worst = worst.max(finite_diff_at(&gs, scn.bias, g, h)?);
    }
    Ok(worst)
}

/// `cᵀx` with `x` obtained by iterating the dynamics from `s`.
pub fn cost_via_simulation(scn: &Scenario, spec: &SpectralData, pair: SourcePair) -> Result<f64> {
    let x = dynamics::simulate(
        scn,
        pair,
        OpinionState::new(scn.s.clone()),
        dynamics::DEFAULT_SIM_TOL,
        dynamics::DEFAULT_SIM_MAX_ITER,
    )?;
    Ok(crate::linalg::dot(&spec.c, &x.x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub grid: SaddlePoint,
    pub grid_agrees: bool,
    pub georgia_gain: f64,
    pub hank_gain: f64,
    pub no_profitable_deviation: bool,
    pub probes: usize,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.grid_agrees && self.no_profitable_deviation
    }
}

/// Grid search plus deviation probes around a claimed equilibrium.
pub fn verify_equilibrium(
    gs: &GameScalars,
    bias: BiasParams,
    eq: &EquilibriumResult,
    grid: GridSpec,
    probes: usize,
) -> Result<Verification> {
    let saddle = grid_saddle_scalars(gs, bias, grid)?;
    let slack = saddle.step * (1.0 + 1e-9) + 1e-12;
    let grid_agrees = (saddle.g - eq.g_star).abs() <= slack && (saddle.h - eq.h_star).abs() <= slack;
    let (georgia_gain, hank_gain) = deviation_gains(gs, bias, eq.g_star, eq.h_star, probes)?;
    Ok(Verification {
        grid: saddle,
        grid_agrees,
        georgia_gain,
        hank_gain,
        no_profitable_deviation: georgia_gain <= DEVIATION_SLACK && hank_gain <= DEVIATION_SLACK,
        probes,
    })
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `β ∈ [0.01, 0.2]`, `γ ∈ [0, β]`.
pub fn random_bias<R: Rng + ?Sized>(rng: &mut R) -> BiasParams {
    let beta = rng.gen_range(0.01..=0.2);
    let gamma = rng.gen_range(0.0..=beta);
    BiasParams::new(beta, gamma)
}

/// Dense positive network with zero diagonal, scaled so both induced norms
/// stay inside the room `bias` leaves.
pub fn random_network<R: Rng + ?Sized>(rng: &mut R, n: usize, bias: BiasParams) -> SocialNetwork {
    let room = 1.0 - (2.0 * bias.beta).max(4.0 * bias.gamma);
    let target = room * rng.gen_range(0.3..1.0);
    let raw: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0.0 } else { rng.gen_range(0.05..1.0) })
                .collect()
        })
        .collect();
    let net = SocialNetwork::from_dense(raw).expect("finite nonnegative weights");
    let norm = net.norm_1().max(net.norm_inf());
    net.scaled(target / norm).expect("positive scale")
}

pub fn random_scenario_with_bias<R: Rng + ?Sized>(rng: &mut R, bias: BiasParams) -> Scenario {
    let n = rng.gen_range(2..=10);
    let net = random_network(rng, n, bias);
    let s = (0..n).map(|_| rng.gen::<f64>()).collect();
    Scenario::new(net, s, bias).expect("generated scenario is valid")
}

/// A feasible instance with `n ∈ [2, 10]`.
pub fn random_scenario<R: Rng + ?Sized>(rng: &mut R) -> Scenario {
    let bias = random_bias(rng);
    random_scenario_with_bias(rng, bias)
}
