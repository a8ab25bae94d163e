//! Command-line front end. The `cbgame` binary is a thin wrapper around
//! [`run`], which returns the text and exit code instead of printing, so the
//! commands are testable in-process.
//!
//! Exit codes: 0 success, 2 invalid input or failed assumptions, 3 numerical
//! failure, 4 verification mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dynamics::{self, BiasParams, OpinionState, Scenario, SourcePair};
use crate::error::{Error, Result};
use crate::game::{self, GameScalars};
use crate::krackhardt;
use crate::network::check_assumption1;
use crate::oracle::{self, GridSpec};
use crate::scenario::load_scenario;
use crate::spectral;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "cbgame", version, about = "Two-source opinion game under confirmation bias")]
pub struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the standing assumptions and print the spectral scalars
    Check {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Compute the Nash equilibrium
    Equilibrium {
        #[arg(long)]
        scenario: PathBuf,
        /// Cross-check with the grid search and deviation probes
        #[arg(long)]
        verify: bool,
        /// Grid points per axis for --verify
        #[arg(long, default_value_t = 400)]
        grid: usize,
        /// Deviation probes per axis for --verify
        #[arg(long, default_value_t = 10_000)]
        probes: usize,
        /// Seed for the finite-difference samples in --verify
        #[arg(long, default_value_t = oracle::DEFAULT_FD_SEED)]
        seed: u64,
    },
    /// Run the opinion dynamics to a fixed point
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        g: f64,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        #[arg(long, default_value_t = dynamics::DEFAULT_SIM_TOL)]
        tol: f64,
        #[arg(long, default_value_t = dynamics::DEFAULT_SIM_MAX_ITER)]
        max_iter: usize,
        /// Write every iterate as CSV (`-` for stdout)
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Tabulate the cost or a predicate over a 2-D grid as CSV
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Axes::GH)]
        axes: Axes,
        #[arg(long, value_enum, default_value_t = Mode::F)]
        mode: Mode,
        /// `lo,hi` for the first axis
        #[arg(long, value_parser = parse_range)]
        range1: Option<(f64, f64)>,
        /// `lo,hi` for the second axis
        #[arg(long, value_parser = parse_range)]
        range2: Option<(f64, f64)>,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
    },
    /// Rerun the five Krackhardt reference cases
    Reproduce {
        /// Use this edge list instead of the bundled one
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axes {
    #[value(name = "g,h")]
    GH,
    #[value(name = "beta,gamma")]
    BetaGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Cost `f(g, h)`; with beta,gamma axes, the equilibrium cost
    F,
    /// `m` at the grid point (g,h axes) or `m(0, 1)` (beta,gamma axes)
    M01,
    /// `q` at the grid point (g,h axes) or `q(0, 1)` (beta,gamma axes)
    Q01,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::IterationLimit { .. } | Error::Numerical(_) | Error::ZeroGamma(_) | Error::Domain { .. } => {
            EXIT_NUMERICAL
        }
        Error::Inconsistent(_) => EXIT_MISMATCH,
        _ => EXIT_INVALID,
    }
}

/// Six significant digits, trailing zeros dropped.
pub fn sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".into()
    } else {
        rounded.to_string()
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are finite or null");
    s.push('\n');
    s
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Check { scenario } => cmd_check(&load_scenario(scenario)?, cli.json),
        Command::Equilibrium {
            scenario,
            verify,
            grid,
            probes,
            seed,
        } => {
            let opts = VerifyOptions {
                grid: GridSpec::square(*grid),
                probes: *probes,
                seed: *seed,
            };
            cmd_equilibrium(&load_scenario(scenario)?, verify.then_some(opts), cli.json)
        }
        Command::Simulate {
            scenario,
            g,
            h,
            tol,
            max_iter,
            trace,
        } => {
            let scn = load_scenario(scenario)?;
            cmd_simulate(
                &scn,
                SourcePair::new(*g, *h),
                *tol,
                *max_iter,
                trace.as_deref(),
                cli.json,
            )
        }
        Command::Sweep {
            scenario,
            axes,
            mode,
            range1,
            range2,
            resolution,
        } => {
            let scn = load_scenario(scenario)?;
            let req = SweepRequest {
                axes: *axes,
                mode: *mode,
                range1: *range1,
                range2: *range2,
                resolution: *resolution,
            };
            cmd_sweep(&scn, &req, cli.json)
        }
        Command::Reproduce { fixture } => {
            let net = match fixture {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|source| Error::Io {
                        path: p.display().to_string(),
                        source,
                    })?;
                    krackhardt::from_edge_list(&text)?
                }
                None => krackhardt::network()?,
            };
            cmd_reproduce(&net, cli.json)
        }
    }
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn cmd_check(scn: &Scenario, as_json: bool) -> Result<Output> {
    let rep = check_assumption1(&scn.net, &scn.bias);
    let scalars = spectral::dominant_eigenpair(&scn.net, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITER)
        .ok()
        .map(|sd| game::game_scalars(scn, &sd))
        .transpose()?;
    let code = if rep.overall_ok { EXIT_OK } else { EXIT_INVALID };
    let violations = rep.violations();
    let stdout = if as_json {
        render_json(&json!({
            "n": scn.net.n(),
            "beta": scn.bias.beta,
            "gamma": scn.bias.gamma,
            "report": rep,
            "scalars": scalars,
            "violations": violations,
        }))
    } else {
        let mut s = String::new();
        let b = scn.bias;
        writeln!(s, "network          {} nodes", scn.net.n()).unwrap();
        writeln!(
            s,
            "beta >= gamma    {} (beta = {}, gamma = {})",
            flag(rep.beta_ge_gamma),
            sig(b.beta),
            sig(b.gamma)
        )
        .unwrap();
        writeln!(
            s,
            "norm condition   {} (|W|inf = {}, |W|1 = {}, gap {} vs required {})",
            flag(rep.norm_condition_ok),
            sig(rep.norm_inf),
            sig(rep.norm_1),
            sig(rep.norm_gap),
            sig(rep.required_gap)
        )
        .unwrap();
        writeln!(s, "positivity       {}", flag(rep.positive_eigvec_ok)).unwrap();
        if let Some(gs) = &scalars {
            writeln!(s, "lambda           {}", sig(gs.lambda)).unwrap();
            writeln!(s, "s_hat            {}", sig(gs.s_hat)).unwrap();
            writeln!(s, "chi              {}", sig(gs.chi)).unwrap();
        }
        for v in &violations {
            writeln!(s, "violation: {v}").unwrap();
        }
        writeln!(s, "assumptions      {}", flag(rep.overall_ok)).unwrap();
        s
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub grid: GridSpec,
    pub probes: usize,
    pub seed: u64,
}

pub fn cmd_equilibrium(scn: &Scenario, verify: Option<VerifyOptions>, as_json: bool) -> Result<Output> {
    let an = game::analyze(scn)?;
    let eq = &an.equilibrium;
    let checks = match verify {
        Some(opts) => {
            let v = oracle::verify_equilibrium(&an.scalars, scn.bias, eq, opts.grid, opts.probes)?;
            let fd = oracle::finite_diff_check_seeded(scn, &an.spectral, 100, opts.seed)?;
            Some((opts, v, fd))
        }
        None => None,
    };
    let verified = checks.as_ref().map(|(_, v, fd)| v.passed() && *fd <= 1e-5);
    let code = if verified == Some(false) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };

    let stdout = if as_json {
        let verification = checks.as_ref().map(|(opts, v, fd)| {
            json!({
                "seed": opts.seed,
                "grid_points": opts.grid.g_points,
                "oracle": v,
                "finite_diff_max_rel_error": fd,
                "passed": verified,
            })
        });
        render_json(&json!({
            "scalars": an.scalars,
            "bias": scn.bias,
            "equilibrium": eq,
            "verification": verification,
        }))
    } else {
        let mut s = String::new();
        writeln!(s, "equilibrium      ({}, {})", sig(eq.g_star), sig(eq.h_star)).unwrap();
        writeln!(s, "branch           {}", eq.branch).unwrap();
        writeln!(s, "f                {}", sig(eq.f_value)).unwrap();
        if let Some(f) = eq.f_steady_state {
            writeln!(s, "f (steady state) {}", sig(f)).unwrap();
        }
        writeln!(s, "m(0,1)           {}", sig(eq.m01)).unwrap();
        writeln!(s, "q(0,1)           {}", sig(eq.q01)).unwrap();
        writeln!(s, "cb moved georgia {}", eq.cb_moved_georgia).unwrap();
        writeln!(s, "cb moved hank    {}", eq.cb_moved_hank).unwrap();
        if eq.boundary_tie {
            writeln!(s, "note: a branch predicate was within tolerance of zero").unwrap();
        }
        if eq.clamped {
            writeln!(
                s,
                "note: closed-form root {} fell outside the feasible interval",
                sig(eq.raw_root.unwrap_or(f64::NAN))
            )
            .unwrap();
        }
        if let Some(w) = &eq.numerical_warning {
            writeln!(s, "warning: {w}").unwrap();
        }
        if let Some((opts, v, fd)) = &checks {
            writeln!(s, "verify seed      {}", opts.seed).unwrap();
            writeln!(
                s,
                "grid saddle      ({}, {}) step {} {}",
                sig(v.grid.g),
                sig(v.grid.h),
                sig(v.grid.step),
                flag(v.grid_agrees)
            )
            .unwrap();
            writeln!(
                s,
                "deviations       georgia {} hank {} over {} probes {}",
                sig(v.georgia_gain),
                sig(v.hank_gain),
                v.probes,
                flag(v.no_profitable_deviation)
            )
            .unwrap();
            writeln!(s, "gradient check   max rel error {} {}", sig(*fd), flag(*fd <= 1e-5)).unwrap();
            writeln!(s, "verification     {}", flag(verified == Some(true))).unwrap();
        }
        s
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code,
    })
}

fn trace_header(n: usize) -> String {
    let mut s = String::from("k");
    for i in 0..n {
        write!(s, ",x_{i}").unwrap();
    }
    s.push('\n');
    s
}

fn trace_row(buf: &mut String, state: &OpinionState) {
    write!(buf, "{}", state.k).unwrap();
    for v in &state.x {
        write!(buf, ",{v}").unwrap();
    }
    buf.push('\n');
}

pub fn cmd_simulate(
    scn: &Scenario,
    pair: SourcePair,
    tol: f64,
    max_iter: usize,
    trace: Option<&std::path::Path>,
    as_json: bool,
) -> Result<Output> {
    pair.validate_for(scn)?;
    let mut csv = trace.map(|_| trace_header(scn.net.n()));
    let fin = dynamics::simulate_with(scn, pair, OpinionState::new(scn.s.clone()), tol, max_iter, |st| {
        if let Some(buf) = csv.as_mut() {
            trace_row(buf, st);
        }
    })?;
    let closed = dynamics::steady_state_closed_form(scn, pair)?;
    let gap = fin
        .x
        .iter()
        .zip(&closed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut stdout = String::new();
    match (trace, csv) {
        (Some(p), Some(buf)) if p.as_os_str() == "-" => stdout.push_str(&buf),
        (Some(p), Some(buf)) => std::fs::write(p, buf).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        })?,
        _ => {}
    }
    if stdout.is_empty() {
        stdout = if as_json {
            render_json(&json!({
                "g": pair.g,
                "h": pair.h,
                "iterations": fin.k,
                "x": fin.x,
                "closed_form_gap_inf": gap,
            }))
        } else {
            let mut s = String::new();
            writeln!(s, "iterations       {}", fin.k).unwrap();
            writeln!(s, "closed-form gap  {}", sig(gap)).unwrap();
            for (i, v) in fin.x.iter().enumerate() {
                let label = scn.net.labels().map(|l| l[i].clone()).unwrap_or_else(|| i.to_string());
                writeln!(s, "x[{label}] {}", sig(*v)).unwrap();
            }
            s
        };
    }
    Ok(Output::ok(stdout))
}

#[derive(Debug, Clone, Copy)]
pub struct SweepRequest {
    pub axes: Axes,
    pub mode: Mode,
    pub range1: Option<(f64, f64)>,
    pub range2: Option<(f64, f64)>,
    pub resolution: usize,
}

fn sweep_value(gs: &GameScalars, scn: &Scenario, req: &SweepRequest, a: f64, b: f64) -> f64 {
    match req.axes {
        Axes::GH => {
            let bias = scn.bias;
            match req.mode {
                Mode::F => game::cost(gs, bias, a, b).unwrap_or(f64::NAN),
                Mode::M01 => game::m_fn(gs, bias, a, b),
                Mode::Q01 => game::q_fn(gs, bias, a, b),
            }
        }
        Axes::BetaGamma => {
            let bias = BiasParams::new(a, b);
            match req.mode {
                Mode::F => {
                    let gap = 1.0 - scn.net.norm_1().max(scn.net.norm_inf());
                    if gap < (2.0 * a).max(4.0 * b) {
                        return f64::NAN;
                    }
                    game::nash_equilibrium(gs, bias)
                        .map(|eq| eq.f_value)
                        .unwrap_or(f64::NAN)
                }
                Mode::M01 => game::m_fn(gs, bias, 0.0, 1.0),
                Mode::Q01 => game::q_fn(gs, bias, 0.0, 1.0),
            }
        }
    }
}

/// Grid of `(axis1, axis2, value)` rows, first axis varying slowest.
pub fn sweep(scn: &Scenario, req: &SweepRequest) -> Result<Vec<(f64, f64, f64)>> {
    if req.resolution < 2 {
        return Err(Error::InvalidScenario(format!(
            "resolution must be at least 2, got {}",
            req.resolution
        )));
    }
    let spec = spectral::dominant_eigenpair(&scn.net, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITER)?;
    let gs = game::game_scalars(scn, &spec)?;
    let (d1, d2) = match req.axes {
        Axes::GH => ((0.0, gs.s_min), (gs.s_max, 1.0)),
        Axes::BetaGamma => ((0.0, 0.2), (0.0, 0.2)),
    };
    let (r1, r2) = (req.range1.unwrap_or(d1), req.range2.unwrap_or(d2));
    for (name, (lo, hi)) in [("range1", r1), ("range2", r2)] {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::InvalidScenario(format!("{name} [{lo}, {hi}] has no width")));
        }
    }
    let n = req.resolution;
    let at = |(lo, hi): (f64, f64), i: usize| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    };
    Ok((0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = at(r1, i);
            (0..n).map(move |j| at(r2, j)).map(move |b| (a, b)).collect::<Vec<_>>()
        })
        .map(|(a, b)| (a, b, sweep_value(&gs, scn, req, a, b)))
        .collect())
}

pub fn cmd_sweep(scn: &Scenario, req: &SweepRequest, as_json: bool) -> Result<Output> {
    let rows = sweep(scn, req)?;
    let stdout = if as_json {
        let axes = match req.axes {
            Axes::GH => ["g", "h"],
            Axes::BetaGamma => ["beta", "gamma"],
        };
        let mode = match req.mode {
            Mode::F => "f",
            Mode::M01 => "m01",
            Mode::Q01 => "q01",
        };
        // NaN marks infeasible cells; JSON has no NaN, so those become null
        let rows: Vec<Value> = rows
            .iter()
            .map(|&(a, b, v)| json!([a, b, if v.is_finite() { json!(v) } else { Value::Null }]))
            .collect();
        render_json(&json!({ "axes": axes, "mode": mode, "rows": rows }))
    } else {
        let mut s = String::from("axis1,axis2,value\n");
        for (a, b, v) in rows {
            writeln!(s, "{a},{b},{v}").unwrap();
        }
        s
    };
    Ok(Output::ok(stdout))
}

pub fn cmd_reproduce(net: &crate::network::SocialNetwork, as_json: bool) -> Result<Output> {
    let rep = krackhardt::reproduce(net)?;
    let code = if rep.pass { EXIT_OK } else { EXIT_MISMATCH };
    let stdout = if as_json {
        render_json(&serde_json::to_value(&rep)?)
    } else {
        let mut s = String::new();
        let l = &rep.lambda;
        writeln!(
            s,
            "lambda {} (expected {} +/- {}) {}",
            sig(l.actual),
            l.expected,
            l.tol,
            flag(l.pass)
        )
        .unwrap();
        writeln!(
            s,
            "case  s_hat     chi       g*        h*        branch                    result"
        )
        .unwrap();
        for c in &rep.cases {
            writeln!(
                s,
                "{:<5} {:<9} {:<9} {:<9} {:<9} {:<25} {}",
                c.id,
                sig(c.s_hat),
                sig(c.chi),
                sig(c.g_star),
                sig(c.h_star),
                c.branch.to_string(),
                flag(c.pass)
            )
            .unwrap();
            if c.branch != c.expected_branch {
                writeln!(s, "      branch expected {}", c.expected_branch).unwrap();
            }
            for chk in c.checks.iter().filter(|c| !c.pass) {
                writeln!(
                    s,
                    "      {} = {} expected {} +/- {}",
                    chk.name,
                    sig(chk.actual),
                    chk.expected,
                    chk.tol
                )
                .unwrap();
            }
        }
        let passed = rep.cases.iter().filter(|c| c.pass).count();
        writeln!(s, "{passed}/{} cases pass", rep.cases.len()).unwrap();
        s
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code,
    })
}
