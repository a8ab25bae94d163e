//! Iterate the opinion dynamics to a fixed point and compare with the
//! closed-form steady state.
//!
//!     cargo run --example simulate_dynamics [g] [h]

use cbgame::dynamics::{simulate_with, steady_state_closed_form, DEFAULT_SIM_MAX_ITER, DEFAULT_SIM_TOL};
use cbgame::{krackhardt, OpinionState, SourcePair};

fn main() -> cbgame::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let pair = SourcePair::new(
        args.first().copied().unwrap_or(0.0),
        args.get(1).copied().unwrap_or(0.75),
    );

    let net = krackhardt::network()?;
    let case_b = &krackhardt::cases()[1];
    let scn = case_b.scenario(&net)?;
    pair.validate_for(&scn)?;

    let mut residuals = Vec::new();
    let mut prev: Option<Vec<f64>> = None;
    let fin = simulate_with(
        &scn,
        pair,
        OpinionState::new(scn.s.clone()),
        DEFAULT_SIM_TOL,
        DEFAULT_SIM_MAX_ITER,
        |st| {
            if let Some(p) = &prev {
                residuals.push(st.x.iter().zip(p).map(|(a, b)| (a - b).abs()).sum::<f64>());
            }
            prev = Some(st.x.clone());
        },
    )?;

    println!("converged in {} steps from x(0) = s", fin.k);
    for (k, r) in residuals.iter().enumerate().step_by(4) {
        println!("  step {:>3}: |dx|_1 = {r:.3e}", k + 1);
    }
    let closed = steady_state_closed_form(&scn, pair)?;
    let gap = fin
        .x
        .iter()
        .zip(&closed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("max |x_sim - x_closed| = {gap:.2e}");
    println!("v21 (the only high innate opinion) settles at {:.4}", fin.x[20]);
    Ok(())
}
