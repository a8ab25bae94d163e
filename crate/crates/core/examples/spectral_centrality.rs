//! Dominant eigenpair of the advice network and the centrality-weighted
//! opinion averages that drive the game.

use cbgame::game::game_scalars;
use cbgame::krackhardt;
use cbgame::spectral::{dominant_eigenpair, DEFAULT_MAX_ITER, DEFAULT_TOL};

fn main() -> cbgame::Result<()> {
    let net = krackhardt::network()?;
    let sd = dominant_eigenpair(&net, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    println!(
        "lambda = {:.6} after {} iterations (residual {:.1e})",
        sd.lambda, sd.iterations, sd.residual
    );

    let mut ranked: Vec<(usize, f64)> = sd.c_hat.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("most central:");
    for (i, c) in ranked.iter().take(5) {
        println!("  v{:<3} {c:.4}", i + 1);
    }

    for case in krackhardt::cases() {
        let gs = game_scalars(&case.scenario(&net)?, &sd)?;
        println!("case {}: s_hat = {:.4}, chi = {:.4}", case.id, gs.s_hat, gs.chi);
    }
    Ok(())
}
