//! Cross-check the closed-form equilibrium against brute force on random
//! instances.
//!
//!     cargo run --release --example oracle_verification [seed] [count]

use cbgame::game::{game_scalars, nash_equilibrium};
use cbgame::oracle::{
    best_response_iteration, finite_diff_check, random_scenario, seeded_rng, verify_equilibrium, GridSpec,
};
use cbgame::spectral::{dominant_eigenpair, DEFAULT_MAX_ITER, DEFAULT_TOL};

fn main() -> cbgame::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    println!("seed {seed}, {count} instances");

    let mut rng = seeded_rng(seed);
    let mut failures = 0;
    for i in 0..count {
        let scn = random_scenario(&mut rng);
        let spec = dominant_eigenpair(&scn.net, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        let gs = game_scalars(&scn, &spec)?;
        let eq = nash_equilibrium(&gs, scn.bias)?;
        let v = verify_equilibrium(&gs, scn.bias, &eq, GridSpec::square(400), 10_000)?;
        let (g, h) = best_response_iteration(&scn, &spec, 1e-7)?;
        let br = (g - eq.g_star).abs().max((h - eq.h_star).abs());
        let fd = finite_diff_check(&scn, &spec, 20)?;
        let ok = v.passed() && br <= 1e-4 && fd <= 1e-5;
        failures += usize::from(!ok);
        println!(
            "#{i:<3} n={:<2} ({:.4}, {:.4}) {:<24} grid {} br {br:.1e} fd {fd:.1e} {}",
            scn.net.n(),
            eq.g_star,
            eq.h_star,
            eq.branch.to_string(),
            if v.grid_agrees { "ok" } else { "off" },
            if ok { "ok" } else { "FAIL" }
        );
    }
    println!("{failures} failures");
    Ok(())
}
