//! Solve the game for each reference case, or for a scenario document.
//!
//!     cargo run --example nash_equilibrium [scenario.json]

use cbgame::game::analyze;
use cbgame::krackhardt;
use cbgame::scenario::load_scenario;

fn main() -> cbgame::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let an = analyze(&load_scenario(path)?)?;
        println!("{:#?}", an.equilibrium);
        return Ok(());
    }
    let net = krackhardt::network()?;
    println!("case  beta   gamma  g*       h*       f        branch");
    for case in krackhardt::cases() {
        let eq = analyze(&case.scenario(&net)?)?.equilibrium;
        println!(
            "{:<5} {:<6} {:<6} {:<8.4} {:<8.4} {:<8.4} {}",
            case.id, case.bias.beta, case.bias.gamma, eq.g_star, eq.h_star, eq.f_value, eq.branch
        );
    }
    Ok(())
}
