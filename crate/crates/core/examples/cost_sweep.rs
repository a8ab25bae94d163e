//! Tabulate the cost surface of reference case B and locate each source's
//! best response along the grid edges, then map where Georgia leaves zero
//! over `(β, γ)` for case D. Writes the surface as CSV to stdout.

use cbgame::cli::{sweep, Axes, Mode, SweepRequest};
use cbgame::krackhardt;

fn main() -> cbgame::Result<()> {
    let net = krackhardt::network()?;
    let scn = krackhardt::cases()[1].scenario(&net)?;
    let req = SweepRequest {
        axes: Axes::GH,
        mode: Mode::F,
        range1: None,
        range2: None,
        resolution: 51,
    };
    let rows = sweep(&scn, &req)?;

    println!("g,h,f");
    for (g, h, f) in &rows {
        println!("{g},{h},{f}");
    }
    let at_g0 = rows
        .iter()
        .filter(|r| r.0 == 0.0)
        .max_by(|a, b| a.2.total_cmp(&b.2))
        .unwrap();
    eprintln!("Hank's best reply to g = 0 on this grid: h = {:.4}", at_g0.1);

    let req = SweepRequest {
        axes: Axes::BetaGamma,
        mode: Mode::M01,
        range1: Some((0.01, 0.2)),
        range2: Some((0.0, 0.2)),
        resolution: 40,
    };
    let case_d = krackhardt::cases()[3].scenario(&net)?;
    let moved = sweep(&case_d, &req)?.iter().filter(|r| r.1 <= r.0 && r.2 < 0.0).count();
    eprintln!("case D profile, (beta, gamma) cells with beta >= gamma where Georgia leaves 0: {moved} of 1600");
    Ok(())
}
