//! Parse an edge list, apply in-degree weights and check the model assumptions.
//!
//!     cargo run --example load_network [path/to/edges]

use cbgame::network::check_assumption1;
use cbgame::{krackhardt, BiasParams, SocialNetwork};

fn main() -> cbgame::Result<()> {
    let net = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|source| cbgame::Error::Io { path, source })?;
            SocialNetwork::load_edge_list(&text)?.krackhardt_weights()
        }
        None => krackhardt::network()?,
    };
    println!(
        "{} nodes, |W|inf = {:.4}, |W|1 = {:.4}",
        net.n(),
        net.norm_inf(),
        net.norm_1()
    );

    let in_deg: Vec<usize> = (0..net.n()).map(|i| net.in_degree(i)).collect();
    println!("in-degrees: {in_deg:?}");

    for (beta, gamma) in [(0.06, 0.0), (0.06, 0.06), (0.06, 0.2), (0.45, 0.1)] {
        let rep = check_assumption1(&net, &BiasParams::new(beta, gamma));
        let verdict = if rep.overall_ok {
            "ok".to_string()
        } else {
            rep.violations().join("; ")
        };
        println!("beta = {beta}, gamma = {gamma}: {verdict}");
    }
    Ok(())
}
