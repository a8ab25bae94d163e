//! Rerun the five reference cases and compare with the published figures.

use cbgame::krackhardt;

fn main() -> cbgame::Result<()> {
    let rep = krackhardt::reproduce(&krackhardt::network()?)?;
    let l = &rep.lambda;
    println!(
        "lambda {:.4} vs {} {}",
        l.actual,
        l.expected,
        if l.pass { "ok" } else { "off" }
    );
    for case in &rep.cases {
        println!(
            "case {} ({}): {}",
            case.id,
            case.title,
            if case.pass { "ok" } else { "off" }
        );
        for c in &case.checks {
            println!(
                "  {:<6} {:>9.4} vs {:>7} {}",
                c.name,
                c.actual,
                c.expected,
                if c.pass { "" } else { "<-" }
            );
        }
    }
    Ok(())
}
