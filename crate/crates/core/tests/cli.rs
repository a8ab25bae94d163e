use std::path::PathBuf;
use std::process::Command;

use cbgame::game;
use cbgame::scenario::load_scenario;
use serde_json::Value;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn cbgame(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cbgame")).args(args).output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn write_doc(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn assert_round_trips(stdout: &str) -> Value {
    let v: Value = serde_json::from_str(stdout).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, stdout);
    v
}

#[test]
fn check_reports_scalars() {
    let r = cbgame(&["check", "--scenario", &data("case_b.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for key in ["lambda", "s_hat", "chi", "assumptions      ok"] {
        assert!(r.stdout.contains(key), "{}", r.stdout);
    }
}

#[test]
fn check_names_the_failed_condition() {
    let dir = tempfile::tempdir().unwrap();
    let bad_bias = write_doc(
        &dir,
        "bias.json",
        r#"{"network": {"n": 2, "edges": [[0, 1, 0.2], [1, 0, 0.2]]}, "s": [0.3, 0.6], "beta": 0.05, "gamma": 0.1}"#,
    );
    let r = cbgame(&["check", "--scenario", &bad_bias]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("bias ordering violated"), "{}", r.stdout);

    let heavy = write_doc(
        &dir,
        "norm.json",
        r#"{"network": {"n": 2, "edges": [[0, 1, 0.9], [1, 0, 0.9]]}, "s": [0.3, 0.6], "beta": 0.05, "gamma": 0.01}"#,
    );
    let r = cbgame(&["check", "--scenario", &heavy]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("norm condition violated"), "{}", r.stdout);
}

#[test]
fn equilibrium_reports_point_and_branch() {
    let r = cbgame(&["equilibrium", "--scenario", &data("case_d.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(
        r.stdout.contains("(0.2, 1)") && r.stdout.contains("MsLow1NonPos"),
        "{}",
        r.stdout
    );
    let r = cbgame(&["equilibrium", "--scenario", &data("case_a.json")]);
    assert!(r.stdout.contains("(0, 1)") && r.stdout.contains("NoCB"), "{}", r.stdout);
    let r = cbgame(&["equilibrium", "--scenario", &data("case_c.json")]);
    assert!(r.stdout.contains("M01NonNeg_Interior_r0"), "{}", r.stdout);
}

#[test]
fn equilibrium_refuses_failed_assumptions() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_doc(
        &dir,
        "bad.json",
        r#"{"network": {"n": 2, "edges": [[0, 1, 0.2], [1, 0, 0.2]]}, "s": [0.3, 0.6], "beta": 0.05, "gamma": 0.1}"#,
    );
    let r = cbgame(&["equilibrium", "--scenario", &doc]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("assumption"), "{}", r.stderr);
}

#[test]
fn verify_runs_oracles_and_prints_seed() {
    let r = cbgame(&[
        "equilibrium",
        "--scenario",
        &data("case_e.json"),
        "--verify",
        "--seed",
        "42",
    ]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("verify seed      42"));
    assert!(r.stdout.contains("verification     ok"));
}

#[test]
fn json_outputs_round_trip() {
    let case_b = data("case_b.json");
    for args in [
        vec!["check", "--scenario", &case_b, "--json"],
        vec![
            "equilibrium",
            "--scenario",
            &case_b,
            "--json",
            "--verify",
            "--grid",
            "100",
        ],
        vec!["simulate", "--scenario", &case_b, "--h", "0.75", "--json"],
        vec!["reproduce", "--json"],
    ] {
        let r = cbgame(&args);
        assert!(r.code == 0 || r.code == 4, "{args:?}: {}", r.stderr);
        assert_round_trips(&r.stdout);
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "equilibrium",
        "--scenario",
        &data("case_c.json"),
        "--verify",
        "--json",
        "--grid",
        "120",
    ];
    assert_eq!(cbgame(&args).stdout, cbgame(&args).stdout);
}

#[test]
fn simulate_agrees_with_closed_form() {
    let r = cbgame(&[
        "simulate",
        "--scenario",
        &data("case_b.json"),
        "--g",
        "0",
        "--h",
        "0.75",
        "--json",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = assert_round_trips(&r.stdout);
    assert!(v["closed_form_gap_inf"].as_f64().unwrap() <= 1e-8);
    assert!(v["iterations"].as_u64().unwrap() > 0);
    assert_eq!(v["x"].as_array().unwrap().len(), 21);
}

#[test]
fn simulate_trace_csv() {
    let r = cbgame(&["simulate", "--scenario", &data("triangle.json"), "--trace", "-"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("k,x_0,x_1,x_2"));
    assert_eq!(lines.next(), Some("0,0.3,0.5,0.8"));
    let rest: Vec<&str> = lines.collect();
    assert!(rest.len() > 5);
    assert!(rest.iter().all(|l| l.split(',').count() == 4));
}

#[test]
fn simulate_rejects_infeasible_sources() {
    let r = cbgame(&["simulate", "--scenario", &data("case_b.json"), "--h", "0.7"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("s_max"), "{}", r.stderr);
    let r = cbgame(&["simulate", "--scenario", &data("case_b.json"), "--g", "0.25"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("s_min"), "{}", r.stderr);
}

#[test]
fn cost_sweep_peaks_where_hank_stops() {
    let r = cbgame(&[
        "sweep",
        "--scenario",
        &data("case_b.json"),
        "--axes",
        "g,h",
        "--mode",
        "f",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("axis1,axis2,value"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    assert_eq!(rows.len(), 101 * 101);
    let best = rows
        .iter()
        .filter(|r| r[0] == 0.0)
        .max_by(|a, b| a[2].total_cmp(&b[2]))
        .unwrap();
    assert!((best[1] - 0.75).abs() < 1e-12, "{best:?}");
}

#[test]
fn predicate_sweep_matches_parameter_condition() {
    let path = data("case_d.json");
    let r = cbgame(&[
        "sweep",
        "--scenario",
        &path,
        "--axes",
        "beta,gamma",
        "--mode",
        "m01",
        "--resolution",
        "41",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let scn = load_scenario(&path).unwrap();
    let spec = cbgame::spectral::dominant_eigenpair(&scn.net, 1e-12, 100_000).unwrap();
    let gs = game::game_scalars(&scn, &spec).unwrap();
    let mut compared = 0;
    let mut negative = 0;
    for line in r.stdout.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let (beta, gamma, m01) = (v[0], v[1], v[2]);
        if gamma == 0.0 || beta < gamma || m01.abs() < 1e-12 {
            continue;
        }
        compared += 1;
        negative += (m01 < 0.0) as usize;
        let cond = game::georgia_shift_condition(&gs, cbgame::BiasParams::new(beta, gamma));
        assert_eq!(cond, m01 < 0.0, "beta {beta} gamma {gamma}");
    }
    assert!(compared > 500 && negative > 0, "{compared} {negative}");
}

#[test]
fn sweep_rejects_degenerate_range() {
    let r = cbgame(&["sweep", "--scenario", &data("case_b.json"), "--range1", "0.1,0.1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("range1"), "{}", r.stderr);
}

#[test]
fn reproduce_detects_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let text: String = cbgame::krackhardt::EDGE_LIST
        .lines()
        .filter(|l| !l.starts_with("0 ") && !l.starts_with("1 "))
        .map(|l| format!("{l}\n"))
        .collect();
    let p = write_doc(&dir, "broken.edges", &text);
    let r = cbgame(&["reproduce", "--fixture", &p, "--json"]);
    assert_ne!(r.code, 0);
    let v = assert_round_trips(&r.stdout);
    assert_eq!(v["lambda"]["pass"], Value::Bool(false));
}

#[test]
fn reproduce_prints_a_row_per_case() {
    let r = cbgame(&["reproduce"]);
    for id in ["A ", "B ", "C ", "D ", "E "] {
        assert!(r.stdout.lines().any(|l| l.starts_with(id)), "{}", r.stdout);
    }
    assert!(r.stdout.starts_with("lambda "));
}
