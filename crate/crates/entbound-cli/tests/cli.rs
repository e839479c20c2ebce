//! End-to-end tests of the binary: argument handling, exit codes, output
//! schemas, and file determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entbound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_amplifier_report() {
    let out = run(&["classify", "2", "0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("valid: yes"));
    assert!(text.contains("entanglement breaking: no"));
    assert!(text.contains("annihilates all Gaussian entanglement (any mode count): yes"));
    assert!(text.contains("non-Gaussian survival possible: yes"));
    assert!(text.contains("1.11803398875"));
}

#[test]
fn classify_json_schema() {
    let out = run(&["classify", "0.5", "0.75", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["entanglement_breaking"], true);
    assert_eq!(doc["mu_ql"], 0.25);
    assert_eq!(doc["extra_noise"], 0.5);
    assert_eq!(doc["tau"], 1.5);
    // same numbers as the human report
    let human = stdout(&run(&["classify", "0.5", "0.75"]));
    assert!(human.contains("extra noise a: 0.5"));
    assert!(human.contains("tau = 1.5"));
}

#[test]
fn classify_accepts_extra_noise_flag() {
    let a = stdout(&run(&["classify", "2", "--extra-noise", "0", "--json"]));
    let b = stdout(&run(&["classify", "2", "0.5", "--json"]));
    assert_eq!(a, b);
}

#[test]
fn invalid_channel_exits_2() {
    let out = run(&["classify", "2", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["classify", "2", "0.4", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["valid"], false);
}

#[test]
fn bad_arguments_exit_1() {
    assert_eq!(run(&["classify", "2"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "-1", "0.5"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(
        run(&["diagram", "fig2b", "--out", "/tmp/x.csv"]).status.code(),
        Some(1),
        "fig2b without gains"
    );
    assert_eq!(
        run(&["verify", "gaussian", "--cutoff", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn help_exits_0() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["diagram", "--help"]).status.success());
}

#[test]
fn diagram_fig3b_csv_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    let args = ["diagram", "fig3b", "--points", "9", "--kappa-min", "0.1", "--kappa-max", "5"];
    let out = bin().args(args).arg("--out").arg(&p1).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bin().args(args).arg("--out").arg(&p2).output().unwrap();
    assert!(out.status.success());
    let b1 = std::fs::read(&p1).unwrap();
    assert_eq!(b1, std::fs::read(&p2).unwrap());
    let text = String::from_utf8(b1).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "kind,method,abscissa,value,tolerance");
    assert!(text.contains("corollary4,analytic"));
    assert!(text.contains("corollary4,bisection"));
    assert!(text.contains("prop1_gaussian,analytic"));
    assert!(!text.ends_with("\r\n"));
}

#[test]
fn diagram_fig1b_has_requested_energies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let out = bin()
        .args(["diagram", "fig1b", "--energies", "0.1,1,10", "--points", "7"])
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    for e in ["0.1", "1", "10"] {
        assert!(text.contains(&format!("tmsv_energy(E={e}),analytic")), "E = {e}");
        assert!(text.contains(&format!("tmsv_energy(E={e}),bisection")), "E = {e}");
    }
    assert!(text.contains("validity,analytic"));
}

#[test]
fn diagram_fig3a_json_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("region.json");
    let out = bin()
        .args([
            "diagram", "fig3a", "--kappa1", "0.5", "--kappa2", "0.5", "--points", "11",
        ])
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let curves = doc["curves"].as_array().unwrap();
    assert_eq!(curves.len(), 2);
    assert!(curves[0]["kind"]
        .as_str()
        .unwrap()
        .starts_with("prop2_region_slice"));
    for c in curves {
        for s in c["samples"].as_array().unwrap() {
            assert!(s[1].as_f64().unwrap() > 0.0);
        }
    }
}

#[test]
fn verify_gaussian_suite_passes() {
    let out = bin()
        .args(["verify", "gaussian", "--threads", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = stdout(&out);
    assert!(text.contains("PASS criterion  1"));
    assert!(text.contains("PASS criterion  2"));
    assert!(text.contains("PASS criterion  3"));
    assert!(text.contains("3 of 3 criteria passed"));
}

#[test]
fn verify_json_shape() {
    let out = bin()
        .args(["verify", "witness", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["config"]["cutoff"], 30);
    let ids: Vec<u64> = doc["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, vec![5, 6, 7, 8, 9]);
}
