use std::path::Path;
use std::process::{Command, Output};

const L3: &str = "3; h=(0 1); v=(0 2)";
const TORUS: &str = "1; h=(0); v=(0)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svorigami")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Exit code 3 exactly when some verdict in the report failed.
fn assert_code_matches_verdicts(o: &Output, rep: &serde_json::Value) {
    let all_pass = rep["verdicts"].as_object().unwrap().values().all(|v| v.as_bool().unwrap());
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 3 }), "{}", stderr(o));
}

#[test]
fn stratum_of_l_shape() {
    let o = run(&["stratum", "--origami", L3]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "H(2), genus 2");
}

#[test]
fn marked_torus_count() {
    let o = run(&["count", "--origami", TORUS, "--marked", "--R", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn origami_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.txt");
    std::fs::write(&path, format!("{L3}\n# comment\n{TORUS}\n")).unwrap();
    let o = run(&["stratum", "--origami", &format!("@{}", path.display())]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "H(2), genus 2\nH(0), genus 1\n");
}

#[test]
fn validation_errors_exit_2_and_name_the_flag() {
    for (args, flag) in [
        (vec!["count", "--origami", TORUS, "--R", "-1"], "--R"),
        (vec!["count", "--origami", "3; h=(0 1); v=(0 1 2 3)", "--R", "2"], "--origami"),
        (vec!["recurrence", "--origami", L3, "--delta", "0.7"], "--delta"),
        (vec!["recurrence", "--origami", L3, "--Tgrid", "0:0.3:1"], "--Tgrid"),
        (vec!["converge", "--n", "8..3"], "--n"),
        (vec!["svc", "--origami", L3, "--matrix", "2,0,0,1"], "--matrix"),
        (vec!["count", "--origami", L3, "--R", "1", "--threads", "0"], "--threads"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn usage_errors_print_synopsis() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn generate_and_orbit() {
    let o = run(&["generate", "--n", "3"]);
    assert!(o.status.success());
    let three: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert!(!three.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.json");
    let o = run(&["orbit", "--origami", L3, "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("orbit of size 3 in H(2)"));
    let export = report(&path);
    let members: Vec<&str> = export["representatives"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(members.len(), 3);
    // n = 3 has a single H(2) orbit, so generation and the orbit agree
    let mut sorted = members.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    sorted.sort();
    let mut generated = three.clone();
    generated.sort();
    assert_eq!(sorted, generated);
}

#[test]
fn traced_and_enumerated_saddles_agree() {
    for dir in ["1,0", "0,1", "-1,2", "2,3"] {
        let traced = run(&["enumerate", "--origami", L3, "--kind", "saddles", "--direction", dir, "--trace"]);
        let piped = run(&["enumerate", "--origami", L3, "--kind", "saddles", "--direction", dir]);
        assert!(traced.status.success() && piped.status.success());
        let mut a: Vec<String> = stdout(&traced).lines().map(str::to_string).collect();
        let mut b: Vec<String> = stdout(&piped).lines().map(str::to_string).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "direction {dir}");
    }
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("svc{threads}.json"));
        let o = run(&["svc", "--origami", L3, "--Rmax", "200", "--threads", threads, "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        texts.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let text = String::from_utf8(texts.remove(0)).unwrap();
    assert!(!text.contains("wall_clock"));
    assert!(text.contains("\"r_max\": 2.0000000000000000e2"), "config echo missing: {text}");

    let timed = dir.path().join("timed.json");
    let o = run(&["svc", "--origami", L3, "--Rmax", "50", "--timing", "--out", timed.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(report(&timed)["wall_clock_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn converge_report_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let plain = dir.path().join("plain.json");
    let resumed = dir.path().join("resumed.json");
    let cp = dir.path().join("cp.jsonl");
    let csv = dir.path().join("rows.csv");
    let args = |out: &Path| -> Vec<String> {
        ["converge", "--n", "3..4", "--R", "60", "--out", out.to_str().unwrap()].iter().map(|s| s.to_string()).collect()
    };
    let mut a = args(&plain);
    a.extend(["--csv".to_string(), csv.to_str().unwrap().to_string()]);
    let o = run(&a.iter().map(String::as_str).collect::<Vec<_>>());
    let rep = report(&plain);
    assert_code_matches_verdicts(&o, &rep);
    assert_eq!(rep["results"]["target"].as_f64().unwrap(), 10.0 / std::f64::consts::PI);
    assert_eq!(rep["results"]["rows"].as_array().unwrap().len(), 2);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 3);

    for _ in 0..2 {
        let mut a = args(&resumed);
        a.extend(["--checkpoint".to_string(), cp.to_str().unwrap().to_string()]);
        run(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(std::fs::read(&plain).unwrap(), std::fs::read(&resumed).unwrap());
    }
    assert_eq!(std::fs::read_to_string(&cp).unwrap().lines().count(), 2);
}

#[test]
fn recurrence_and_doubling_verdicts_set_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("rec.json");
    let o = run(&[
        "recurrence", "--origami", L3, "--geodesic", "0,2", "--Tgrid", "0:0.5:1", "--tol", "1e-3", "--out",
        rec.to_str().unwrap(),
    ]);
    let rep = report(&rec);
    assert_code_matches_verdicts(&o, &rep);
    assert_eq!(rep["results"]["curves"].as_array().unwrap().len(), 2);
    // g_2 has not reached its asymptote by T = 1
    assert_eq!(o.status.code(), Some(3));

    let dbl = dir.path().join("dbl.json");
    let o = run(&[
        "doubling", "--origami", TORUS, "--marked", "--R", "4,8", "--Rmax", "128", "--geodesic", "0", "--out",
        dbl.to_str().unwrap(),
    ]);
    let rep = report(&dbl);
    assert_code_matches_verdicts(&o, &rep);
    assert!(rep["results"]["doubling"]["c"].as_f64().unwrap().is_finite());
}
