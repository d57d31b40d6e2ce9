use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_entropic-frames"));
    c.env_remove("ENTROPIC_FRAMES_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn verify_writes_reports_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = run(&[
        "verify", "--frame-a", "standard:3", "--frame-b", "fourier:3", "--phi", "log_shift:1", "--states", "50",
        "--out", path(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    assert_eq!(report["summary"]["n_states"], 50);
    assert_eq!(report["summary"]["violations"], 0);
    let csv = read(&out.join("report.csv"));
    assert_eq!(csv.lines().count(), 51);
    assert!(out.join("manifest.json").exists());
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for (i, jobs) in ["1", "4", "4"].iter().enumerate() {
        let out = dir.path().join(format!("r{i}"));
        let o = run(&[
            "verify", "--frame-a", "random_unitary:4", "--frame-b", "harmonic:6x4", "--phi", "power:0.5", "--states",
            "64", "--seed", "11", "--jobs", jobs, "--out", path(&out),
        ]);
        assert_eq!(code(&o), 0);
        reports.push((read(&out.join("report.json")), read(&out.join("report.csv"))));
    }
    assert!(reports.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn seed_env_var_is_a_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let args = |o: &Path| {
        vec![
            "verify".to_string(), "--frame-a".into(), "standard:2".into(), "--frame-b".into(), "fourier:2".into(),
            "--phi".into(), "power:0.5".into(), "--states".into(), "8".into(), "--out".into(), path(o).into(),
        ]
    };
    let o = bin().args(args(&a)).env("ENTROPIC_FRAMES_SEED", "5").output().unwrap();
    assert_eq!(code(&o), 0);
    let mut with_flag = args(&b);
    with_flag.extend(["--seed".into(), "5".into()]);
    assert_eq!(code(&run(&with_flag.iter().map(String::as_str).collect::<Vec<_>>())), 0);
    assert_eq!(read(&a.join("report.csv")), read(&b.join("report.csv")));
    let m: serde_json::Value = serde_json::from_str(&read(&a.join("manifest.json"))).unwrap();
    assert_eq!(m["seed"], 5);
}

#[test]
fn replay_reproduces_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    let o = run(&[
        "verify", "--frame-a", "random_isometry_rows:5x3", "--frame-b", "random_unitary:3", "--phi", "power:1",
        "--states", "40", "--seed", "9", "--out", path(&first),
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&["replay", path(&first.join("manifest.json")), "--out", path(&second)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["report.json", "report.csv"] {
        assert_eq!(read(&first.join(f)), read(&second.join(f)), "{f}");
    }
}

#[test]
fn non_parseval_frame_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("frame.json");
    std::fs::write(
        &f,
        r#"{"label":"skewed","dimension":2,"weights":[1.0,1.0],"vectors":[[[1,0],[0,0]],[[0.6,0],[0.8,0]]]}"#,
    )
    .unwrap();
    let spec = format!("file:{}", path(&f));
    let o = run(&["verify", "--frame-a", &spec, "--frame-b", "fourier:2", "--phi", "power:1", "--out", path(dir.path())]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Parseval"));
    assert_eq!(code(&run(&["validate-frame", &spec])), 2);
}

#[test]
fn malformed_frame_file_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("frame.json");
    std::fs::write(&f, r#"{"label":"x","dimension":2,"weights":[1.0, 1.0],"vectors":[[[1,0]],[[0,0],[1,0]]]}"#)
        .unwrap();
    let o = run(&["validate-frame", &format!("file:{}", path(&f))]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vectors[0]"));
}

#[test]
fn gen_frame_round_trips_through_file_descriptor() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("mb.json");
    assert_eq!(code(&run(&["gen-frame", "mercedes_benz:5", "--out", path(&f)])), 0);
    let o = run(&["validate-frame", &format!("file:{}", path(&f))]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("pass=true"));
}

#[test]
fn zero_states_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "verify", "--frame-a", "standard:2", "--frame-b", "fourier:2", "--phi", "power:1", "--states", "0", "--out",
        path(dir.path()),
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn certify_phi_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = |n: &str| dir.path().join(n);
    assert_eq!(code(&run(&["certify-phi", "power:0.5", "--out", path(&out("a"))])), 0);
    assert_eq!(code(&run(&["certify-phi", "log_shift:1", "--out", path(&out("b"))])), 0);
    let o = run(&["certify-phi", "exp_decay", "--out", path(&out("c"))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stdout).contains("not submultiplicative"));
    let cert: serde_json::Value = serde_json::from_str(&read(&out("c").join("certificate.json"))).unwrap();
    assert_eq!(cert["witness"]["kind"], "not_submultiplicative");
    assert_eq!(code(&run(&["certify-phi", "power:-1", "--out", path(&out("d"))])), 1);
    assert_eq!(code(&run(&["certify-phi", "gamma:2", "--out", path(&out("e"))])), 1);
}

#[test]
fn bounds_table_values() {
    let o = run(&["bounds", "--phi", "power:1", "--c", "0,0.7071067811865476,1"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    let num = |s: &str| s.parse::<f64>().unwrap();
    assert_eq!(rows[0][2], "NA");
    assert_eq!(rows[0][4], "NA");
    assert!((num(rows[0][1]) - 2.0 * 2f64.ln()).abs() < 1e-12);
    assert!((num(rows[1][1]) - 0.31670).abs() < 1e-5);
    assert!((num(rows[1][2]) - 2f64.ln()).abs() < 1e-12);
    assert!((num(rows[1][3]) - 1.37258).abs() < 1e-5);
    assert!((num(rows[1][4]) - 2.0).abs() < 1e-12);
    assert_eq!(num(rows[2][3]), 1.0);

    assert_eq!(code(&run(&["bounds", "--phi", "power:1", "--c", "1.5"])), 1);
    assert_eq!(code(&run(&["bounds", "--phi", "power:1", "--c", "-0.1"])), 1);
    let o = run(&["bounds", "--phi", "log_shift:1", "--grid", "11"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 12);
}

#[test]
fn search_rejects_uncertified_phi() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "search", "--frame-a", "standard:2", "--frame-b", "fourier:2", "--phi", "exp_decay", "--out", path(dir.path()),
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn search_reports_a_sound_minimum() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "search", "--frame-a", "standard:2", "--frame-b", "fourier:2", "--phi", "power:0.5", "--starts", "4",
        "--max-iters", "300", "--out", path(dir.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(&dir.path().join("search.json"))).unwrap();
    let best = v["search"]["best_value"].as_f64().unwrap();
    let bound = v["search"]["bound_value"].as_f64().unwrap();
    assert!(best >= bound - 1e-9);
    assert_eq!(v["search"]["per_start"].as_array().unwrap().len(), 4);
    assert!(v["search"]["per_start"][0].get("history").is_none());
}

#[test]
fn sweep_writes_one_row_per_angle() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "sweep", "--phi", "power:0.5", "--angles", "16", "--starts", "4", "--max-iters", "200", "--out",
        path(dir.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(&dir.path().join("sweep.csv"));
    assert_eq!(csv.lines().count(), 17);
    for line in csv.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert!(v[2] >= v[3] - 1e-9, "min product below bound: {line}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["verify"])), 1);
    assert_eq!(code(&run(&["nonsense"])), 1);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["validate-frame", "hexagon:3"])), 1);
}
