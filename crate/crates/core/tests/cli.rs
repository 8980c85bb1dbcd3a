use std::process::{Command, Output};

fn gaitforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaitforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_gait_writes_six_joint_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gait.tsv");
    let o = gaitforge(&["gen-gait", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    assert_eq!(header[0], "time");
    assert_eq!(header.len(), 7);
    assert!(text.lines().skip(1).all(|l| l.split('\t').count() == 7));
    let segments = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("segment "))
        .count();
    assert_eq!(segments, 7);
}

#[test]
fn ca_predict_prints_alternating_codes() {
    let o = gaitforge(&["ca-predict", "--init", "0000", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0000 1100 0000\n");
}

#[test]
fn push_reports_strategy_and_rejects_large_force() {
    let o = gaitforge(&["push", "--force", "10.5", "--dir", "left"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["strategy"], "Hip");

    let o = gaitforge(&["push", "--force", "13", "--dir", "left"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "t,x,y,z\n0,1,2\n0.01,oops,1,1\n").unwrap();
    let o = gaitforge(&["ingest", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let missing = dir.path().join("nope.json");
    let o = gaitforge(&["gen-gait", "--model-bank", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cv_on_bundled_dataset_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cv.json");
    let args = [
        "cv",
        "--model",
        "knn",
        "--k",
        "3",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ];
    let a = gaitforge(&args);
    let first = std::fs::read(&out).unwrap();
    let b = gaitforge(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first, std::fs::read(&out).unwrap());
    assert_eq!(
        stdout(&a)
            .lines()
            .filter(|l| l.starts_with("fold "))
            .count(),
        5
    );
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["cv"]["fold_accuracies"].as_array().unwrap().len(), 5);
}

#[test]
fn unknown_verb_is_a_usage_error() {
    let o = gaitforge(&["fly"]);
    assert_eq!(o.status.code(), Some(2));
}
