use std::path::Path;
use std::process::{Command, Output};

use di_gauss::experiment::{ExperimentReport, CSV_COLUMNS};
use di_gauss::Codebook;
use serde_json::json;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_di-gauss"));
    c.env_remove("DI_GAUSS_SEED");
    c
}

fn write_config(dir: &Path, value: serde_json::Value) -> std::path::PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    path
}

fn single() -> serde_json::Value {
    json!({
        "name": "single64",
        "kind": "single",
        "n": 64,
        "sigma": 1.0,
        "P": 1.0,
        "threshold": {"mode": "fixed", "value": 1.0},
        "k_per_layer": [4],
        "trials": 100000,
        "seed": 17
    })
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn single_layer_report_has_four_miss_and_twelve_false_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), single());
    let out = run(bin().args(["simulate", "--config"]).arg(&cfg));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_COLUMNS);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.iter().filter(|r| &r[8] == "same_word").count(), 4);
    assert_eq!(rows.iter().filter(|r| &r[8] == "differ_at_layer_1").count(), 12);
    for r in &rows {
        let analytic: f64 = r[14].parse().unwrap();
        assert!((0.0..=1.0).contains(&analytic));
        // reals carry 17 significant digits
        let mantissa = r[4].split('e').next().unwrap();
        assert_eq!(mantissa.replace(['.', '-'], "").len(), 17, "{}", &r[4]);
    }
}

#[test]
fn both_formats_write_files_and_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), single());
    let out_dir = dir.path().join("out");
    let out = run(bin()
        .args(["simulate", "--format", "both", "--set", "trials=5000", "--config"])
        .arg(&cfg)
        .arg("--out-dir")
        .arg(&out_dir));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = std::fs::read_to_string(out_dir.join("single64.json")).unwrap();
    let report = ExperimentReport::from_json(&json).unwrap();
    assert_eq!(ExperimentReport::from_json(&report.to_json()).unwrap(), report);
    assert_eq!(report.config.trials, 5000);
    assert!(report.rows.iter().all(|r| r.config_hash == report.config.hash()));
    let csv = std::fs::read_to_string(out_dir.join("single64.csv")).unwrap();
    assert_eq!(csv, report.to_csv());
}

#[test]
fn output_is_byte_identical_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut value = single();
    value["trials"] = json!(20000);
    let cfg = write_config(dir.path(), value);
    let outputs: Vec<Vec<u8>> = ["1", "2", "7"]
        .iter()
        .map(|w| run(bin().args(["simulate", "--workers", w, "--config"]).arg(&cfg)).stdout)
        .collect();
    assert!(!outputs[0].is_empty());
    assert!(outputs.iter().all(|o| *o == outputs[0]));
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let mut value = single();
    value["trials"] = json!(2000);
    value.as_object_mut().unwrap().remove("seed");
    let cfg = write_config(dir.path(), value);
    let seed_of = |out: &Output| {
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        text.lines().nth(1).unwrap().rsplit(',').next().unwrap().to_string()
    };
    let default = run(bin().args(["simulate", "--config"]).arg(&cfg));
    assert_eq!(seed_of(&default), "0");
    let env = run(bin().env("DI_GAUSS_SEED", "31").args(["simulate", "--config"]).arg(&cfg));
    assert_eq!(seed_of(&env), "31");
    let flag = run(bin()
        .env("DI_GAUSS_SEED", "31")
        .args(["simulate", "--seed", "8", "--config"])
        .arg(&cfg));
    assert_eq!(seed_of(&flag), "8");
    let from_config = run(bin()
        .env("DI_GAUSS_SEED", "31")
        .args(["simulate", "--set", "seed=5", "--config"])
        .arg(&cfg));
    assert_eq!(seed_of(&from_config), "5");
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        json!({
            "kind": "rr", "n": 64, "L": 2, "E": 9.1, "sigma": 1.0, "P": 1.0,
            "k_per_layer": [2, 2], "trials": 100
        }),
    );
    let out = run(bin().args(["simulate", "--config"]).arg(&cfg));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E0 = 9P/sigma^2 = 9"), "{err}");

    let cfg = write_config(dir.path(), single());
    for args in [
        vec!["simulate", "--set", "trials=0"],
        vec!["simulate", "--set", "k_per_layer=[1,2]"],
        vec!["simulate", "--set", "threshold.mode=sideways"],
        vec!["simulate", "--workers", "0"],
        vec!["simulate", "--format", "both"],
        vec!["sweep"],
    ] {
        let out = run(bin().args(&args).arg("--config").arg(&cfg));
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(bin().args(["simulate", "--config", "/nonexistent/config.json"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_a_runtime_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), single());
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out = run(bin()
        .args(["simulate", "--set", "trials=10", "--config"])
        .arg(&cfg)
        .arg("--out-dir")
        .arg(blocker.join("sub")));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn construct_emits_a_loadable_codebook() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), single());
    let out = run(bin().args(["construct", "--config"]).arg(&cfg));
    assert!(out.status.success());
    let code = Codebook::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(code.len(), 4);
    assert!(code.audit(None).is_valid());
}

#[test]
fn bounds_and_sweep_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        json!({
            "kind": "rr", "n": 64, "L": 3, "E": 0.01, "sigma": 1.0, "P": 2.0,
            "k_per_layer": [1, 1, 1], "trials": 10,
            "bounds": {"E": [0.01, 0.1, 1.0], "L": [1, 3]},
            "sweep": {"min": 1e-4, "max": 10.0, "points": 20}
        }),
    );
    let out = run(bin().args(["bounds", "--config"]).arg(&cfg));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("curve,n,L,c,b,E,sigma,P,t,value,label\n"));
    assert_eq!(text.lines().count(), 1 + 3 * 3 + 1);

    let out = run(bin().args(["sweep", "--config"]).arg(&cfg));
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let gaps: Vec<f64> = reader.records().map(|r| r.unwrap()[7].parse().unwrap()).collect();
    assert_eq!(gaps.len(), 20);
    let want = 0.5 * (72.0f64 * 3.0).log2();
    assert!(gaps.iter().all(|g| (g - want).abs() < 1e-12));
}

#[test]
fn paper_mode_rows_are_labeled_analytic_only() {
    let dir = tempfile::tempdir().unwrap();
    let mut value = single();
    value["threshold"] = json!({"mode": "paper_log2"});
    let cfg = write_config(dir.path(), value);
    let out = run(bin().args(["simulate", "--config"]).arg(&cfg));
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    for r in reader.records().map(Result::unwrap) {
        // 2Φ(-6) ≈ 2e-9 for the miss rows; false rows are smaller still
        assert_eq!(&r[11], "analytic_only");
        assert_eq!(&r[9], "0");
        assert!(r[14].parse::<f64>().unwrap() < 1e-8);
    }
}
