//! End-to-end checks of the command-line surface: interchange formats,
//! exit codes, and byte-level determinism of repeated runs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lexfeat"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn assert_status(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn catalog_lists_every_feature_with_group_and_description() {
    let out = run(&["catalog"]);
    assert_status(&out, 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 93);
    for line in &lines {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 3, "line {line}");
        assert!(!cols[2].is_empty());
    }
    assert!(lines.iter().any(|l| l.starts_with("ttr\tdiversity\t")));
    assert!(lines.iter().any(|l| l.starts_with("gap_vb\tsophistication\t")));
}

#[test]
fn unknown_flag_exits_one_with_usage() {
    let out = run(&["extract", "--bogus"]);
    assert_status(&out, 1);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.to_lowercase().contains("usage"), "{stderr}");
}

#[test]
fn missing_input_file_exits_two() {
    let out = run(&[
        "rank",
        "--in",
        "/nonexistent/feats.csv",
        "--out",
        "/tmp/never.tsv",
    ]);
    assert_status(&out, 2);
}

#[test]
fn unknown_method_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let feats = dir.path().join("f.csv");
    extract_fixture(&feats);
    let out = run(&[
        "rank",
        "--in",
        feats.to_str().unwrap(),
        "--method",
        "mystery",
        "--out",
        dir.path().join("r.tsv").to_str().unwrap(),
    ]);
    assert_status(&out, 1);
}

fn extract_fixture(out_csv: &Path) {
    let fx = fixtures();
    let out = run(&[
        "extract",
        "--corpus",
        fx.join("corpus").to_str().unwrap(),
        "--resources",
        fx.join("resources").to_str().unwrap(),
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert_status(&out, 0);
}

#[test]
fn extract_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    extract_fixture(&a);
    extract_fixture(&b);
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.starts_with("sample_id,label,ld1,"));
    assert_eq!(text.lines().count(), 7); // header + six fixture documents
}

#[test]
fn rank_train_eval_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let feats = dir.path().join("f.csv");
    extract_fixture(&feats);

    let ranked = dir.path().join("ranked.tsv");
    let out = run(&[
        "rank",
        "--in",
        feats.to_str().unwrap(),
        "--method",
        "all",
        "--out",
        ranked.to_str().unwrap(),
    ]);
    assert_status(&out, 0);
    let ranked_text = std::fs::read_to_string(&ranked).unwrap();
    assert_eq!(ranked_text.lines().count(), 93 * 4);
    for line in ranked_text.lines().take(5) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 4);
        assert!(cols[1].parse::<usize>().is_ok());
        assert!(["anova", "chi2", "info_gain", "relieff"].contains(&cols[0]));
    }

    let model = dir.path().join("model.txt");
    let out = run(&[
        "train",
        "--in",
        feats.to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
        "--features",
        "ttr,gap_vb,mtld,entropy",
    ]);
    assert_status(&out, 0);
    assert!(model.exists());

    let report = dir.path().join("report.txt");
    let out = run(&[
        "eval",
        "--in",
        feats.to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_status(&out, 0);
    let report_text = std::fs::read_to_string(&report).unwrap();
    assert!(report_text.contains("f1="), "{report_text}");
    assert!(String::from_utf8(out.stdout).unwrap().contains("accuracy="));
}

#[test]
fn search_and_sweep_emit_curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let feats = dir.path().join("f.csv");
    extract_fixture(&feats);

    let curve = dir.path().join("curve.csv");
    let out = run(&[
        "search",
        "--train",
        feats.to_str().unwrap(),
        "--test",
        feats.to_str().unwrap(),
        "--method",
        "info_gain",
        "--out",
        curve.to_str().unwrap(),
    ]);
    assert_status(&out, 0);
    let text = std::fs::read_to_string(&curve).unwrap();
    assert!(text.starts_with("x,f1,accuracy\n"));
    // 93 features minus the six profile distances
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.starts_with('x')).count(), 87);
    assert!(text.lines().last().unwrap().starts_with("# best x="));

    let fx = fixtures();
    let sweep_curve = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--train-corpus",
        fx.join("corpus").to_str().unwrap(),
        "--test-corpus",
        fx.join("corpus").to_str().unwrap(),
        "--resources",
        fx.join("resources").to_str().unwrap(),
        "--features",
        "ttr,gap_vb",
        "--from",
        "5",
        "--to",
        "15",
        "--step",
        "5",
        "--out",
        sweep_curve.to_str().unwrap(),
    ]);
    assert_status(&out, 0);
    let text = std::fs::read_to_string(&sweep_curve).unwrap();
    assert_eq!(text.lines().count(), 5); // header + 3 points + summary
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let feats = dir.path().join("f.csv");
    extract_fixture(&feats);
    let config = dir.path().join("lexfeat.conf");
    std::fs::write(&config, "epochs = 7\nmethod = chi2\n").unwrap();

    let model = dir.path().join("m.txt");
    let out = bin()
        .args([
            "--config",
            config.to_str().unwrap(),
            "train",
            "--in",
            feats.to_str().unwrap(),
            "--model",
            model.to_str().unwrap(),
            "--features",
            "ttr,gap_vb",
        ])
        .output()
        .unwrap();
    assert_status(&out, 0);
    let model_text = std::fs::read_to_string(&model).unwrap();
    assert!(model_text.contains("epochs = 7"), "{model_text}");

    // flag wins over config
    let out = bin()
        .args([
            "--config",
            config.to_str().unwrap(),
            "train",
            "--in",
            feats.to_str().unwrap(),
            "--model",
            model.to_str().unwrap(),
            "--features",
            "ttr,gap_vb",
            "--epochs",
            "3",
        ])
        .output()
        .unwrap();
    assert_status(&out, 0);
    let model_text = std::fs::read_to_string(&model).unwrap();
    assert!(model_text.contains("epochs = 3"), "{model_text}");

    // unknown config keys are rejected
    std::fs::write(&config, "nonsense = 1\n").unwrap();
    let out = bin()
        .args(["--config", config.to_str().unwrap(), "catalog"])
        .output()
        .unwrap();
    assert_status(&out, 1);
}

#[test]
fn profiles_command_writes_six_profile_files() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures();
    let out = run(&[
        "profiles",
        "--corpus",
        fx.join("corpus").to_str().unwrap(),
        "--resources",
        fx.join("resources").to_str().unwrap(),
        "--out",
        dir.path().join("profiles").to_str().unwrap(),
    ]);
    assert_status(&out, 0);
    for name in [
        "positive_2.tsv",
        "positive_3.tsv",
        "positive_4.tsv",
        "control_2.tsv",
        "control_3.tsv",
        "control_4.tsv",
    ] {
        assert!(dir.path().join("profiles").join(name).exists(), "{name}");
    }
}

#[test]
fn extract_reports_resource_counts_and_config_block() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures();
    let out = run(&[
        "extract",
        "--corpus",
        fx.join("corpus").to_str().unwrap(),
        "--resources",
        fx.join("resources").to_str().unwrap(),
        "--out",
        dir.path().join("f.csv").to_str().unwrap(),
    ]);
    assert_status(&out, 0);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("# loaded frequency:"), "{stderr}");
    assert!(stderr.contains("# resolved config for `extract`"));
    assert!(stderr.contains("#   learning_rate = 0.1"));
}
