use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbp-schrodinger"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tiny_run(out: &Path) -> Output {
    bin(&[
        "run",
        "--preset",
        "convergence-ci",
        "--n",
        "50",
        "--t-final",
        "2e-4",
        "--samples",
        "4",
        "--out-dir",
        out.to_str().unwrap(),
    ])
}

#[test]
fn unknown_preset_is_a_configuration_error() {
    let o = bin(&["run", "--preset", "nope"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn bad_config_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.txt");
    fs::write(&cfg, "preset = norm-ci\nbogus line\n").unwrap();
    let o = bin(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("c.txt:2:"), "{}", stderr(&o));
}

#[test]
fn unstable_run_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&[
        "run",
        "--preset",
        "rk4-bounce-ci",
        "--n",
        "100",
        "--l-coeff",
        "1e6",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("instability"));
}

#[test]
fn tiny_run_is_deterministic_and_replays_from_its_manifest() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    assert_eq!(code(&tiny_run(a.path())), 0);
    assert_eq!(code(&tiny_run(b.path())), 0);
    let manifest = a.path().join("manifest.txt");
    let text = fs::read_to_string(&manifest).unwrap();
    assert!(text.contains("run.l2-n50.n = 50"), "{text}");
    assert!(text.contains("metric."));

    let o = bin(&["run", "--config", manifest.to_str().unwrap(), "--out-dir", c.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["manifest.txt", "q-l2.csv", "l3-n100/error.csv", "l2-n50/final.csv"] {
        let x = fs::read(a.path().join(f)).unwrap();
        assert_eq!(x, fs::read(b.path().join(f)).unwrap(), "{f} differs between identical runs");
        assert_eq!(x, fs::read(c.path().join(f)).unwrap(), "{f} differs after replaying the manifest");
    }
}

#[test]
fn reference_states_can_be_reused() {
    let dir = tempfile::tempdir().unwrap();
    let refs = dir.path().join("ref");
    let o = bin(&[
        "reference",
        "--ci",
        "--n",
        "400",
        "--t-final",
        "2e-4",
        "--samples",
        "4",
        "--out-dir",
        refs.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(refs.join("state-0004.csv").exists());
    assert!(refs.join("manifest.txt").exists());

    let out = dir.path().join("run");
    let o = bin(&[
        "run",
        "--preset",
        "convergence-ci",
        "--n",
        "50",
        "--t-final",
        "2e-4",
        "--samples",
        "4",
        "--reference-dir",
        refs.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(out.join("l2-n50/error.csv").exists());

    let o = bin(&[
        "run",
        "--preset",
        "convergence-ci",
        "--n",
        "50",
        "--t-final",
        "2e-4",
        "--samples",
        "3",
        "--reference-dir",
        refs.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2, "sample count mismatch must be rejected");
}

#[test]
fn dump_operator_prints_coefficients() {
    let o = bin(&["dump-operator", "--order", "4"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("(4,2)"));
    assert!(text.lines().any(|l| l.starts_with("interior")));
    assert_eq!(code(&bin(&["dump-operator", "--order", "3"])), 2);
}
