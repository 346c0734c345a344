use std::path::Path;
use std::process::{Command, Output};

fn wnbuild(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wnbuild"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

#[test]
fn seeded_full_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = wnbuild(&["--seed-fixture", "demo", "run"], dir.path());
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    let stdout = text(&o.stdout);
    assert!(stdout.contains("links vs gold"), "{stdout}");
    for name in ["homogeneous.tsv", "links.tsv", "taxonomy.tsv", "inferred.tsv", "ledger.json", "report.json", "report.txt"] {
        assert!(dir.path().join("demo/out").join(name).is_file(), "{name}");
    }
}

#[test]
fn stages_one_by_one_with_out_override() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&wnbuild(&["--seed-fixture", "demo"], dir.path())), 0);
    let out = dir.path().join("elsewhere");
    let out = out.to_str().unwrap();
    for stage in ["merge-bilinguals", "link", "seed-tag", "train-salient", "label", "top-beginners", "build-taxonomy", "merge", "report"] {
        let o = wnbuild(&["--config", "demo/config.toml", "--out", out, stage], dir.path());
        assert_eq!(code(&o), 0, "{stage}: {}", text(&o.stderr));
    }
    assert!(Path::new(out).join("report.json").is_file());
    assert!(!dir.path().join("demo/out").exists());
}

#[test]
fn missing_prerequisite_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = wnbuild(&["--seed-fixture", "demo", "link"], dir.path());
    assert_eq!(code(&o), 2);
    let err = text(&o.stderr);
    assert!(err.contains("merge-bilinguals"), "{err}");
}

#[test]
fn configuration_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&wnbuild(&["--seed-fixture", "demo"], dir.path())), 0);
    let cfg = ["--config", "demo/config.toml"];
    let o = wnbuild(&[&cfg[..], &["--filter", "F7", "run"]].concat(), dir.path());
    assert_eq!(code(&o), 3, "{}", text(&o.stderr));
    let o = wnbuild(&[&cfg[..], &["--merge-threshold", "2", "merge"]].concat(), dir.path());
    assert_eq!(code(&o), 3);
    let o = wnbuild(&[&cfg[..], &["--combiner", "MAX", "link"]].concat(), dir.path());
    assert_eq!(code(&o), 3);
    assert_eq!(code(&wnbuild(&["frobnicate"], dir.path())), 3);
    assert_eq!(code(&wnbuild(&[], dir.path())), 3);
}

#[test]
fn malformed_input_exits_1_with_line() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&wnbuild(&["--seed-fixture", "demo"], dir.path())), 0);
    std::fs::write(dir.path().join("bad.tsv"), "# header\nst\tdog\n").unwrap();
    let o = wnbuild(&["--config", "demo/config.toml", "--bilingual", "bad.tsv", "merge-bilinguals"], dir.path());
    assert_eq!(code(&o), 1);
    let err = text(&o.stderr);
    assert!(err.contains("bad.tsv:2"), "{err}");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&wnbuild(&["--seed-fixture", "demo", "run"], dir.path())), 0);
    let first = std::fs::read(dir.path().join("demo/out/taxonomy.tsv")).unwrap();
    let report = std::fs::read(dir.path().join("demo/out/report.json")).unwrap();
    assert_eq!(code(&wnbuild(&["--config", "demo/config.toml", "run"], dir.path())), 0);
    assert_eq!(std::fs::read(dir.path().join("demo/out/taxonomy.tsv")).unwrap(), first);
    assert_eq!(std::fs::read(dir.path().join("demo/out/report.json")).unwrap(), report);
}
