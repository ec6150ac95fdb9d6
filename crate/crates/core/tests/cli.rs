mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::T_STAR_LAMBDA_0_1;

fn twomode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twomode"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
        .to_string()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn evolve_initial_entanglement() {
    let out = twomode(&[
        "evolve", "--state", "tmss", "--r", "4", "--t", "0", "--T", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let en: f64 = field(&stdout(&out), "E_N").parse().unwrap();
    assert!((en - 5.770780).abs() < 1e-6);
}

#[test]
fn evolve_separable_start_prints_exact_zero() {
    let out = twomode(&[
        "evolve", "--state", "sep", "--r", "4", "--t", "0", "--T", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&stdout(&out), "S"), "0");
}

#[test]
fn missing_squeezing_is_exit_2() {
    let out = twomode(&["evolve", "--state", "tmss", "--t", "0", "--T", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing required key: r"));
}

#[test]
fn sweep_figure_preset() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let out = twomode(&["sweep", "--figure", "1", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(stderr(&out).starts_with("3321 rows in "));
    }
    let (header, rows) = read_csv(&a);
    assert_eq!(
        header,
        [
            "t",
            "T",
            "E_N",
            "nu_bar_minus",
            "nu_tilde_minus",
            "epsilon_branch"
        ]
    );
    assert_eq!(rows.len(), 81 * 41);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn sweep_header_follows_canonical_order() {
    let out = twomode(&[
        "sweep",
        "--r",
        "1",
        "--measures",
        "I,D,S,C,E_N",
        "--t_points",
        "3",
        "--t_max",
        "1",
        "--T_points",
        "2",
        "--T_max",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "t,T,S,E_N,D,C,I,nu_bar_minus,nu_tilde_minus,epsilon_branch"
    );
    assert!(text.ends_with('\n') && !text.contains('\r'));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn sweep_to_unwritable_path_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("x.csv");
    let out = twomode(&["sweep", "--figure", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sudden_death_reports() {
    let cold = stdout(&twomode(&["sudden-death", "--r", "4", "--T", "0"]));
    assert!(cold.starts_with("no crossing within horizon\n"), "{cold}");
    assert!(cold.contains("bracket = [0, 200]"));

    let out = twomode(&["sudden-death", "--r", "4", "--T", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let t: f64 = field(&stdout(&out), "t*").parse().unwrap();
    let expected = T_STAR_LAMBDA_0_1
        .iter()
        .find(|(tt, _)| *tt == 2.0)
        .unwrap()
        .1;
    assert!((t - expected).abs() < 1e-6);

    let out = twomode(&["sudden-death", "--r", "4", "--T", "2", "--horizon", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("horizon"));
}

#[test]
fn steady_state_report() {
    let out = twomode(&["steady-state", "--T", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let s: f64 = field(&text, "S_asymptotic").parse().unwrap();
    assert!((s - 0.847639867071).abs() < 1e-11);
    assert_eq!(field(&text, "S"), field(&text, "S_asymptotic"));
}

#[test]
fn figures_share_grids() {
    let dir = tempfile::tempdir().unwrap();
    let out = twomode(&[
        "figures",
        "1",
        "2",
        "3",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let tables: Vec<_> = (1..=4)
        .map(|f| read_csv(&dir.path().join(format!("fig{f}.csv"))))
        .collect();
    let measures: Vec<&str> = tables.iter().map(|(h, _)| h[2].as_str()).collect();
    assert_eq!(measures, ["E_N", "D", "C", "I"]);
    for (_, rows) in &tables[1..] {
        assert!(rows.iter().zip(&tables[0].1).all(|(a, b)| a[..2] == b[..2]));
    }
    for row in tables[0].1.iter().filter(|r| r[0] == "0") {
        let en: f64 = row[2].parse().unwrap();
        assert!((en - 5.770780).abs() < 1e-6);
    }
    assert!(tables[1]
        .1
        .iter()
        .all(|r| r[2].parse::<f64>().unwrap() >= 0.0));
}

#[test]
fn figures_reject_unknown_ids() {
    let dir = tempfile::tempdir().unwrap();
    let out = twomode(&["figures", "1", "9", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("valid figures are 1, 2, 3, 4"));
    assert!(!dir.path().join("fig1.csv").exists());
}

#[test]
fn flags_beat_file_beat_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "# three layers\nr = 2\nm = 2   # file only\nlambda = 0.2\n",
    )
    .unwrap();
    let out = twomode(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--lambda",
        "0.3",
        "--t",
        "1",
        "--T",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(field(&text, "lambda"), "0.3");
    assert_eq!(field(&text, "m"), "2");
    assert_eq!(field(&text, "r"), "2");
    assert_eq!(field(&text, "omega1"), "1");
}

#[test]
fn config_problems() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "r = 4\ncolour = blue\n").unwrap();
    let out = twomode(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--t",
        "0",
        "--T",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown key: colour"));

    let missing = dir.path().join("nope.conf");
    let out = twomode(&["evolve", "--config", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn subcommands_are_deterministic() {
    for args in [
        &["evolve", "--r", "3", "--t", "2.5", "--T", "0.7"][..],
        &["sudden-death", "--r", "3", "--T", "1.5"][..],
        &["steady-state", "--T", "3", "--omega2", "2"][..],
    ] {
        assert_eq!(twomode(args).stdout, twomode(args).stdout);
    }
}
