use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use moran_core::parse_rational;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn moran(config: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moran"))
        .args(args)
        .arg("--config")
        .arg(config)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("run.toml");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_cantor_passes() {
    let out = moran(&configs().join("cantor.toml"), &["check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("beta   = 2"));
    assert!(text.contains("gamma  = 3/1"));
    assert!(text.contains("eta0   = 1/1"));
}

#[test]
fn check_full_packing_fails_gap_decay() {
    let out = moran(&configs().join("touching.toml"), &["check"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("fail[GapDecay]"), "{}", stderr(&out));
    assert!(stdout(&out).contains("(ii)  gamma > 1     : fail"));
}

#[test]
fn locus_from_root() {
    let out = moran(
        &configs().join("worked_map.toml"),
        &["transport", "locus", "--cylinder", ""],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "0.0  ratio 2/1\n");
    let out = moran(
        &configs().join("worked_map.toml"),
        &["transport", "locus", "--cylinder", "1"],
    );
    assert_eq!(stdout(&out), "1  ratio 1/2\n");
}

#[test]
fn locus_not_found_is_a_verification_failure() {
    let out = moran(
        &configs().join("worked_map.toml"),
        &["transport", "locus", "--cylinder", "", "--max-depth", "0"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("fail[NotFoundWithinDepth]"));
}

#[test]
fn constants_report() {
    let out = moran(&configs().join("worked_map.toml"), &["transport", "constants"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("p0     = 2"), "{text}");
    assert!(text.contains("eps    = 1/8194"), "{text}");
}

#[test]
fn phi_table_round_trips() {
    let out = moran(
        &configs().join("worked_map.toml"),
        &["transport", "phi", "--depth", "4"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("address,mu_mass,nu_image_mass,phi"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 16);
    for row in rows {
        for field in row.split(',').skip(1) {
            let value = parse_rational(field).unwrap();
            assert_eq!(moran_core::format_rational(&value), field);
        }
    }
    assert!(!text.contains('\r'));
}

#[test]
fn render_counts_bars_and_strip() {
    let out = moran(&configs().join("cantor.toml"), &["render", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches(r#"class="bar""#).count(), 15);
    let out = moran(&configs().join("worked_map.toml"), &["render", "--depth", "4"]);
    let svg = stdout(&out);
    let phis: Vec<&str> = svg
        .match_indices("data-phi=\"")
        .map(|(i, _)| &svg[i + 10..i + 13])
        .collect();
    assert_eq!(phis, ["2/1", "1/1", "1/2"]);
}

#[test]
fn analyze_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("components.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_moran"))
        .args(["analyze", "--depth", "3", "--out"])
        .arg(&target)
        .arg("--config")
        .arg(configs().join("cantor.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = moran(&configs().join("cantor.toml"), &["analyze", "--depth", "3"]);
    assert_eq!(std::fs::read(&target).unwrap(), direct.stdout);
}

#[test]
fn parse_errors_exit_2_without_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "[schedule]\nn_period = [2]\nr_period = [\"2/3\"]\n");
    let target = dir.path().join("never.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_moran"))
        .args(["analyze", "--out"])
        .arg(&target)
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[ValidationError]"), "{}", stderr(&out));
    assert!(!target.exists());

    let config = write_config(&dir, "[schedule\n");
    let out = moran(&config, &["check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[ParseError]"));
}

#[test]
fn usage_errors_exit_2() {
    let out = Command::new(env!("CARGO_BIN_EXE_moran"))
        .arg("frobnicate")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = moran(&configs().join("cantor.toml"), &["transport", "constants"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[MissingMap]"));
    let out = moran(
        &configs().join("worked_map.toml"),
        &["transport", "locus", "--cylinder", "0.7"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[DigitOutOfRange]"));
}

#[test]
fn map_validate_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "[schedule]\nn_period = [2]\nr_period = [\"1/3\"]\n[map]\npairs = [[\"0\", \"0\"], [\"1\", \"0\"]]\n",
    );
    let out = moran(&config, &["map", "validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("NotBijective"), "{}", stdout(&out));
    assert!(stderr(&out).contains("fail[InvalidMap]"));
    let out = moran(&configs().join("worked_map.toml"), &["map", "validate"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lipschitz_and_decompose() {
    let out = moran(
        &configs().join("worked_map.toml"),
        &["map", "lipschitz", "--depth", "6"],
    );
    assert_eq!(stdout(&out), "lower = 3/1\nupper = 247/81\ndepth = 6\n");
    let out = moran(
        &configs().join("worked_map.toml"),
        &["transport", "decompose", "--rank", "2"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 5);
    let out = moran(
        &configs().join("worked_map.toml"),
        &["transport", "decompose", "--rank", "1"],
    );
    assert_eq!(out.status.code(), Some(2));
}
