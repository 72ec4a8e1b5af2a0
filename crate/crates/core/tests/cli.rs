use std::path::Path;
use std::process::{Command, Output};

use sdlab::io::{read_matrix_market, COND_HEADER, CONVERGENCE_HEADER, SOLVE_HEADER};

fn sdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdlab")).args(args).output().expect("binary runs")
}

fn sdlab_env(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdlab"))
        .args(args)
        .env("SDLAB_MAX_WORKERS", workers)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Column `name` of every data row.
fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn solve_unit_parameters() {
    let o = sdlab(&["solve", "--formulation", "la", "--nx", "16"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.lines().next().unwrap(), SOLVE_HEADER.join(","));
    let its: usize = column(&out, "iterations")[0].parse().unwrap();
    assert!((10..=39).contains(&its), "{its}");
    assert_eq!(column(&out, "converged")[0], "true");
    assert_eq!(column(&out, "wall_time_s")[0], "");
    assert_ne!(column(&out, "err_pGamma")[0], "");
}

#[test]
fn robin_with_tiny_permeability_converges() {
    let o = sdlab(&["solve", "--formulation", "ro", "--mu", "10", "--k", "1e-14", "--nx", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(column(&out, "converged")[0], "true");
    assert_eq!(column(&out, "err_pGamma")[0], "");
}

#[test]
fn output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str| {
        let p = dir.path().join(name);
        vec![
            "sweep".to_string(),
            "--formulation".into(),
            "ro".into(),
            "--S-values".into(),
            "1e-3,10".into(),
            "--Da-values".into(),
            "1e-8".into(),
            "--alpha-values".into(),
            "1".into(),
            "--nx-values".into(),
            "8,16".into(),
            "--seed".into(),
            "7".into(),
            "--out".into(),
            p.to_string_lossy().into_owned(),
        ]
    };
    let a = args("a.csv");
    let b = args("b.csv");
    let ra = sdlab_env(&a.iter().map(String::as_str).collect::<Vec<_>>(), "1");
    let rb = sdlab_env(&b.iter().map(String::as_str).collect::<Vec<_>>(), "3");
    assert_eq!(ra.status.code(), Some(0));
    assert_eq!(rb.status.code(), Some(0));
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 5);
}

#[test]
fn seed_changes_the_initial_guess() {
    let a = stdout(&sdlab(&["solve", "--nx", "8", "--seed", "1"]));
    let b = stdout(&sdlab(&["solve", "--nx", "8", "--seed", "2"]));
    assert_ne!(a, b);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# unit run\nformulation = ro\nmu = 2\nk = 1e-4\nnx = 8\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = stdout(&sdlab(&["solve", "--config", cfg]));
    assert_eq!(column(&out, "formulation")[0], "ro");
    assert_eq!(column(&out, "mu")[0], "2e0");
    assert_eq!(column(&out, "k")[0], "1e-4");
    assert_eq!(column(&out, "nx")[0], "8");
    let out = stdout(&sdlab(&["solve", "--config", cfg, "--k", "1", "--formulation", "la"]));
    assert_eq!(column(&out, "formulation")[0], "la");
    assert_eq!(column(&out, "k")[0], "1e0");

    std::fs::write(dir.path().join("bad.cfg"), "viscosity = 1\n").unwrap();
    let o = sdlab(&["solve", "--config", dir.path().join("bad.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dimensionless_flags() {
    let out = stdout(&sdlab(&["solve", "--S", "1e-3", "--Da", "1e-4", "--nx", "8"]));
    let mu: f64 = column(&out, "mu")[0].parse().unwrap();
    let k: f64 = column(&out, "k")[0].parse().unwrap();
    assert!((mu - 1e-3).abs() < 1e-15);
    assert!((k - 1e-4).abs() < 1e-18);
}

#[test]
fn dump_matrix_writes_symmetric_system() {
    let dir = tempfile::tempdir().unwrap();
    let o = sdlab(&["solve", "--nx", "4", "--dump-matrix", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let a = read_matrix_market(&std::fs::read_to_string(dir.path().join("matrix.mtx")).unwrap()).unwrap();
    assert_eq!(a.max_asymmetry(), 0.0);
    let rhs = std::fs::read_to_string(dir.path().join("rhs.mtx")).unwrap();
    assert_eq!(rhs.lines().nth(1).unwrap(), format!("{} 1", a.nrows()));
}

#[test]
fn convergence_and_cond_tables() {
    let out = stdout(&sdlab(&["convergence", "--levels", "4,8"]));
    assert_eq!(out.lines().next().unwrap(), CONVERGENCE_HEADER.join(","));
    assert_eq!(out.lines().count(), 3);

    let out = stdout(&sdlab(&["cond", "--nx", "4"]));
    assert_eq!(out.lines().next().unwrap(), COND_HEADER.join(","));
    let dense: f64 = column(&out, "condition")[0].parse().unwrap();
    let out = stdout(&sdlab(&["cond", "--nx", "4", "--method", "lanczos"]));
    let lanczos: f64 = column(&out, "condition")[0].parse().unwrap();
    assert!((dense - lanczos).abs() < 1e-6 * dense);

    let out = stdout(&sdlab(&["cond", "--grid", "--S-values", "1", "--Da-values", "1,1e-4", "--alpha-values", "0", "--nx-values", "4"]));
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn appendix_layout_runs() {
    let o = sdlab(&["solve", "--boundary", "appendixC", "--nx", "8", "--k", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let o = sdlab(&["solve", "--boundary", "appendixC", "--fractional", "neumann", "--nx", "8"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["solve", "--mu", "1", "--S", "1"][..],
        &["solve", "--formulation", "lagrange"],
        &["solve", "--precond", "ilu"],
        &["solve", "--boundary", "periodic"],
        &["solve", "--k", "-1"],
        &["solve", "--beta-n", "zero"],
        &["solve", "--nx", "0"],
        &["cond", "--method", "power"],
        &["frobnicate"],
    ] {
        let o = sdlab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = sdlab_env(&["sweep", "--nx-values", "4", "--S-values", "1", "--Da-values", "1", "--alpha-values", "1"], "none");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_3_and_still_writes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = sdlab(&["solve", "--nx", "8", "--max-iter", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let csv = std::fs::read_to_string(Path::new(&out)).unwrap();
    assert_eq!(column(&csv, "converged")[0], "false");
}

#[test]
fn capability_limit_exits_4() {
    let o = sdlab(&["cond", "--nx", "48"]);
    assert_eq!(o.status.code(), Some(4));
}
