//! End-to-end tests of the `permuton` binary: determinism, file formats,
//! renderers and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permuton"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("permuton-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn identical_flags_produce_byte_identical_files() {
    let dir = scratch("determinism");
    let a = dir.join("a");
    let b = dir.join("b");
    for out in [&a, &b] {
        run_ok(&[
            "chain",
            "--s",
            "6",
            "--steps",
            "7",
            "--init",
            "random:42",
            "--out",
            out.to_str().unwrap(),
            "--render",
            "svg",
        ]);
    }
    for name in ["trace.txt", "diagram.svg"] {
        let left = std::fs::read(a.join(name)).unwrap();
        let right = std::fs::read(b.join(name)).unwrap();
        assert_eq!(left, right, "{name} differs between identical runs");
    }
}

#[test]
fn cogwheel_eigenvalues_and_report() {
    let dir = scratch("cogwheel");
    run_ok(&["cogwheel", "--n", "4", "--out", dir.to_str().unwrap()]);
    let eigen = std::fs::read_to_string(dir.join("eigenvalues.txt")).unwrap();
    let values: Vec<f64> = eigen.lines().map(|l| l.parse().unwrap()).collect();
    let want = [
        0.0,
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::PI,
        3.0 * std::f64::consts::FRAC_PI_2,
    ];
    assert_eq!(values.len(), 4);
    for (v, w) in values.iter().zip(want) {
        assert!((v - w).abs() < 1e-12);
    }
    let report = std::fs::read_to_string(dir.join("report.txt")).unwrap();
    let residual: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("exp_roundtrip_residual="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-9);

    // a single state has a zero Hamiltonian
    let one = scratch("cogwheel-one");
    run_ok(&["cogwheel", "--n", "1", "--out", one.to_str().unwrap()]);
    let h = std::fs::read_to_string(one.join("hamiltonian.csv")).unwrap();
    assert_eq!(h.trim(), "0,0");
}

#[test]
fn hamiltonian_reports_orbits_and_residuals() {
    let dir = scratch("hamiltonian");
    run_ok(&["hamiltonian", "--s", "2", "--out", dir.to_str().unwrap()]);
    let orbits = std::fs::read_to_string(dir.join("orbits.txt")).unwrap();
    for line in orbits.lines() {
        assert!(line.starts_with("len="), "bad orbit line {line}");
        let len: usize = line
            .split_whitespace()
            .next()
            .unwrap()
            .strip_prefix("len=")
            .unwrap()
            .parse()
            .unwrap();
        assert!(len == 1 || len == 2);
    }
    let report = std::fs::read_to_string(dir.join("report.txt")).unwrap();
    assert!(report.contains("dim=16"));
    let series: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("series_deviation="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(series < 1e-10);
}

#[test]
fn perturb_sweep_grows_monotonically_from_zero() {
    let dir = scratch("perturb");
    run_ok(&[
        "perturb",
        "--s",
        "2",
        "--epsilons",
        "0,0.001,0.01,0.1",
        "--out",
        dir.to_str().unwrap(),
    ]);
    let sweep = std::fs::read_to_string(dir.join("sweep.txt")).unwrap();
    let measures: Vec<f64> = sweep
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("epsilon"))
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(measures.len(), 4);
    assert_eq!(measures[0], 0.0);
    for pair in measures.windows(2) {
        assert!(pair[1] > pair[0], "sweep not monotone: {measures:?}");
    }
}

#[test]
fn slowdown_report_has_exact_velocity() {
    let dir = scratch("slowdown");
    run_ok(&[
        "slowdown",
        "--s",
        "8",
        "--k0",
        "5",
        "--l0",
        "3",
        "--case",
        "b",
        "--cycles",
        "2",
        "--init",
        "defect:2",
        "--out",
        dir.to_str().unwrap(),
    ]);
    let report = std::fs::read_to_string(dir.join("report.txt")).unwrap();
    assert!(report.contains("velocity=2/8"), "{report}");
    assert!(report.contains("weyl_residual_left=0"));
    assert!(report.contains("weyl_residual_right=0"));
}

#[test]
fn dirac_verify_reports_and_exit_codes() {
    let ok = run_ok(&["dirac-verify", "--s", "2", "--m", "1", "--mu", "1"]);
    let stdout = String::from_utf8(ok.stdout).unwrap();
    assert!(stdout.contains("bijective: 81/81"), "{stdout}");
    assert!(stdout.contains("cycle lengths: 1x1 8x10"), "{stdout}");

    // a shared factor between 1 + mu^2 and 2M+1 breaks the permutation
    let broken = bin()
        .args(["dirac-verify", "--s", "2", "--m", "2", "--mu", "2"])
        .output()
        .unwrap();
    assert_eq!(broken.status.code(), Some(2));

    // exhaustive mode over a too-large space is a resource error
    let too_big = bin()
        .args([
            "dirac-verify",
            "--s",
            "5",
            "--m",
            "3",
            "--mu",
            "1",
            "--mode",
            "exhaustive",
        ])
        .output()
        .unwrap();
    assert_eq!(too_big.status.code(), Some(3));

    // auto mode handles the same size through the modular route
    let auto = run_ok(&["dirac-verify", "--s", "5", "--m", "3", "--mu", "1"]);
    let stdout = String::from_utf8(auto.stdout).unwrap();
    assert!(stdout.contains("mode=modular"), "{stdout}");

    let invalid = bin()
        .args([
            "chain",
            "--s",
            "8",
            "--steps",
            "2",
            "--init",
            "defect:99",
            "--out",
            "/tmp/x",
        ])
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(1));
}

#[test]
fn dirac_verify_prints_tables() {
    let out = run_ok(&[
        "dirac-verify",
        "--s",
        "2",
        "--m",
        "1",
        "--mu",
        "1",
        "--table",
    ]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    // third body row of the add table: s3 row -> s2 s3 s1
    let add_row: Vec<&str> = stdout
        .lines()
        .find(|l| l.trim_start().starts_with("s3") && l.contains('|'))
        .map(|l| l.split('|').nth(1).unwrap().split_whitespace().collect())
        .unwrap();
    assert_eq!(add_row, vec!["s2", "s3", "s1"]);
    assert!(stdout.contains("S+"));
    assert!(stdout.contains("S-"));
}

#[test]
fn renderers_consume_plain_trace_files() {
    let dir = scratch("render");
    let trace_path = dir.join("hand.txt");
    std::fs::write(
        &trace_path,
        "S=2 M=na steps=2\n# hand written\n1 1 -1 1\n1 1 1 -1\n-1 1 1 1\n",
    )
    .unwrap();
    run_ok(&[
        "render",
        "--trace",
        trace_path.to_str().unwrap(),
        "--format",
        "ascii",
        "--out",
        dir.to_str().unwrap(),
    ]);
    let ascii = std::fs::read_to_string(dir.join("diagram.txt")).unwrap();
    let grid: Vec<&str> = ascii.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(grid, vec!["@...", "...@", "..@."]);

    run_ok(&[
        "render",
        "--trace",
        trace_path.to_str().unwrap(),
        "--format",
        "svg",
        "--out",
        dir.to_str().unwrap(),
    ]);
    let svg = std::fs::read_to_string(dir.join("diagram.svg")).unwrap();
    assert_eq!(svg.matches("<rect ").count(), 12);
}

#[test]
fn file_init_and_case_alias() {
    let dir = scratch("file-init");
    let init_path = dir.join("spins.txt");
    std::fs::write(&init_path, "1 -1 1 1 -1 1 1 1\n").unwrap();
    run_ok(&[
        "slowdown",
        "--s",
        "4",
        "--k0",
        "2",
        "--l0",
        "1",
        "--case",
        "a",
        "--cycles",
        "2",
        "--init",
        &format!("file:{}", init_path.display()),
        "--out",
        dir.to_str().unwrap(),
    ]);
    let trace = permuton::SpacetimeTrace::load(&dir.join("trace.txt")).unwrap();
    assert_eq!(trace.slice(0), &[1, -1, 1, 1, -1, 1, 1, 1]);
    assert_eq!(trace.steps(), 6); // 2 cycles of 2+1 recorded steps
    let report = std::fs::read_to_string(dir.join("report.txt")).unwrap();
    assert!(report.contains("case=reversal"), "{report}");
}

#[test]
fn dirac_trace_round_trips_through_files() {
    let dir = scratch("dirac-trace");
    run_ok(&[
        "dirac",
        "--s",
        "4",
        "--m",
        "2",
        "--mu",
        "1",
        "--steps",
        "5",
        "--init",
        "defect:3:2",
        "--out",
        dir.to_str().unwrap(),
        "--render",
        "ascii",
    ]);
    let text = std::fs::read_to_string(dir.join("trace.txt")).unwrap();
    assert!(text.starts_with("S=4 M=2 steps=5\n"));
    let trace = permuton::SpacetimeTrace::from_text(&text).unwrap();
    assert_eq!(trace.slice(0)[2], 2);
    // mass coupling spreads the disturbance beyond pure transport
    assert!(trace.slices().iter().flatten().any(|&v| v < 0));
}
