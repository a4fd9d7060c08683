//! End-to-end behaviour of the `chronomap` binary: exit codes, messages and
//! the files it writes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use chronomap::dataio::{
    load_map, save_trace, synthesize_trace, Calibration, MapData, TraceFormat, DEFAULT_REFERENCE_NM,
};
use tempfile::tempdir;

const SMALL: [&str; 4] = ["--n", "512", "--dt", "0.04"];

fn chronomap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chronomap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn with_small(args: &[&str]) -> Vec<String> {
    args.iter().chain(SMALL.iter()).map(|s| s.to_string()).collect()
}

fn run_small(args: &[&str]) -> Output {
    let v = with_small(args);
    chronomap(&v.iter().map(String::as_str).collect::<Vec<_>>())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_succeeds_and_lists_subcommands() {
    let out = chronomap(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for sub in [
        "simulate",
        "frog",
        "wigner",
        "crosscut",
        "areas",
        "sweep",
        "correspond",
        "ingest",
        "compare",
    ] {
        assert!(text.contains(sub), "help lacks {sub}");
    }
}

#[test]
fn no_arguments_is_a_usage_error() {
    let out = chronomap(&[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("nothing to do"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(code(&chronomap(&["frog", "--no-such-flag"])), 2);
}

#[test]
fn configuration_problems_are_reported_together() {
    let out = chronomap(&["simulate", "--n", "0", "--amplitudes", "1,2", "--mask-t0=-1"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("amplitudes need exactly 4 values"), "{err}");
    assert!(err.contains("mask"), "{err}");
    assert_eq!(err.lines().count(), 1, "one aggregated message: {err}");
}

#[test]
fn grid_too_short_for_the_state_is_rejected_before_computing() {
    let out = chronomap(&["frog", "--n", "128", "--dt", "0.02", "--t0", "2.0"]);
    assert_eq!(code(&out), 2);
    assert!(!stderr(&out).is_empty());
}

#[test]
fn areas_on_a_single_pulse_report_insufficient_structure() {
    let dir = tempdir().unwrap();
    let map = dir.path().join("g.map");
    let out = run_small(&["frog", "--state", "gaussian", "--out", path_str(&map)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = chronomap(&["areas", "--map", path_str(&map)]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).to_lowercase().contains("insufficient"), "{}", stderr(&out));
}

#[test]
fn compass_state_satisfies_the_correspondence() {
    let out = run_small(&["correspond", "--state", "compass", "--t0", "2.0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let residual: f64 = text
        .split_whitespace()
        .skip_while(|w| *w != "residual")
        .nth(1)
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("no residual in {text}"));
    assert!(residual <= 1e-6, "residual {residual}");
}

#[test]
fn sweep_verdict_changes_between_adjacent_separations() {
    let out = chronomap(&["sweep", "--t0", "1.75,2.0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows: Vec<String> = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains("above-limit"), "{}", rows[0]);
    assert!(rows[1].contains("sub-fourier"), "{}", rows[1]);
}

#[test]
fn dry_runs_write_nothing() {
    let dir = tempdir().unwrap();
    let out_path = dir.path().join("out.dat");
    let out = path_str(&out_path);
    let cases: Vec<Vec<&str>> = vec![
        vec!["simulate", "--out", out, "--dry-run"],
        vec!["frog", "--out", out, "--dry-run"],
        vec!["wigner", "--out", out, "--dry-run"],
        vec!["crosscut", "--fixed-freq", "0", "--out", out, "--dry-run"],
        vec!["areas", "--out", out, "--dry-run"],
        vec!["correspond", "--out", out, "--dry-run"],
    ];
    for args in cases {
        let o = run_small(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).contains("dry run"), "{args:?}");
        assert!(!out_path.exists(), "{args:?} wrote a file");
    }
    let o = chronomap(&["sweep", "--t0", "2.0", "--out", out, "--dry-run"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(!out_path.exists());

    let figures = dir.path().join("figs");
    let o = chronomap(&["--figure", "3", "--out-dir", path_str(&figures), "--dry-run"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(!figures.exists());
}

#[test]
fn ingested_trace_matches_the_map_it_came_from() {
    let dir = tempdir().unwrap();
    let map_path = dir.path().join("frog.map");
    let o = run_small(&["frog", "--t0", "2.0", "--out", path_str(&map_path)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let MapData::Spectrogram(map) = load_map(&map_path).unwrap() else {
        panic!("frog wrote a non-spectrogram map");
    };
    let cal = Calibration {
        reference_wavelength: DEFAULT_REFERENCE_NM,
        background_floor: 0.0,
    };
    let lambdas: Vec<f64> = map.omega_axis().iter().map(|&w| cal.wavelength_of(w)).collect();
    let trace = synthesize_trace(&map, &cal, &lambdas).unwrap();
    let csv = dir.path().join("trace.csv");
    save_trace(&trace, &csv, TraceFormat::Long).unwrap();

    let ingested = dir.path().join("ingested.map");
    let o = chronomap(&["ingest", "--trace", path_str(&csv), "--out", path_str(&ingested)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let o = chronomap(&["compare", path_str(&map_path), path_str(&ingested)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let score: f64 = stdout(&o).trim().strip_prefix("similarity ").unwrap().parse().unwrap();
    assert!(score > 0.99, "similarity {score}");
}

#[test]
fn malformed_trace_names_the_line() {
    let dir = tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    fs::write(&csv, "delay_ps,wavelength_nm,intensity\n0.0,780,1\n0.0,781,oops\n").unwrap();
    let o = chronomap(&["ingest", "--trace", path_str(&csv)]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_input_is_an_io_error_naming_the_path() {
    let o = chronomap(&["areas", "--map", "/nonexistent/dir/x.map"]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("/nonexistent/dir/x.map"), "{}", stderr(&o));
}

#[test]
fn corrupt_map_is_a_data_error() {
    let dir = tempdir().unwrap();
    let map = dir.path().join("x.map");
    fs::write(&map, "CHRONO-MAP v9\n").unwrap();
    assert_eq!(code(&chronomap(&["areas", "--map", path_str(&map)])), 3);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.map");
    let b = dir.path().join("b.map");
    for p in [&a, &b] {
        let o = run_small(&["wigner", "--t0", "1.5", "--out", path_str(p)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn raster_preview_has_the_map_dimensions() {
    let dir = tempdir().unwrap();
    let map_path = dir.path().join("f.map");
    let pgm = dir.path().join("f.pgm");
    let o = run_small(&["frog", "--out", path_str(&map_path), "--raster", path_str(&pgm)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let map = load_map(&map_path).unwrap();
    let bytes = fs::read(&pgm).unwrap();
    let header: Vec<String> = String::from_utf8_lossy(&bytes[..32.min(bytes.len())])
        .split_whitespace()
        .take(4)
        .map(String::from)
        .collect();
    assert_eq!(header[0], "P5");
    let (w, h): (usize, usize) = (header[1].parse().unwrap(), header[2].parse().unwrap());
    let m = map.as_map();
    let dims = [m.time_axis().len(), m.freq_axis().len()];
    assert!(
        (w, h) == (dims[0], dims[1]) || (w, h) == (dims[1], dims[0]),
        "raster {w}x{h}, map {dims:?}"
    );
    let header_len = bytes.len() - w * h;
    assert!(header_len < 32);
}
