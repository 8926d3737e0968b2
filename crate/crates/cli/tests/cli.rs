use std::path::PathBuf;
use std::process::{Command, Output};

use scaling_witness::formats::{parse_pgm, read_csv, read_json};

fn scalewit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scalewit"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = scalewit(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
        .trim()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("scalewit-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn config(name: &str) -> String {
    format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn witness_maximally_entangled_werner() {
    let out = ok(&["witness", "--family", "werner2", "--p", "1", "--spec", "1,-1"]);
    assert!((field(&out, "m:").parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(field(&out, "verdict:"), "entanglement witnessed");
}

#[test]
fn witness_separable_werner_exits_zero() {
    let out = ok(&["witness", "--family", "werner2", "--p", "0.2", "--spec", "1,-1"]);
    assert_eq!(field(&out, "m:").parse::<f64>().unwrap(), 0.0);
    assert!(field(&out, "verdict:").starts_with("not witnessed"));
}

#[test]
fn witness_qutrits_below_threshold() {
    let out = ok(&[
        "witness",
        "--family",
        "ghz_werner",
        "--d",
        "3",
        "--n",
        "2",
        "--p",
        "0.2",
        "--spec",
        "1,-1",
    ]);
    assert_eq!(field(&out, "m:").parse::<f64>().unwrap(), 0.0);
}

#[test]
fn witness_solvers_agree() {
    let args = [
        "witness",
        "--family",
        "theta_werner",
        "--theta",
        "1.4",
        "--p",
        "0.4",
        "--spec",
        "1,-1,0.3",
    ];
    let jacobi = ok(&args);
    let sturm = ok(&[&args[..], &["--solver", "sturm"]].concat());
    let a: f64 = field(&jacobi, "m:").parse().unwrap();
    let b: f64 = field(&sturm, "m:").parse().unwrap();
    assert!((a - b).abs() < 1e-10);
}

#[test]
fn witness_writes_json_and_tomogram() {
    let json = scratch("report.json");
    let tomo = scratch("tomogram.csv");
    ok(&[
        "witness",
        "--family",
        "werner2",
        "--p",
        "1",
        "--spec",
        "1,-1",
        "--json",
        json.to_str().unwrap(),
        "--tomogram",
        tomo.to_str().unwrap(),
    ]);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["family"], "werner2");
    assert_eq!(doc["report"]["entangled_witnessed"], true);
    assert!((doc["report"]["negativity_m"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let csv = std::fs::read_to_string(&tomo).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("m1,m2,probability"));
    let probs: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(probs.len(), 4);
    let deficit: f64 = probs.iter().map(|w| w.abs() - w).sum();
    assert!((deficit - 1.0).abs() < 1e-10);
}

#[test]
fn measure_examples() {
    let out = ok(&["measure", "--family", "werner2", "--p", "2/3"]);
    assert!((field(&out, "M:").parse::<f64>().unwrap() - 0.5).abs() < 1e-10);
    let out = ok(&["measure", "--family", "ghz_werner", "--d", "2", "--n", "3", "--p", "1"]);
    assert!((field(&out, "M:").parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn measure_w_state_reports_cross_check_and_reference() {
    let out = ok(&["measure", "--family", "w_werner", "--p", "0.6", "--grid", "11"]);
    assert!(field(&out, "cross-check at argmax:").contains("sturm m ="));
    assert!(field(&out, "reference:").contains("1.47"));
}

#[test]
fn state_prints_matrix() {
    let out = ok(&["state", "--family", "ghz_werner", "--d", "2", "--n", "2", "--p", "1"]);
    assert_eq!(field(&out, "dims:"), "2x2");
    let rows: Vec<&str> = out.lines().skip(3).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].split_whitespace().all(|v| v == "0.500000" || v == "0.000000"));
}

#[test]
fn werner_scan_matches_threshold_rule() {
    let csv = ok(&[
        "scan",
        "--family",
        "werner2",
        "--p",
        "-1/3:1:101",
        "--lambda",
        "1,-1:1:101",
    ]);
    let diagram = read_csv(csv.as_bytes()).unwrap();
    assert_eq!(diagram.cells.len(), 101 * 101);
    for cell in &diagram.cells {
        let (p, l) = (cell.coords[0], cell.coords[2]);
        assert_eq!(cell.witnessed, p - 1.0 / (2.0 - l) > 1e-9, "p={p} lambda={l}");
    }
}

#[test]
fn ghz_product_region_has_no_witnessed_cells() {
    let csv = ok(&[
        "scan",
        "--family",
        "theta_werner",
        "--theta",
        "0",
        "--p",
        "0.1",
        "--lambda",
        "1,-1:1:21,-1:1:21",
    ]);
    let diagram = read_csv(csv.as_bytes()).unwrap();
    assert_eq!(diagram.cells.len(), 441);
    assert!(diagram.cells.iter().all(|c| !c.witnessed));
}

#[test]
fn qutrit_boundary_on_transpose_edge() {
    let csv = ok(&[
        "scan",
        "--family",
        "ghz_werner",
        "--d",
        "3",
        "--n",
        "2",
        "--p",
        "-1/8:1:226",
        "--lambda",
        "1,-1:1:5",
    ]);
    let diagram = read_csv(csv.as_bytes()).unwrap();
    let edge: Vec<_> = diagram.cells.iter().filter(|c| c.coords[2] == -1.0).collect();
    let first = edge.iter().find(|c| c.witnessed).unwrap().coords[0];
    assert!(edge.iter().filter(|c| c.coords[0] <= 0.25).all(|c| !c.witnessed));
    assert!(
        first > 0.25 && first - 0.25 <= 0.005 + 1e-12,
        "first witnessed p = {first}"
    );
}

#[test]
fn scan_output_is_deterministic() {
    let args = [
        "scan",
        "--config",
        &config("fig2.conf"),
        "--p",
        "0.2:1:3",
        "--lambda",
        "1,-1:1:15,-1:1:15",
    ];
    let runs: Vec<Vec<u8>> = [
        ["--threads", "1"],
        ["--threads", "1"],
        ["--threads", "4"],
        ["--threads", "4"],
    ]
    .iter()
    .map(|t| scalewit(&[&args[..], &t[..]].concat()).stdout)
    .collect();
    assert!(runs.iter().all(|r| r == &runs[0]));
    let csv: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|t| scalewit(&[&args[..], &["--format", "csv", "--threads", t]].concat()).stdout)
        .collect();
    assert_eq!(csv[0], csv[1]);
    assert!(!csv[0].contains(&b'\r'));
}

#[test]
fn flags_override_config_file() {
    let out = scalewit(&[
        "scan",
        "--config",
        &config("fig1-left.conf"),
        "--format",
        "json",
        "--p",
        "0:1:3",
    ]);
    assert!(out.status.success());
    let diagram = read_json(&out.stdout[..]).unwrap();
    assert_eq!(diagram.cells.len(), 3 * 101);
}

#[test]
fn format_follows_output_extension() {
    let path = scratch("ext.json");
    ok(&[
        "scan",
        "--family",
        "werner2",
        "--p",
        "0:1:3",
        "--lambda",
        "1,-1:1:3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(read_json(std::fs::File::open(&path).unwrap()).is_ok());
}

#[test]
fn every_shipped_config_runs() {
    for name in ["fig1-left", "fig1-right", "fig2", "fig3", "fig4", "fig5"] {
        let out = scalewit(&["scan", "--config", &config(&format!("{name}.conf"))]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let pgm = parse_pgm(&out.stdout).unwrap();
        assert!(pgm.pixels.iter().any(|&g| g > 0), "{name} has no witnessed cell");
    }
}

#[test]
fn render_separable_diagram_is_black() {
    let csv = scratch("separable.csv");
    ok(&[
        "scan",
        "--family",
        "werner2",
        "--p",
        "-1/3:1/3:7",
        "--lambda",
        "1,-1:1:9",
        "-o",
        csv.to_str().unwrap(),
    ]);
    let pgm = parse_pgm(&scalewit(&["render", csv.to_str().unwrap()]).stdout).unwrap();
    assert_eq!((pgm.width, pgm.height), (9, 7));
    assert!(pgm.pixels.iter().all(|&g| g == 0));
}

#[test]
fn render_pure_werner_row_brightens_toward_transpose() {
    let json = scratch("row.json");
    ok(&[
        "scan",
        "--family",
        "werner2",
        "--p",
        "1",
        "--lambda",
        "1,-1:1:21",
        "--format",
        "json",
        "-o",
        json.to_str().unwrap(),
    ]);
    let pgm = parse_pgm(&scalewit(&["render", json.to_str().unwrap()]).stdout).unwrap();
    assert_eq!((pgm.width, pgm.height), (21, 1));
    // Left to right is lambda from -1 to 1.
    assert!(pgm.pixels.windows(2).all(|w| w[0] >= w[1]));
    assert_eq!(pgm.pixels[0], 255);
    assert_eq!(*pgm.pixels.last().unwrap(), 0);
}

#[test]
fn exit_codes_distinguish_failures() {
    let bad_flag = scalewit(&["witness", "--family", "werner2", "--p", "1", "--spec", "1,x"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_flag.stderr).contains("--spec"));

    let bad_p = scalewit(&["witness", "--family", "werner2", "--p", "-0.5", "--spec", "1,-1"]);
    assert_eq!(bad_p.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_p.stderr).contains("--p"));

    let wrong_arity = scalewit(&["witness", "--family", "werner2", "--p", "0.5", "--spec", "1,-1,1"]);
    assert_eq!(wrong_arity.status.code(), Some(2));

    let out_of_range = scalewit(&["witness", "--family", "werner2", "--p", "0.5", "--spec", "1,-2"]);
    assert_eq!(out_of_range.status.code(), Some(2));
    assert!(scalewit(&[
        "witness",
        "--family",
        "werner2",
        "--p",
        "0.5",
        "--spec",
        "1,-2",
        "--allow-out-of-range"
    ])
    .status
    .success());

    assert_eq!(
        scalewit(&["scan", "--family", "werner2", "--p", "0:1:1", "--lambda", "1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(scalewit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(scalewit(&["render", "/nonexistent/diagram.csv"]).status.code(), Some(3));

    let junk = scratch("junk.csv");
    std::fs::write(&junk, "p,lambda1\nnot,numbers\n").unwrap();
    assert_eq!(scalewit(&["render", junk.to_str().unwrap()]).status.code(), Some(4));

    let conf = scratch("bad.conf");
    std::fs::write(&conf, "family = werner2\ncolour = blue\n").unwrap();
    let out = scalewit(&["scan", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
}
